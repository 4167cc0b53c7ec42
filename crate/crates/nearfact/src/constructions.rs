//! Constructions of near-factorizations: difference-set and partial
//! difference-set conversions, de Bruijn near-factorizations, the half-set
//! product construction and its iterated form, classical seed designs
//! (quadratic residues, twin primes, Singer), and a resolver that picks a
//! construction for a parameter quadruple.
//!
//! Every function returns verified objects only: a claimed design or
//! near-factorization that fails its group-ring check is an error.

use crate::catalog;
use crate::group::{DirectProduct, Group, Subset};
use crate::ring::{check_ds, check_pds, NearFactorization};
use crate::{Error, Result};

/// A verified difference set or partial difference set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedDesign {
    d: Subset,
    kind: DesignKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DesignKind {
    /// `(v, k, λ)` difference set.
    Ds { v: u64, k: u64, lambda: u64 },
    /// `(v, k, λ, μ)` partial difference set.
    Pds { v: u64, k: u64, lambda: u64, mu: u64 },
}

impl SeedDesign {
    /// Wrap a verified difference set.
    pub fn ds(d: Subset) -> Result<SeedDesign> {
        match check_ds(&d) {
            Some((v, k, lambda)) => Ok(SeedDesign {
                d,
                kind: DesignKind::Ds { v, k, lambda },
            }),
            None => Err(Error::Verification(format!(
                "{} is not a difference set in {}",
                d.render(),
                d.group()
            ))),
        }
    }

    /// Wrap a verified partial difference set.
    pub fn pds(d: Subset) -> Result<SeedDesign> {
        match check_pds(&d) {
            Some((v, k, lambda, mu)) => Ok(SeedDesign {
                d,
                kind: DesignKind::Pds { v, k, lambda, mu },
            }),
            None => Err(Error::Verification(format!(
                "{} is not a partial difference set in {}",
                d.render(),
                d.group()
            ))),
        }
    }

    pub fn set(&self) -> &Subset {
        &self.d
    }

    pub fn group(&self) -> &Group {
        self.d.group()
    }

    pub fn kind(&self) -> DesignKind {
        self.kind
    }

    pub fn params_string(&self) -> String {
        match self.kind {
            DesignKind::Ds { v, k, lambda } => format!("({v},{k},{lambda})-DS"),
            DesignKind::Pds { v, k, lambda, mu } => format!("({v},{k},{lambda},{mu})-PDS"),
        }
    }
}

/// The trivial near-factorization `S = {e}`, `T = G − e`, λ = 1.
pub fn trivial_nf(group: &Group) -> Result<NearFactorization> {
    let s = Subset::new(group, vec![0])?;
    let t = s.complement();
    NearFactorization::new(s, t)
}

/// The de Bruijn near-factorization of `Z_n` with λ = 1: when `n − 1 = st`,
/// `S = {0, …, s−1}` and `T = {1, s+1, …, (t−1)s + 1}`.
pub fn debruijn_nf(n: u64, s: u64) -> Result<NearFactorization> {
    if n < 3 || s == 0 || (n - 1) % s != 0 {
        return Err(Error::Construction(format!(
            "de Bruijn construction needs s | n-1 (got n = {n}, s = {s})"
        )));
    }
    let t = (n - 1) / s;
    let g = Group::cyclic(n)?;
    let s_set = Subset::new(&g, (0..s as usize).collect())?;
    let t_set = Subset::new(&g, (0..t).map(|j| (j * s + 1) as usize).collect())?;
    NearFactorization::new(s_set, t_set)
}

/// `(D, G ∖ D^(-1))` is an `NF(k, v−k)` with λ = k − λ_DS.
pub fn ds_to_nf(design: &SeedDesign) -> Result<NearFactorization> {
    let DesignKind::Ds { .. } = design.kind else {
        return Err(Error::Construction(
            "difference-set conversion applied to a partial difference set".into(),
        ));
    };
    let s = design.d.clone();
    let t = s.negate().complement();
    NearFactorization::new(s, t)
}

/// Converse of [`ds_to_nf`]: when `|G| = s + t`, `S` is an
/// `(s+t, s, s−λ)` difference set.
pub fn nf_to_ds(nf: &NearFactorization) -> Result<SeedDesign> {
    let (n, s, t, _) = nf.parameters();
    if n != s + t {
        return Err(Error::Construction(format!(
            "difference-set converse needs |G| = s + t (got {n} ≠ {s} + {t})"
        )));
    }
    SeedDesign::ds(nf.s().clone())
}

/// A `(s+t+1, s, s−λ−1, s−λ)` partial difference set `D` yields the
/// near-factorization `(D, G ∖ (D^(-1) ∪ {e}))`.
pub fn pds_to_nf(design: &SeedDesign) -> Result<NearFactorization> {
    let DesignKind::Pds { .. } = design.kind else {
        return Err(Error::Construction(
            "partial-difference-set conversion applied to a difference set".into(),
        ));
    };
    let s = design.d.clone();
    let mut excluded = s.negate().elems().to_vec();
    excluded.push(0);
    let t = Subset::new(s.group(), excluded)?.complement();
    NearFactorization::new(s, t)
}

/// Converse of [`pds_to_nf`]: when `|G| = s + t + 1`, some translate
/// `S + g` is an `(s+t+1, s, s−λ−1, s−λ)` partial difference set.  Returns
/// the design together with the translation amount `g`.
pub fn nf_to_pds(nf: &NearFactorization) -> Result<(SeedDesign, usize)> {
    let (n, s, t, _) = nf.parameters();
    if n != s + t + 1 {
        return Err(Error::Construction(format!(
            "partial-difference-set converse needs |G| = s + t + 1 (got {n} ≠ {s} + {t} + 1)"
        )));
    }
    // G ∖ (S^(-1) ∪ T) is a single element {g}; the translate (S+g, T−g)
    // then misses exactly the identity.
    let mut union = nf.s().negate().elems().to_vec();
    union.extend_from_slice(nf.t().elems());
    union.sort_unstable();
    union.dedup();
    let missing = Subset::new(nf.group(), union)?.complement();
    let [g] = missing.elems() else {
        return Err(Error::Verification(
            "S^(-1) and T overlap; not a valid near-factorization".into(),
        ));
    };
    let design = SeedDesign::pds(nf.s().translate(*g))?;
    Ok((design, *g))
}

/// The half-set product: from half-set near-factorizations of `G1` and `G2`
/// build one of `G1 × G2` with `S3 = S1 × S2`,
/// `T3 = ((G1∖T1) × T2) ∪ (T1 × (G2∖T2))` and λ = 2λ1λ2.
pub fn product_halfset(
    a: &NearFactorization,
    b: &NearFactorization,
) -> Result<NearFactorization> {
    for nf in [a, b] {
        let (n, _, t, _) = nf.parameters();
        if n % 2 == 0 || t != (n - 1) / 2 {
            return Err(Error::Construction(format!(
                "product construction needs half-set inputs (t = (n-1)/2); got t = {t}, n = {n}"
            )));
        }
    }
    let prod = Group::product(a.group(), b.group())?;
    let s3 = cross(&prod, a.s().elems(), b.s().elems());
    let mut t3 = cross(&prod, a.t().complement().elems(), b.t().elems());
    t3.extend(cross(&prod, a.t().elems(), b.t().complement().elems()));
    let s3 = Subset::new(&prod.group, s3)?;
    let t3 = Subset::new(&prod.group, t3)?;
    NearFactorization::new(s3, t3)
}

fn cross(prod: &DirectProduct, a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(prod.embed(x, y));
        }
    }
    out
}

/// Find `g` with `S + g` symmetric; then `(S+g, T−g)` is a symmetric
/// near-factorization (a symmetric S forces a symmetric T).
pub fn symmetrize_by_translation(nf: &NearFactorization) -> Option<NearFactorization> {
    let g = nf.group();
    for x in 0..g.order() {
        if nf.s().translate(x).is_symmetric() {
            let shifted = nf.translate(x);
            debug_assert!(shifted.is_symmetric());
            return Some(shifted);
        }
    }
    None
}

/// Iterated half-set construction: for odd orders `n_1, …, n_k` (each > 1),
/// a symmetric half-set near-factorization of
/// `Z_{n_1} × … × Z_{n_k}` with `s = 2^k` and `λ = 2^(k-1)`, built by
/// folding symmetrized de Bruijn seeds through the product construction.
pub fn iterated_halfset(orders: &[u64]) -> Result<NearFactorization> {
    if orders.is_empty() {
        return Err(Error::Construction("need at least one factor order".into()));
    }
    let mut acc: Option<NearFactorization> = None;
    for &n in orders {
        if n < 3 || n % 2 == 0 {
            return Err(Error::Construction(format!(
                "iterated construction needs odd orders > 1 (got {n})"
            )));
        }
        let seed = symmetrize_by_translation(&debruijn_nf(n, 2)?).ok_or_else(|| {
            Error::Construction(format!("no symmetric translate of the Z{n} seed"))
        })?;
        acc = Some(match acc {
            None => seed,
            Some(prev) => product_halfset(&prev, &seed)?,
        });
    }
    let nf = acc.expect("non-empty orders");
    debug_assert!(nf.is_symmetric());
    Ok(nf)
}

fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn sqrt_exact(q: u64) -> Option<u64> {
    let r = (q as f64).sqrt().round() as u64;
    (r * r == q).then_some(r)
}

/// Quadratic residues mod a prime `q ≡ 3 (mod 4)`: a
/// `(q, (q-1)/2, (q-3)/4)` difference set in `Z_q`.
pub fn paley_ds(q: u64) -> Result<SeedDesign> {
    if !is_prime(q) || q % 4 != 3 {
        return Err(Error::Construction(format!(
            "need a prime q ≡ 3 (mod 4), got {q}"
        )));
    }
    let g = Group::cyclic(q)?;
    let mut elems: Vec<usize> = (1..q).map(|x| (x * x % q) as usize).collect();
    elems.sort_unstable();
    elems.dedup();
    SeedDesign::ds(Subset::new(&g, elems)?)
}

/// Nonzero squares of `F_q` for `q ≡ 1 (mod 4)`, `q` a prime or the square
/// of a prime: a Paley `(q, (q-1)/2, (q-5)/4, (q-1)/4)` partial difference
/// set in the additive group of the field.
pub fn paley_pds(q: u64) -> Result<SeedDesign> {
    if q % 4 != 1 {
        return Err(Error::Construction(format!("need q ≡ 1 (mod 4), got {q}")));
    }
    if is_prime(q) {
        let g = Group::cyclic(q)?;
        let mut elems: Vec<usize> = (1..q).map(|x| (x * x % q) as usize).collect();
        elems.sort_unstable();
        elems.dedup();
        return SeedDesign::pds(Subset::new(&g, elems)?);
    }
    let p = sqrt_exact(q)
        .filter(|&p| is_prime(p))
        .ok_or_else(|| Error::Construction(format!("{q} is neither prime nor a prime square")))?;
    // F_{p^2} = F_p[x] / (x^2 + bx + c) for the lexicographically smallest
    // monic irreducible quadratic; elements are pairs (a0, a1) = a0 + a1·x.
    let (b, c) = smallest_irreducible_quadratic(p)?;
    let g = Group::from_factors(&[p, p], format!("Z{p}xZ{p}"))?;
    let mut elems = Vec::new();
    for a0 in 0..p {
        for a1 in 0..p {
            if a0 == 0 && a1 == 0 {
                continue;
            }
            // (a0 + a1 x)^2 with x^2 = -b x - c
            let sq2 = a1 * a1 % p;
            let s0 = (a0 * a0 % p + (p - c) * sq2 % p) % p;
            let s1 = (2 * a0 * a1 % p + (p - b) * sq2 % p) % p;
            elems.push(g.elem_from_tuple(&[s0, s1])?);
        }
    }
    elems.sort_unstable();
    elems.dedup();
    SeedDesign::pds(Subset::new(&g, elems)?)
}

fn smallest_irreducible_quadratic(p: u64) -> Result<(u64, u64)> {
    for b in 0..p {
        'next: for c in 0..p {
            // x^2 + bx + c irreducible over F_p iff it has no root.
            for x in 0..p {
                if (x * x + b * x + c) % p == 0 {
                    continue 'next;
                }
            }
            return Ok((b, c));
        }
    }
    Err(Error::Construction(format!(
        "no irreducible quadratic over F_{p}"
    )))
}

/// Twin-prime difference set: for primes `q` and `q+2`, the set
/// `{(x, y) : x, y both nonzero squares or both non-squares} ∪ {(x, 0)}`
/// is a `(q(q+2), (q(q+2)-1)/2, (q(q+2)-3)/4)` difference set in
/// `Z_q × Z_{q+2}`.
pub fn twin_prime_ds(q: u64) -> Result<SeedDesign> {
    if !is_prime(q) || !is_prime(q + 2) {
        return Err(Error::Construction(format!(
            "need twin primes q, q+2 (got q = {q})"
        )));
    }
    let r = q + 2;
    let square_mask = |m: u64| -> Vec<bool> {
        let mut mask = vec![false; m as usize];
        for x in 1..m {
            mask[(x * x % m) as usize] = true;
        }
        mask
    };
    let sq_q = square_mask(q);
    let sq_r = square_mask(r);
    let prod = Group::product(&Group::cyclic(q)?, &Group::cyclic(r)?)?;
    let mut elems = Vec::new();
    for x in 1..q {
        for y in 1..r {
            if sq_q[x as usize] == sq_r[y as usize] {
                elems.push(prod.embed(x as usize, y as usize));
            }
        }
    }
    for x in 0..q {
        elems.push(prod.embed(x as usize, 0));
    }
    SeedDesign::ds(Subset::new(&prod.group, elems)?)
}

/// Primitive polynomials over F_2, degree = index + 2.
const PRIMITIVE_POLYS: [(u32, u64); 5] = [
    (2, 0b111),      // x^2 + x + 1
    (3, 0b1011),     // x^3 + x + 1
    (4, 0b10011),    // x^4 + x + 1
    (5, 0b100101),   // x^5 + x^2 + 1
    (6, 0b1000011),  // x^6 + x + 1
];

/// Singer difference set in `Z_{2^(d+1)-1}`: the logarithms (to a primitive
/// element α of F_{2^(d+1)}) of the trace-zero hyperplane form a Paley-type
/// `(2^(d+1)-1, 2^d - 1, 2^(d-1) - 1)` difference set, for `d ≥ 2`.
pub fn singer_ds(d: u32) -> Result<SeedDesign> {
    let deg = d + 1;
    let &(_, poly) = PRIMITIVE_POLYS
        .iter()
        .find(|&&(dg, _)| dg == deg)
        .ok_or_else(|| {
            Error::Construction(format!(
                "Singer construction implemented for 2 ≤ d ≤ 5 (got d = {d})"
            ))
        })?;
    let n = (1u64 << deg) - 1;
    let g = Group::cyclic(n)?;
    // α^i as bit vectors; trace(x) = Σ x^(2^j).
    let reduce = |mut x: u64| -> u64 {
        for bit in (deg..2 * deg).rev() {
            if x >> bit & 1 == 1 {
                x ^= poly << (bit - deg);
            }
        }
        x
    };
    let mul = |a: u64, b: u64| -> u64 {
        let mut acc = 0u64;
        for bit in 0..deg {
            if b >> bit & 1 == 1 {
                acc ^= a << bit;
            }
        }
        reduce(acc)
    };
    let trace = |x: u64| -> u64 {
        let mut acc = 0u64;
        let mut pw = x;
        for _ in 0..deg {
            acc ^= pw;
            pw = mul(pw, pw);
        }
        debug_assert!(acc == 0 || acc == 1, "trace must land in F_2");
        acc
    };
    let mut elems = Vec::new();
    let mut alpha_i = 1u64;
    for i in 0..n {
        if trace(alpha_i) == 0 {
            elems.push(i as usize);
        }
        alpha_i = mul(alpha_i, 0b10);
    }
    SeedDesign::ds(Subset::new(&g, elems)?)
}

/// The built-in verified catalog (explicit designs and sporadic
/// near-factorizations from the published tables of small orders).
pub fn builtin_catalog() -> &'static [catalog::Entry] {
    catalog::builtin()
}

/// A constructed near-factorization together with a human-readable method
/// label.
pub type Constructed = (NearFactorization, String);

/// Half-set resolver: a half-set near-factorization of `group` with the
/// given `s` (λ = s/2), via de Bruijn seeds, quadratic-residue /
/// twin-prime / Singer difference sets, Paley partial difference sets, and
/// recursive half-set products.
pub fn halfset_nf(group: &Group, s: u64) -> Option<Constructed> {
    let n = group.order() as u64;
    if n < 3 || n % 2 == 0 || s < 2 || s % 2 != 0 || s > n - 1 {
        return None;
    }
    // s = 2: symmetrized de Bruijn seed (cyclic groups only).
    if s == 2 {
        if group.is_cyclic() {
            let nf = symmetrize_by_translation(&debruijn_nf(n, 2).ok()?)?;
            return Some((nf, format!("de Bruijn seed in Z{n}")));
        }
        return None;
    }
    // Paley / twin-prime / Singer difference sets give NF(k, n-k) whose dual
    // is the half-set NF((n+1)/2, (n-1)/2).
    if s == (n + 1) / 2 && group.is_cyclic() {
        if let Ok(design) = paley_ds(n) {
            if let Ok(nf) = ds_to_nf(&design) {
                return Some((nf.dual(), format!("quadratic residues mod {n}")));
            }
        }
        if deg_of_singer(n).is_some() {
            if let Ok(design) = singer_ds(deg_of_singer(n).unwrap()) {
                if let Ok(nf) = ds_to_nf(&design) {
                    return Some((nf.dual(), format!("Singer difference set in Z{n}")));
                }
            }
        }
        if let Some(q) = twin_prime_split(n) {
            if let Ok(design) = twin_prime_ds(q) {
                if let Ok(nf) = ds_to_nf(&design) {
                    return Some((nf.dual(), format!("twin-prime difference set ({q}, {})", q + 2)));
                }
            }
        }
    }
    // Paley partial difference sets give NF((n-1)/2, (n-1)/2) directly.
    if s == (n - 1) / 2 && field_group_matches(group, n) {
        if let Ok(design) = paley_pds(n) {
            if let Ok(nf) = pds_to_nf(&design) {
                return Some((nf, format!("Paley partial difference set in F_{n}")));
            }
        }
    }
    // Recursive half-set products over splits of the primary decomposition.
    let comps = primary_components(group);
    if comps.len() < 2 {
        return None;
    }
    for mask in 1..(1u32 << (comps.len() - 1)) {
        let (mut f1, mut f2) = (Vec::new(), Vec::new());
        for (i, &c) in comps.iter().enumerate() {
            if mask >> i & 1 == 1 {
                f1.push(c);
            } else {
                f2.push(c);
            }
        }
        let (Ok(g1), Ok(g2)) = (group_of_components(&f1), group_of_components(&f2)) else {
            continue;
        };
        let mut s1 = 2;
        while s1 * 2 <= s {
            if s % s1 == 0 && (s / s1) % 2 == 0 {
                if let Some((a, ma)) = halfset_nf(&g1, s1) {
                    if let Some((b, mb)) = halfset_nf(&g2, s / s1) {
                        if let Ok(nf) = product_halfset(&a, &b) {
                            return Some((nf, format!("half-set product [{ma}] × [{mb}]")));
                        }
                    }
                }
            }
            s1 += 2;
        }
    }
    None
}

fn deg_of_singer(n: u64) -> Option<u32> {
    (2..=5u32).find(|&d| (1u64 << (d + 1)) - 1 == n)
}

fn twin_prime_split(n: u64) -> Option<u64> {
    (3..).take_while(|q| q * (q + 2) <= n).find(|&q| {
        q * (q + 2) == n && is_prime(q) && is_prime(q + 2)
    })
}

/// Does `group` match the additive group of F_n (Z_q for prime q, (Z_p)^2
/// for q = p^2)?
fn field_group_matches(group: &Group, n: u64) -> bool {
    if is_prime(n) {
        return group.is_cyclic();
    }
    match sqrt_exact(n) {
        Some(p) if is_prime(p) => group.invariant_factors() == [p, p],
        _ => false,
    }
}

/// Prime-power cyclic components of the group.
fn primary_components(group: &Group) -> Vec<u64> {
    let mut comps = Vec::new();
    for &m in group.invariant_factors() {
        let mut rest = m;
        let mut p = 2;
        while p * p <= rest {
            if rest % p == 0 {
                let mut pa = 1;
                while rest % p == 0 {
                    pa *= p;
                    rest /= p;
                }
                comps.push(pa);
            }
            p += 1;
        }
        if rest > 1 {
            comps.push(rest);
        }
    }
    comps.sort_unstable();
    comps
}

fn group_of_components(comps: &[u64]) -> Result<Group> {
    let display = comps
        .iter()
        .rev()
        .map(|m| format!("Z{m}"))
        .collect::<Vec<_>>()
        .join("x");
    Group::from_factors(comps, display)
}

/// Try all constructions for the quadruple `(group, s, t, λ)` with
/// `s ≤ t`; returns a verified near-factorization and a method label.
pub fn construct_any(group: &Group, s: u64, t: u64, lambda: u64) -> Option<Constructed> {
    let n = group.order() as u64;
    if s * t != lambda * (n - 1) || s > t {
        return None;
    }
    if s == 1 && t == n - 1 && lambda == 1 {
        return trivial_nf(group).ok().map(|nf| (nf, "trivial".into()));
    }
    if lambda == 1 && group.is_cyclic() {
        if let Ok(nf) = debruijn_nf(n, s) {
            return Some((nf, "de Bruijn".into()));
        }
    }
    // Catalog lookup (exact parameters or their dual).
    for entry in builtin_catalog() {
        if let Some((nf, label)) = entry.matching_nf(group, s, t, lambda) {
            return Some((nf, label));
        }
    }
    // Seed designs on the boundary |G| = s + t.
    if s + t == n {
        for (k_wanted, dualize) in [(s, false), (t, true)] {
            let candidates: [Option<(Result<SeedDesign>, String)>; 3] = [
                (is_prime(n) && n % 4 == 3 && k_wanted == (n - 1) / 2 && group.is_cyclic())
                    .then(|| (paley_ds(n), format!("quadratic residues mod {n}"))),
                deg_of_singer(n)
                    .filter(|_| group.is_cyclic() && k_wanted == n / 2)
                    .map(|d| (singer_ds(d), format!("Singer difference set in Z{n}"))),
                twin_prime_split(n)
                    .filter(|_| group.is_cyclic() && k_wanted == (n - 1) / 2)
                    .map(|q| (twin_prime_ds(q), format!("twin-prime difference set ({q}, {})", q + 2))),
            ];
            for cand in candidates.into_iter().flatten() {
                let (Ok(design), label) = cand else { continue };
                let Ok(nf) = ds_to_nf(&design) else { continue };
                let nf = if dualize { nf.dual() } else { nf };
                let (_, ss, tt, ll) = nf.parameters();
                if (ss as u64, tt as u64, ll) == (s, t, lambda) {
                    return Some((nf, label));
                }
            }
        }
    }
    // Paley partial difference sets on the boundary |G| = s + t + 1.
    if s + t + 1 == n && s == t && field_group_matches(group, n) && n % 4 == 1 {
        if let Ok(design) = paley_pds(n) {
            if let Ok(nf) = pds_to_nf(&design) {
                if nf.lambda() == lambda {
                    return Some((nf, format!("Paley partial difference set in F_{n}")));
                }
            }
        }
    }
    // Half-set constructions (directly or through duality).
    if n % 2 == 1 && t == (n - 1) / 2 && s == 2 * lambda {
        if let Some(built) = halfset_nf(group, s) {
            return Some(built);
        }
    }
    if n % 2 == 1 && s == (n - 1) / 2 && t == 2 * lambda {
        if let Some((nf, label)) = halfset_nf(group, t) {
            return Some((nf.dual(), format!("dual of {label}")));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn debruijn_families() {
        for (n, s) in [(15, 2), (15, 7), (13, 3), (31, 6), (9, 2)] {
            let nf = debruijn_nf(n, s).unwrap();
            assert_eq!(nf.lambda(), 1);
            assert_eq!(nf.s().len() as u64, s);
        }
        assert!(debruijn_nf(15, 4).is_err());
    }

    #[test]
    fn ds_worked_example() {
        let g = Group::parse("Z11").unwrap();
        let d = SeedDesign::ds(Subset::parse(&g, "1,3,4,5,9").unwrap()).unwrap();
        assert_eq!(d.kind(), DesignKind::Ds { v: 11, k: 5, lambda: 2 });
        let nf = ds_to_nf(&d).unwrap();
        assert_eq!(nf.parameters(), (11, 5, 6, 3));
        assert_eq!(
            nf.t().elems().to_vec(),
            g.parse_elems("0,1,3,4,5,9").unwrap()
        );
        // round-trip through the converse
        let back = nf_to_ds(&nf).unwrap();
        assert_eq!(back.set(), d.set());
    }

    #[test]
    fn pds_worked_example() {
        let g = Group::parse("Z13").unwrap();
        let d = SeedDesign::pds(Subset::parse(&g, "1,3,4,9,10,12").unwrap()).unwrap();
        let nf = pds_to_nf(&d).unwrap();
        assert_eq!(nf.parameters(), (13, 6, 6, 3));
        assert_eq!(
            nf.t().elems().to_vec(),
            g.parse_elems("2,5,6,7,8,11").unwrap()
        );
        assert!(nf.is_symmetric());
        let (back, shift) = nf_to_pds(&nf).unwrap();
        assert_eq!(shift, 0);
        assert_eq!(back.set(), d.set());
    }

    #[test]
    fn product_z3_z5() {
        // the Z3 × Z5 worked example, exact sets
        let z3 = Group::parse("Z3").unwrap();
        let a = NearFactorization::new(
            Subset::parse(&z3, "1,2").unwrap(),
            Subset::parse(&z3, "0").unwrap(),
        )
        .unwrap();
        let z5 = Group::parse("Z5").unwrap();
        let b = NearFactorization::new(
            Subset::parse(&z5, "2,3").unwrap(),
            Subset::parse(&z5, "1,4").unwrap(),
        )
        .unwrap();
        let nf = product_halfset(&a, &b).unwrap();
        assert_eq!(nf.parameters(), (15, 4, 7, 2));
        let prod = Group::product(&z3, &z5).unwrap();
        let expect_s: Vec<usize> = [(1, 2), (1, 3), (2, 2), (2, 3)]
            .iter()
            .map(|&(x, y)| prod.embed(x, y))
            .collect();
        let mut expect_s = expect_s;
        expect_s.sort_unstable();
        assert_eq!(nf.s().elems(), expect_s.as_slice());
        let mut expect_t: Vec<usize> = [(1, 1), (1, 4), (2, 1), (2, 4), (0, 0), (0, 2), (0, 3)]
            .iter()
            .map(|&(x, y)| prod.embed(x, y))
            .collect();
        expect_t.sort_unstable();
        assert_eq!(nf.t().elems(), expect_t.as_slice());
        assert!(nf.is_symmetric());
    }

    #[test]
    fn product_rejects_non_halfset() {
        let g = Group::parse("Z7").unwrap();
        let trivial = trivial_nf(&g).unwrap(); // (1,6), not a half-set
        assert!(product_halfset(&trivial, &trivial).is_err());
    }

    #[test]
    fn iterated_rows() {
        for (orders, spec, s, t, lambda) in [
            (vec![3, 3], "Z3xZ3", 4, 4, 2),
            (vec![5, 3], "Z15", 4, 7, 2),
            (vec![3, 3, 3], "Z3xZ3xZ3", 8, 13, 4),
            (vec![7, 3], "Z21", 4, 10, 2),
            (vec![9, 3], "Z9xZ3", 4, 13, 2),
        ] {
            let nf = iterated_halfset(&orders).unwrap();
            assert_eq!(nf.group(), &Group::parse(spec).unwrap(), "{orders:?}");
            assert_eq!(
                nf.parameters(),
                (nf.group().order(), s, t, lambda),
                "{orders:?}"
            );
            assert!(nf.is_symmetric());
        }
    }

    #[test]
    fn paley_families() {
        let d = paley_ds(7).unwrap();
        assert_eq!(d.set().elems(), &[1, 2, 4]);
        assert_eq!(d.kind(), DesignKind::Ds { v: 7, k: 3, lambda: 1 });
        let d = paley_ds(11).unwrap();
        assert_eq!(d.kind(), DesignKind::Ds { v: 11, k: 5, lambda: 2 });
        assert!(paley_ds(13).is_err());

        let d = paley_pds(13).unwrap();
        assert_eq!(d.kind(), DesignKind::Pds { v: 13, k: 6, lambda: 2, mu: 3 });
        let d = paley_pds(9).unwrap();
        assert_eq!(d.kind(), DesignKind::Pds { v: 9, k: 4, lambda: 1, mu: 2 });
        let d = paley_pds(25).unwrap();
        assert_eq!(d.kind(), DesignKind::Pds { v: 25, k: 12, lambda: 5, mu: 6 });
        let d = paley_pds(49).unwrap();
        assert_eq!(d.kind(), DesignKind::Pds { v: 49, k: 24, lambda: 11, mu: 12 });
    }

    #[test]
    fn twin_prime_and_singer() {
        let d = twin_prime_ds(3).unwrap();
        assert_eq!(d.kind(), DesignKind::Ds { v: 15, k: 7, lambda: 3 });
        let d = twin_prime_ds(5).unwrap();
        assert_eq!(d.kind(), DesignKind::Ds { v: 35, k: 17, lambda: 8 });
        let d = singer_ds(2).unwrap();
        assert_eq!(d.set().elems(), &[1, 2, 4]);
        let d = singer_ds(3).unwrap();
        assert_eq!(d.kind(), DesignKind::Ds { v: 15, k: 7, lambda: 3 });
        let d = singer_ds(4).unwrap();
        assert_eq!(d.kind(), DesignKind::Ds { v: 31, k: 15, lambda: 7 });
    }

    #[test]
    fn halfset_resolver() {
        // Z21 (8,10,4): Z3 seed × Paley Z7 seed
        let g = Group::parse("Z21").unwrap();
        let (nf, _) = halfset_nf(&g, 8).unwrap();
        assert_eq!(nf.parameters(), (21, 8, 10, 4));
        // Z33 (12,16,6), Z35 (8,17,4), Z39 (12,19,6)
        for (spec, s, t, l) in [("Z33", 12, 16, 6), ("Z35", 8, 17, 4), ("Z39", 12, 19, 6)] {
            let g = Group::parse(spec).unwrap();
            let (nf, _) = halfset_nf(&g, s).unwrap();
            assert_eq!(nf.parameters(), (g.order(), s as usize, t, l));
        }
        // no half-set NF with s = 8 in Z9xZ3 or Z27 (too few odd factors)
        assert!(halfset_nf(&Group::parse("Z9xZ3").unwrap(), 8).is_none());
        assert!(halfset_nf(&Group::parse("Z27").unwrap(), 8).is_none());
    }

    #[test]
    fn symmetrize() {
        let nf = debruijn_nf(15, 2).unwrap();
        let sym = symmetrize_by_translation(&nf).unwrap();
        assert!(sym.is_symmetric());
        assert_eq!(sym.parameters(), nf.parameters());
        // S = {1,4,11,14} in Z15 is already symmetric: the zero translate
        // is returned as-is
        let g = Group::parse("Z15").unwrap();
        let nf = NearFactorization::new(
            Subset::parse(&g, "1,4,11,14").unwrap(),
            Subset::parse(&g, "0,2,6,7,8,9,13").unwrap(),
        )
        .unwrap();
        let sym = symmetrize_by_translation(&nf).unwrap();
        assert_eq!(sym.s().elems(), nf.s().elems());
    }

    #[test]
    fn trivial_is_unique_shape() {
        let g = Group::parse("Z2xZ2").unwrap();
        let nf = trivial_nf(&g).unwrap();
        assert_eq!(nf.parameters(), (4, 1, 3, 1));
    }
}
