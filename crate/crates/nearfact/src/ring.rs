//! Exact arithmetic in the integral group ring ℤ[G] and the verification
//! predicates built on it.
//!
//! A subset `A ⊆ G` is identified with the 0/1 element `Σ_{a∈A} a` of ℤ[G].
//! The defining equation of a λ-fold near-factorization is
//! `S · T = λ(G − e)`, checked here coefficient by coefficient with exact
//! integers — no verification in this crate is probabilistic.

use crate::group::{Group, Subset};
use crate::{Error, Result};
use std::fmt;

/// An element of ℤ[G]: one integer coefficient per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElem {
    group: Group,
    coeffs: Vec<i64>,
}

impl RingElem {
    pub fn zero(group: &Group) -> RingElem {
        RingElem {
            group: group.clone(),
            coeffs: vec![0; group.order()],
        }
    }

    /// The 0/1 indicator of a subset.
    pub fn from_subset(s: &Subset) -> RingElem {
        let mut r = RingElem::zero(s.group());
        for &e in s.elems() {
            r.coeffs[e] = 1;
        }
        r
    }

    pub fn from_coeffs(group: &Group, coeffs: Vec<i64>) -> Result<RingElem> {
        if coeffs.len() != group.order() {
            return Err(Error::InvalidSubset(
                "coefficient vector length differs from group order".into(),
            ));
        }
        Ok(RingElem {
            group: group.clone(),
            coeffs,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> i64 {
        self.coeffs[e]
    }

    /// Convolution product: `(xy)_g = Σ_{a+b=g} x_a y_b`.
    pub fn convolve(&self, other: &RingElem) -> Result<RingElem> {
        if self.group != other.group {
            return Err(Error::MixedGroups);
        }
        let g = &self.group;
        let mut out = RingElem::zero(g);
        for (a, &xa) in self.coeffs.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in other.coeffs.iter().enumerate() {
                if yb == 0 {
                    continue;
                }
                out.coeffs[g.add(a, b)] += xa * yb;
            }
        }
        Ok(out)
    }

    /// The involution `x ↦ x^(-1)`: coefficient of `g` becomes coefficient
    /// of `-g`.
    pub fn involution(&self) -> RingElem {
        let g = &self.group;
        let mut out = RingElem::zero(g);
        for (a, &xa) in self.coeffs.iter().enumerate() {
            out.coeffs[g.neg(a)] = xa;
        }
        out
    }

    pub fn add(&self, other: &RingElem) -> Result<RingElem> {
        if self.group != other.group {
            return Err(Error::MixedGroups);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(RingElem {
            group: self.group.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, c: i64) -> RingElem {
        RingElem {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c == 1 {
                write!(f, "[{}]", self.group.format_elem(e))?;
            } else {
                write!(f, "{}·[{}]", c, self.group.format_elem(e))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The matrix `M(B)` with `M(B)[i][j] = 1` iff `g_j - g_i ∈ B`.  Row 0 reads
/// off `B` itself; column 0 reads off `-B`.  `(S, T)` is a λ-fold
/// near-factorization exactly when `M(S)·M(T) = λ(J - I)`.
pub fn matrix_m(b: &Subset) -> Vec<Vec<i64>> {
    let g = b.group();
    let n = g.order();
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            if b.contains(g.sub(j, i)) {
                *x = 1;
            }
        }
    }
    m
}

/// If `S·T = λ(G - e)` for some λ ≥ 1, return λ.
pub fn check_nf(s: &Subset, t: &Subset) -> Result<Option<u64>> {
    if s.group() != t.group() {
        return Err(Error::MixedGroups);
    }
    let n = s.group().order();
    if n < 2 || s.is_empty() || t.is_empty() {
        return Ok(None);
    }
    // λ is forced by counting: st = λ(n-1).
    let st = (s.len() * t.len()) as u64;
    if st % (n as u64 - 1) != 0 {
        return Ok(None);
    }
    let lambda = st / (n as u64 - 1);
    let g = s.group();
    let mut coeffs = vec![0i64; n];
    for &a in s.elems() {
        for &b in t.elems() {
            coeffs[g.add(a, b)] += 1;
        }
    }
    if coeffs[0] != 0 {
        return Ok(None);
    }
    if coeffs[1..].iter().any(|&c| c != lambda as i64) {
        return Ok(None);
    }
    Ok(Some(lambda))
}

/// If `D` is a `(v, k, λ)` difference set (`D·D^(-1) = (k-λ)e + λG`),
/// return `(v, k, λ)`.
pub fn check_ds(d: &Subset) -> Option<(u64, u64, u64)> {
    let g = d.group();
    let v = g.order() as u64;
    let k = d.len() as u64;
    if v < 2 || k == 0 || (k * (k - 1)) % (v - 1) != 0 {
        return None;
    }
    let lambda = k * (k - 1) / (v - 1);
    let mut coeffs = vec![0i64; g.order()];
    for &a in d.elems() {
        for &b in d.elems() {
            coeffs[g.sub(a, b)] += 1;
        }
    }
    if coeffs[0] != k as i64 {
        return None;
    }
    if coeffs[1..].iter().any(|&c| c != lambda as i64) {
        return None;
    }
    Some((v, k, lambda))
}

/// If `D` (not containing the identity) is a `(v, k, λ, μ)` partial
/// difference set (`D·D^(-1) = (k-μ)e + (λ-μ)D + μG`), return
/// `(v, k, λ, μ)`.
pub fn check_pds(d: &Subset) -> Option<(u64, u64, u64, u64)> {
    let g = d.group();
    let v = g.order() as u64;
    let k = d.len() as u64;
    if v < 2 || k == 0 || d.contains(0) {
        return None;
    }
    let mut coeffs = vec![0i64; g.order()];
    for &a in d.elems() {
        for &b in d.elems() {
            coeffs[g.sub(a, b)] += 1;
        }
    }
    if coeffs[0] != k as i64 {
        return None;
    }
    let mut lambda: Option<i64> = None;
    let mut mu: Option<i64> = None;
    for (e, &c) in coeffs.iter().enumerate().skip(1) {
        let slot = if d.contains(e) { &mut lambda } else { &mut mu };
        match slot {
            None => *slot = Some(c),
            Some(x) if *x == c => {}
            Some(_) => return None,
        }
    }
    let lambda = lambda? as u64;
    // A k = v-1 set leaves μ undetermined; treat it as μ = λ.
    let mu = mu.map_or(lambda, |m| m as u64);
    Some((v, k, lambda, mu))
}

/// A verified λ-fold near-factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearFactorization {
    s: Subset,
    t: Subset,
    lambda: u64,
}

impl NearFactorization {
    /// Verify `S·T = λ(G - e)` and wrap the pair; errors when the pair is
    /// not a near-factorization.
    pub fn new(s: Subset, t: Subset) -> Result<NearFactorization> {
        match check_nf(&s, &t)? {
            Some(lambda) => Ok(NearFactorization { s, t, lambda }),
            None => Err(Error::Verification(format!(
                "S={} and T={} form no near-factorization of {}",
                s.render(),
                t.render(),
                s.group()
            ))),
        }
    }

    pub fn group(&self) -> &Group {
        self.s.group()
    }

    pub fn s(&self) -> &Subset {
        &self.s
    }

    pub fn t(&self) -> &Subset {
        &self.t
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    /// `(n, s, t, λ)`.
    pub fn parameters(&self) -> (usize, usize, usize, u64) {
        (self.group().order(), self.s.len(), self.t.len(), self.lambda)
    }

    /// The dual near-factorization `(T^(-1), S^(-1))`.
    pub fn dual(&self) -> NearFactorization {
        NearFactorization {
            s: self.t.negate(),
            t: self.s.negate(),
            lambda: self.lambda,
        }
    }

    /// `(S + g, T - g)` for any g is again a near-factorization.
    pub fn translate(&self, g: usize) -> NearFactorization {
        NearFactorization {
            s: self.s.translate(g),
            t: self.t.translate(self.group().neg(g)),
            lambda: self.lambda,
        }
    }

    /// Both sets symmetric (each closed under negation).
    pub fn is_symmetric(&self) -> bool {
        self.s.is_symmetric() && self.t.is_symmetric()
    }
}

impl fmt::Display for NearFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, s, t, l) = self.parameters();
        write!(
            f,
            "NF({s},{t}) of {} (n={n}, lambda={l}): S={} T={}",
            self.group(),
            self.s.render(),
            self.t.render()
        )
    }
}
