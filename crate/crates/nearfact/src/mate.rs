//! The unique-mate solver.
//!
//! Given `S ⊆ G`, a λ-fold mate `T` (if one exists) is unique, and so is λ.
//! Writing `M(S)` for the membership matrix of `S`, the pair `(S, T)`
//! satisfies `M(S)·M(T) = λ(J − I)`, and the first column of `M(T)` is the
//! indicator of `T^(-1)` scaled by nothing.  Solving
//!
//! `M(S) · Ȳ = (0, 1, …, 1)ᵀ`
//!
//! over ℚ gives `Ȳ = (1/λ) · x` with `x` the indicator of `T^(-1)` exactly
//! when a mate exists; the solver accepts a solution iff it takes exactly
//! two values `0` and `μ = 1/λ`.
//!
//! The fast path works modulo the smallest prime `p > |G|`.  If the matrix
//! is nonsingular mod p the unique solution mod p determines the answer; if
//! it is singular mod p (or the pattern test needs confirmation) the solver
//! falls back to exact rational elimination, which is authoritative: a
//! matrix singular over ℚ admits no mate at all, since `λ(J − I)` is
//! invertible.

use num::{BigRational, Signed, Zero};

use crate::group::Subset;
use crate::ring::{check_nf, NearFactorization};
use crate::{Error, Result};

/// Outcome of a mate computation.
#[derive(Debug)]
pub struct MateOutcome {
    /// The unique mate and λ, when `S` admits one.
    pub mate: Option<NearFactorization>,
    /// Prime used by the modular fast path.
    pub prime: u64,
    /// Whether the exact rational fallback ran.
    pub used_exact_fallback: bool,
}

fn smallest_prime_above(n: u64) -> u64 {
    let is_prime = |m: u64| {
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
    };
    let mut p = n + 1;
    while !is_prime(p) {
        p += 1;
    }
    p
}

/// Compute the unique `(T, λ)` with `S·T = λ(G − e)`, or report that none
/// exists.  Requires `1 ≤ |S| ≤ n − 1`.
pub fn mate(s: &Subset) -> Result<MateOutcome> {
    let g = s.group();
    let n = g.order();
    if n < 2 {
        return Err(Error::InvalidSubset("group must have order at least 2".into()));
    }
    if s.is_empty() || s.len() >= n {
        return Err(Error::InvalidSubset(format!(
            "|S| must lie in 1..{} (got {})",
            n - 1,
            s.len()
        )));
    }
    let p = smallest_prime_above(n as u64);

    // Membership matrix rows: a[i][j] = 1 iff g_j - g_i ∈ S.
    let row = |i: usize| -> Vec<u64> {
        (0..n)
            .map(|j| if s.contains(g.sub(j, i)) { 1 } else { 0 })
            .collect()
    };

    match solve_mod_p(n, &row, p) {
        ModSolve::Unique(y) => {
            // Accept iff the solution is (0, μ)-valued with μ ≠ 0.
            let mut mu = 0u64;
            let mut ok = true;
            for &v in &y {
                if v == 0 {
                    continue;
                }
                if mu == 0 {
                    mu = v;
                } else if v != mu {
                    ok = false;
                    break;
                }
            }
            if ok && mu != 0 {
                let lambda = crate::group::mod_inverse(mu, p).expect("p prime, mu nonzero");
                if let Some(nf) = assemble(s, &y, lambda)? {
                    return Ok(MateOutcome {
                        mate: Some(nf),
                        prime: p,
                        used_exact_fallback: false,
                    });
                }
                // The modular pattern matched but exact verification failed
                // (λ read mod p may be wrong for huge λ); defer to the exact
                // path.
            } else {
                // Nonsingular mod p with a non-(0,μ) solution: the rational
                // solution reduces to this one, so no mate exists.
                return Ok(MateOutcome {
                    mate: None,
                    prime: p,
                    used_exact_fallback: false,
                });
            }
        }
        ModSolve::Singular => {}
    }

    // Exact rational fallback.
    let mate = solve_exact(s, &row)?;
    Ok(MateOutcome {
        mate,
        prime: p,
        used_exact_fallback: true,
    })
}

fn assemble(s: &Subset, y: &[u64], lambda: u64) -> Result<Option<NearFactorization>> {
    let g = s.group();
    let t_elems: Vec<usize> = y
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(i, _)| g.neg(i))
        .collect();
    let t = Subset::new(g, t_elems)?;
    if check_nf(s, &t)? == Some(lambda) {
        Ok(Some(NearFactorization::new(s.clone(), t)?))
    } else {
        Ok(None)
    }
}

enum ModSolve {
    Unique(Vec<u64>),
    Singular,
}

/// Gauss-Jordan over GF(p) on `A·y = (0,1,…,1)ᵀ`.
fn solve_mod_p(n: usize, row: &dyn Fn(usize) -> Vec<u64>, p: u64) -> ModSolve {
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut r = row(i);
            r.push(if i == 0 { 0 } else { 1 });
            r
        })
        .collect();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| a[r][col] % p != 0) {
            Some(r) => r,
            None => return ModSolve::Singular,
        };
        a.swap(col, pivot);
        let inv = crate::group::mod_inverse(a[col][col] % p, p).expect("pivot nonzero");
        for x in a[col].iter_mut() {
            *x = *x % p * inv % p;
        }
        let pivot_row = a[col].clone();
        for (r, other) in a.iter_mut().enumerate() {
            if r == col {
                continue;
            }
            let f = other[col] % p;
            if f == 0 {
                continue;
            }
            for (x, &pv) in other.iter_mut().zip(&pivot_row) {
                *x = (*x + p * p - f * pv % p) % p;
            }
        }
    }
    ModSolve::Unique((0..n).map(|i| a[i][n] % p).collect())
}

/// Exact rational elimination; `None` when the matrix is singular (no mate)
/// or the solution is not (0, 1/λ)-valued.
fn solve_exact(
    s: &Subset,
    row: &dyn Fn(usize) -> Vec<u64>,
) -> Result<Option<NearFactorization>> {
    let g = s.group();
    let n = g.order();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut r: Vec<BigRational> = row(i)
                .into_iter()
                .map(|v| BigRational::from_integer(v.into()))
                .collect();
            r.push(BigRational::from_integer(if i == 0 { 0.into() } else { 1.into() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(r) => r,
            // Singular over ℚ: λ(J−I) is invertible, so M(S) would have to
            // be too; no mate exists.
            None => return Ok(None),
        };
        a.swap(col, pivot);
        let inv = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= inv.clone();
        }
        let pivot_row = a[col].clone();
        for (r, other) in a.iter_mut().enumerate() {
            if r == col {
                continue;
            }
            let f = other[col].clone();
            if f.is_zero() {
                continue;
            }
            for (x, pv) in other.iter_mut().zip(&pivot_row) {
                *x -= f.clone() * pv;
            }
        }
    }
    let y: Vec<BigRational> = (0..n).map(|i| a[i][n].clone()).collect();
    let mut mu: Option<BigRational> = None;
    for v in &y {
        if v.is_zero() {
            continue;
        }
        match &mu {
            None => mu = Some(v.clone()),
            Some(m) if m == v => {}
            Some(_) => return Ok(None),
        }
    }
    let mu = match mu {
        Some(m) if m.is_positive() => m,
        _ => return Ok(None),
    };
    let lam = mu.recip();
    if !lam.is_integer() {
        return Ok(None);
    }
    let lambda: u64 = match lam.to_integer().try_into() {
        Ok(l) => l,
        Err(_) => return Ok(None),
    };
    let y01: Vec<u64> = y.iter().map(|v| if v.is_zero() { 0 } else { 1 }).collect();
    assemble(s, &y01, lambda)
}

/// Brute-force oracle: try every candidate λ and every subset `T` of the
/// right size, with incremental pruning.  Intended for cross-checking the
/// solver on small groups (`n ≤ 20`).
pub fn mate_bruteforce(s: &Subset) -> Result<Option<NearFactorization>> {
    let g = s.group();
    let n = g.order();
    if n > 20 {
        return Err(Error::Usage(
            "brute-force mate oracle is limited to groups of order ≤ 20".into(),
        ));
    }
    if s.is_empty() || s.len() >= n {
        return Err(Error::InvalidSubset("need 1 ≤ |S| ≤ n-1".into()));
    }
    let slen = s.len() as u64;
    let nm1 = n as u64 - 1;
    for lambda in 1..=(slen * (n as u64) / nm1).max(1) {
        if (lambda * nm1) % slen != 0 {
            continue;
        }
        let t_len = (lambda * nm1 / slen) as usize;
        if t_len == 0 || t_len > n {
            continue;
        }
        // Depth-first over sorted T with partial-sum pruning.
        let mut counts = vec![0i64; n];
        let mut chosen: Vec<usize> = Vec::with_capacity(t_len);
        if dfs(g, s, lambda as i64, t_len, 0, &mut chosen, &mut counts) {
            let t = Subset::new(g, chosen)?;
            return Ok(Some(NearFactorization::new(s.clone(), t)?));
        }
    }
    Ok(None)
}

fn dfs(
    g: &crate::group::Group,
    s: &Subset,
    lambda: i64,
    t_len: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    counts: &mut Vec<i64>,
) -> bool {
    if chosen.len() == t_len {
        return counts[0] == 0
            && counts[1..].iter().all(|&c| c == lambda);
    }
    for cand in start..g.order() {
        if g.order() - cand < t_len - chosen.len() {
            break;
        }
        let mut ok = true;
        for &a in s.elems() {
            let e = g.add(a, cand);
            counts[e] += 1;
            if (e == 0 && counts[0] > 0) || counts[e] > lambda {
                ok = false;
            }
        }
        if ok {
            chosen.push(cand);
            if dfs(g, s, lambda, t_len, cand + 1, chosen, counts) {
                return true;
            }
            chosen.pop();
        }
        for &a in s.elems() {
            counts[g.add(a, cand)] -= 1;
        }
    }
    false
}
