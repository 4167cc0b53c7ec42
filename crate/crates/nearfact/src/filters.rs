//! Necessary conditions on near-factorization parameters.
//!
//! Eleven exact arithmetic rules.  A quadruple `(G, s, t, λ)` is *feasible*
//! when no applicable rule fails; feasibility is necessary but not
//! sufficient for existence.  All comparisons with fractional bounds are
//! done by cross-multiplication — no floating point.

use serde::Serialize;

use crate::group::Group;

/// Result of one rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail(String),
    NotApplicable,
}

impl Verdict {
    pub fn failed(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail(why) => write!(f, "FAIL: {why}"),
            Verdict::NotApplicable => write!(f, "n/a"),
        }
    }
}

/// Names of all rules, in evaluation order.
pub const RULE_NAMES: [&str; 11] = [
    "divisibility",
    "sum-bound",
    "ratio-bound",
    "min-bound",
    "quarter-sum-bound",
    "quarter-order-bound",
    "full-set",
    "order-minus-one-prime",
    "factorization-bound",
    "mod-six-bound",
    "congruence",
];

/// Full per-rule report for one quadruple.
#[derive(Clone, Debug, Serialize)]
pub struct FilterReport {
    pub group: String,
    pub n: u64,
    pub s: u64,
    pub t: u64,
    pub lambda: u64,
    pub rules: Vec<(String, Verdict)>,
    /// No applicable rule failed.
    pub feasible: bool,
    pub first_failure: Option<String>,
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

fn prime_divisors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Evaluate every rule for `(group, s, t, λ)`.
pub fn check_all(group: &Group, s: u64, t: u64, lambda: u64) -> FilterReport {
    let n = group.order() as u64;
    let mut rules: Vec<(String, Verdict)> = Vec::with_capacity(11);
    let mn = s.min(t);
    let mx = s.max(t);

    // 1. divisibility: st = λ(n-1).
    rules.push((
        RULE_NAMES[0].into(),
        if n >= 2 && lambda >= 1 && s >= 1 && t >= 1 && s * t == lambda * (n - 1) {
            Verdict::Pass
        } else {
            Verdict::Fail(format!("st = {} but λ(n-1) = {}", s * t, lambda * (n - 1)))
        },
    ));

    // 2. s + t ≤ n.
    rules.push((
        RULE_NAMES[1].into(),
        if s + t <= n {
            Verdict::Pass
        } else {
            Verdict::Fail(format!("s + t = {} > n = {n}", s + t))
        },
    ));

    // 3. λ(s+t-1) ≤ st.
    rules.push((
        RULE_NAMES[2].into(),
        if lambda * (s + t - 1) <= s * t {
            Verdict::Pass
        } else {
            Verdict::Fail(format!(
                "λ(s+t-1) = {} > st = {}",
                lambda * (s + t - 1),
                s * t
            ))
        },
    ));

    // 4. λ ≤ min(s,t) - 1 when min(s,t) > 1.
    rules.push((
        RULE_NAMES[3].into(),
        if mn <= 1 {
            Verdict::NotApplicable
        } else if lambda <= mn - 1 {
            Verdict::Pass
        } else {
            Verdict::Fail(format!("λ = {lambda} > min(s,t) - 1 = {}", mn - 1))
        },
    ));

    // 5. λ ≤ ⌊(s+t+1)/4⌋.
    rules.push((
        RULE_NAMES[4].into(),
        if lambda <= (s + t + 1) / 4 {
            Verdict::Pass
        } else {
            Verdict::Fail(format!("λ = {lambda} > ⌊(s+t+1)/4⌋ = {}", (s + t + 1) / 4))
        },
    ));

    // 6. λ ≤ ⌊(n+1)/4⌋.
    rules.push((
        RULE_NAMES[5].into(),
        if lambda <= (n + 1) / 4 {
            Verdict::Pass
        } else {
            Verdict::Fail(format!("λ = {lambda} > ⌊(n+1)/4⌋ = {}", (n + 1) / 4))
        },
    ));

    // 7. an (s, n-1) pair forces λ = s = 1.
    rules.push((
        RULE_NAMES[6].into(),
        if mx != n - 1 {
            Verdict::NotApplicable
        } else if lambda == 1 && mn == 1 {
            Verdict::Pass
        } else {
            Verdict::Fail("only the trivial pair (1, n-1, 1) touches t = n-1".into())
        },
    ));

    // 8. n-1 prime forces the trivial pair.
    rules.push((
        RULE_NAMES[7].into(),
        if !is_prime(n - 1) {
            Verdict::NotApplicable
        } else if lambda == 1 && mn == 1 && mx == n - 1 {
            Verdict::Pass
        } else {
            Verdict::Fail(format!("n - 1 = {} is prime", n - 1))
        },
    ));

    // 9. factorization bound: for each n-1 = n1·n2 with n1 | s, n2 | t and
    //    (s/n1)(t/n2) = λ, the parity-cased bound must hold.
    rules.push((RULE_NAMES[8].into(), factorization_rule(n, s, t, lambda)));

    // 10. n ≡ 4 (mod 6) forces 9λ ≤ 2n + 4.
    rules.push((
        RULE_NAMES[9].into(),
        if n % 6 != 4 {
            Verdict::NotApplicable
        } else if 9 * lambda <= 2 * n + 4 {
            Verdict::Pass
        } else {
            Verdict::Fail(format!("9λ = {} > 2n + 4 = {}", 9 * lambda, 2 * n + 4))
        },
    ));

    // 11. congruence conditions through (Z_p)^m quotients.
    rules.push((RULE_NAMES[10].into(), congruence_rule(group, s, t, lambda)));

    let first_failure = rules
        .iter()
        .find(|(_, v)| v.failed())
        .map(|(name, _)| name.clone());
    FilterReport {
        group: group.spec().to_string(),
        n,
        s,
        t,
        lambda,
        feasible: first_failure.is_none(),
        first_failure,
        rules,
    }
}

/// The parity-cased bound attached to a factorization n-1 = n1·n2:
/// 4λ ≤ n+1 when both parts are even, and for each odd part n1 (with the
/// complementary part n2) 4·n1·λ ≤ (n1+1)(n-n2+1).
fn factorization_rule(n: u64, s: u64, t: u64, lambda: u64) -> Verdict {
    if s.min(t) <= 1 || s * t != lambda * (n - 1) {
        return Verdict::NotApplicable;
    }
    let mut applicable = false;
    let mut n1 = 1;
    while n1 * n1 <= n - 1 {
        if (n - 1) % n1 == 0 {
            for (a, b) in [(n1, (n - 1) / n1), ((n - 1) / n1, n1)] {
                // s = λ1·a, t = λ2·b with λ1·λ2 = λ
                if s % a != 0 || t % b != 0 || (s / a) * (t / b) != lambda {
                    continue;
                }
                applicable = true;
                let bounds_ok = if a % 2 == 0 && b % 2 == 0 {
                    4 * lambda <= n + 1
                } else {
                    let mut ok = true;
                    if a % 2 == 1 {
                        ok &= 4 * a * lambda <= (a + 1) * (n - b + 1);
                    }
                    if b % 2 == 1 {
                        ok &= 4 * b * lambda <= (b + 1) * (n - a + 1);
                    }
                    ok
                };
                if !bounds_ok {
                    return Verdict::Fail(format!(
                        "decomposition n-1 = {a}·{b} with s = {}·{a}, t = {}·{b} violates the bound",
                        s / a,
                        t / b
                    ));
                }
            }
        }
        n1 += 1;
    }
    if applicable {
        Verdict::Pass
    } else {
        Verdict::NotApplicable
    }
}

/// Congruence conditions: for every prime p dividing n, the group has a
/// (Z_p)^m' quotient for every m' up to the number of invariant factors
/// divisible by p.  Each (p, m') with q = p^m' applies when every prime
/// divisor ℓ of λ satisfies ℓ ≡ ±1 (mod q); then
///
/// * odd p: s^(p-1) ≡ t^(p-1) ≡ 1 (mod q),
/// * p = 2 and λ^(q-1) ≡ 1 (mod q): s ≡ -t ≡ ±1 (mod q),
/// * p = 2 and λ^(q-1) ≡ -1 (mod q): s ≡ t ≡ ±1 (mod q).
fn congruence_rule(group: &Group, s: u64, t: u64, lambda: u64) -> Verdict {
    let lambda_primes = prime_divisors(lambda);
    let mut any_applicable = false;
    let inv = group.invariant_factors();
    let n = group.order() as u64;
    for p in prime_divisors(n) {
        let max_rank = inv.iter().filter(|&&m| m % p == 0).count() as u32;
        for mprime in 1..=max_rank {
            let q = p.pow(mprime);
            if !lambda_primes.iter().all(|&l| l % q == 1 || (l + 1) % q == 0) {
                continue;
            }
            any_applicable = true;
            if p % 2 == 1 {
                let sp = crate::group::pow_mod(s, p - 1, q);
                let tp = crate::group::pow_mod(t, p - 1, q);
                if sp != 1 % q || tp != 1 % q {
                    return Verdict::Fail(format!(
                        "s^{}, t^{} ≡ {sp}, {tp} (mod {q}), need 1, 1",
                        p - 1,
                        p - 1
                    ));
                }
            } else {
                let sq = s % q;
                let tq = t % q;
                let one = 1 % q;
                let minus_one = (q - 1) % q;
                let lpow = crate::group::pow_mod(lambda, q - 1, q);
                let ok = if lpow == one {
                    (sq == one && tq == minus_one) || (sq == minus_one && tq == one)
                } else if lpow == minus_one {
                    (sq == one && tq == one) || (sq == minus_one && tq == minus_one)
                } else {
                    // λ ≡ ±1 (mod q) makes λ^(q-1) ≡ ±1; unreachable when
                    // the applicability test passed.
                    false
                };
                if !ok {
                    return Verdict::Fail(format!(
                        "s, t ≡ {sq}, {tq} (mod {q}) with λ^{} ≡ {lpow}",
                        q - 1
                    ));
                }
            }
        }
    }
    if any_applicable {
        Verdict::Pass
    } else {
        Verdict::NotApplicable
    }
}

/// All feasible `(s, t, λ)` with `1 ≤ s ≤ t ≤ n-1` and `λ ≥ min_lambda`,
/// in lexicographic order.
pub fn enumerate_feasible(group: &Group, min_lambda: u64) -> Vec<(u64, u64, u64)> {
    let n = group.order() as u64;
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for s in 1..n {
        for t in s..n {
            if (s * t) % (n - 1) != 0 {
                continue;
            }
            let lambda = s * t / (n - 1);
            if lambda < min_lambda {
                continue;
            }
            if check_all(group, s, t, lambda).feasible {
                out.push((s, t, lambda));
            }
        }
    }
    out
}
