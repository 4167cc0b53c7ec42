//! Finite abelian groups in invariant-factor form.
//!
//! A group is stored as its invariant factors `m_1 | m_2 | … | m_k`
//! (ascending).  Elements are indices `0..n` under the mixed-radix encoding
//! with the *last* invariant factor most significant, so the identity is `0`
//! and for cyclic groups the index is the residue itself.
//!
//! A group spec such as `"Z8xZ2"` or `"Z3xZ5"` is parsed into that canonical
//! form (coprime cyclic factors are CRT-merged), while the factor list as
//! written is retained for display: elements of non-cyclic groups print as
//! coordinate tuples in the written factor order, so `Z8xZ2` elements look
//! exactly like `(a, b)` with `a` mod 8 and `b` mod 2.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Largest group order the crate will instantiate.
const MAX_ORDER: usize = 1 << 20;
/// Orders up to this get a full addition table.
const ADD_TABLE_LIMIT: usize = 2048;
/// Default candidate budget for full automorphism enumeration.
pub const AUT_ENUM_BUDGET: u64 = 10_000_000;

#[derive(Debug)]
struct GroupData {
    /// Invariant factors, ascending, each dividing the next. Empty for the
    /// trivial group.
    invariant_factors: Vec<u64>,
    order: usize,
    /// Mixed-radix weights for the invariant coordinates.
    weights: Vec<usize>,
    /// Group spec as written (e.g. "Z3xZ5").
    display: String,
    /// Cyclic factors as written.
    display_factors: Vec<u64>,
    /// Invariant coordinates of each written factor's generator.
    display_gen_coords: Vec<Vec<u64>>,
    /// element index -> coordinates in the written factor order.
    display_coords: Vec<Vec<u64>>,
    neg_table: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

/// A finite abelian group. Cheap to clone; equality means equal invariant
/// factors (such groups share one canonical element encoding).
#[derive(Clone)]
pub struct Group(Arc<GroupData>);

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.0.invariant_factors == other.0.invariant_factors
    }
}
impl Eq for Group {}

impl PartialOrd for Group {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Group {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // order by group order first, then by invariant factors
        (self.0.order, &self.0.invariant_factors)
            .cmp(&(other.0.order, &other.0.invariant_factors))
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({})", self.0.display)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.display)
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Inverse of `a` modulo `m` (requires gcd(a, m) = 1).
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = egcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some((x.rem_euclid(m as i128)) as u64)
}

/// `base^exp mod m` (m may be up to 2^32).
pub fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    let mut result: u128 = 1;
    let mut b = (base % m) as u128;
    let mut e = exp;
    let m = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result as u64
}

impl Group {
    /// The trivial group (order 1).
    pub fn trivial() -> Group {
        Group::from_factors(&[], "Z1".to_string()).expect("trivial group")
    }

    /// Cyclic group of order `n`.
    pub fn cyclic(n: u64) -> Result<Group> {
        Group::from_factors(&[n], format!("Z{n}"))
    }

    /// Parse a spec like `Z15`, `Z8xZ2`, `z3 x z5` (case-insensitive,
    /// whitespace ignored).
    pub fn parse(spec: &str) -> Result<Group> {
        let cleaned: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty group spec".into()));
        }
        let mut factors = Vec::new();
        for part in cleaned.split(['x', 'X']) {
            let rest = part
                .strip_prefix('Z')
                .or_else(|| part.strip_prefix('z'))
                .ok_or_else(|| Error::Parse(format!("bad cyclic factor `{part}`")))?;
            let n: u64 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad cyclic factor `{part}`")))?;
            if n < 2 {
                return Err(Error::Parse(format!(
                    "cyclic factor Z{n} not allowed (order must be at least 2)"
                )));
            }
            factors.push(n);
        }
        Group::from_factors(&factors, cleaned)
    }

    /// Build a group from a list of cyclic factor orders, remembering the
    /// given display string.
    pub fn from_factors(display_factors: &[u64], display: String) -> Result<Group> {
        let mut order: usize = 1;
        for &d in display_factors {
            if d < 1 {
                return Err(Error::Parse("cyclic factor of order 0".into()));
            }
            order = order
                .checked_mul(d as usize)
                .filter(|&o| o <= MAX_ORDER)
                .ok_or_else(|| Error::Parse(format!("group order exceeds {MAX_ORDER}")))?;
        }

        // Primary decomposition: group the prime-power parts of each written
        // factor by prime, sort each prime's powers descending, and read off
        // the invariant factors.
        let mut per_prime: BTreeMap<u64, Vec<(u32, usize)>> = BTreeMap::new();
        for (j, &d) in display_factors.iter().enumerate() {
            for (p, e) in factorize(d) {
                per_prime.entry(p).or_default().push((e, j));
            }
        }
        for powers in per_prime.values_mut() {
            powers.sort_by(|a, b| b.0.cmp(&a.0));
        }
        let k = per_prime.values().map(Vec::len).max().unwrap_or(0);
        // inv_desc[i] = product of the i-th largest prime power of each prime.
        let mut inv_desc = vec![1u64; k];
        for (&p, powers) in &per_prime {
            for (i, &(e, _)) in powers.iter().enumerate() {
                inv_desc[i] *= p.pow(e);
            }
        }
        let mut invariant_factors = inv_desc;
        invariant_factors.reverse();

        let mut weights = Vec::with_capacity(invariant_factors.len());
        let mut w = 1usize;
        for &m in &invariant_factors {
            weights.push(w);
            w *= m as usize;
        }
        debug_assert_eq!(w, order);

        // Invariant coordinates of each written factor's generator: the
        // prime-power part p^e assigned to invariant factor m contributes the
        // CRT basis element of the subgroup of order p^e inside Z_m.
        let kk = invariant_factors.len();
        let mut display_gen_coords = vec![vec![0u64; kk]; display_factors.len()];
        for (p, powers) in &per_prime {
            for (i, &(e, j)) in powers.iter().enumerate() {
                let inv_idx = kk - 1 - i;
                let m = invariant_factors[inv_idx];
                let pa = p.pow(e);
                let rest = m / pa;
                let c = if rest == 1 {
                    1
                } else {
                    rest * mod_inverse(rest % pa, pa).expect("coprime CRT parts") % m
                };
                display_gen_coords[j][inv_idx] = (display_gen_coords[j][inv_idx] + c) % m;
            }
        }

        let mut data = GroupData {
            invariant_factors,
            order,
            weights,
            display,
            display_factors: display_factors.to_vec(),
            display_gen_coords,
            display_coords: Vec::new(),
            neg_table: Vec::new(),
            add_table: None,
        };

        // Negation table.
        data.neg_table = (0..order)
            .map(|i| {
                let mut c = coords_of(&data, i);
                for (ci, &m) in c.iter_mut().zip(&data.invariant_factors) {
                    *ci = (m - *ci) % m;
                }
                index_of(&data, &c) as u32
            })
            .collect();

        if order <= ADD_TABLE_LIMIT {
            let mut table = vec![0u32; order * order];
            for a in 0..order {
                let ca = coords_of(&data, a);
                for b in 0..order {
                    let cb = coords_of(&data, b);
                    let sum: Vec<u64> = ca
                        .iter()
                        .zip(&cb)
                        .zip(&data.invariant_factors)
                        .map(|((&x, &y), &m)| (x + y) % m)
                        .collect();
                    table[a * order + b] = index_of(&data, &sum) as u32;
                }
            }
            data.add_table = Some(table);
        }

        // element -> written-factor coordinates, built by enumerating all
        // written tuples and pushing them through the generator map.
        let r = data.display_factors.len();
        let mut display_coords = vec![Vec::new(); order];
        let mut seen = vec![false; order];
        let mut tuple = vec![0u64; r];
        loop {
            let mut coords = vec![0u64; kk];
            for (j, &t) in tuple.iter().enumerate() {
                for (i, c) in coords.iter_mut().enumerate() {
                    let m = data.invariant_factors[i];
                    *c = (*c + data.display_gen_coords[j][i] % m * (t % m)) % m;
                }
            }
            let idx = index_of(&data, &coords);
            assert!(!seen[idx], "written-factor map is not a bijection");
            seen[idx] = true;
            display_coords[idx] = tuple.clone();
            // next mixed-radix tuple
            let mut j = 0;
            loop {
                if j == r {
                    break;
                }
                tuple[j] += 1;
                if tuple[j] < data.display_factors[j] {
                    break;
                }
                tuple[j] = 0;
                j += 1;
            }
            if j == r {
                break;
            }
        }
        data.display_coords = display_coords;

        Ok(Group(Arc::new(data)))
    }

    /// Every abelian group of order `n`, one per isomorphism class, in
    /// canonical (invariant-factor, descending display) form.
    pub fn all_of_order(n: u64) -> Vec<Group> {
        fn partitions(e: u32) -> Vec<Vec<u32>> {
            fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
                if rest == 0 {
                    out.push(cur.clone());
                    return;
                }
                let mut part = rest.min(max);
                while part >= 1 {
                    cur.push(part);
                    rec(rest - part, part, cur, out);
                    cur.pop();
                    part -= 1;
                }
            }
            let mut out = Vec::new();
            rec(e, e, &mut Vec::new(), &mut out);
            out
        }

        if n == 1 {
            return vec![Group::trivial()];
        }
        let fac = factorize(n);
        let choices: Vec<Vec<Vec<u32>>> = fac.iter().map(|&(_, e)| partitions(e)).collect();
        let mut groups = Vec::new();
        let mut pick = vec![0usize; fac.len()];
        loop {
            let k = pick
                .iter()
                .enumerate()
                .map(|(i, &c)| choices[i][c].len())
                .max()
                .unwrap();
            let mut inv_desc = vec![1u64; k];
            for (i, &(p, _)) in fac.iter().enumerate() {
                for (pos, &e) in choices[i][pick[i]].iter().enumerate() {
                    inv_desc[pos] *= p.pow(e);
                }
            }
            let display = inv_desc
                .iter()
                .map(|m| format!("Z{m}"))
                .collect::<Vec<_>>()
                .join("x");
            groups.push(Group::from_factors(&inv_desc, display).expect("valid order"));
            let mut i = 0;
            loop {
                if i == pick.len() {
                    break;
                }
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
            if i == pick.len() {
                break;
            }
        }
        groups
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.0.invariant_factors
    }

    pub fn display_factors(&self) -> &[u64] {
        &self.0.display_factors
    }

    pub fn spec(&self) -> &str {
        &self.0.display
    }

    /// Canonical spec string: invariant factors, largest first.
    pub fn canonical_spec(&self) -> String {
        if self.0.invariant_factors.is_empty() {
            return "Z1".into();
        }
        self.0
            .invariant_factors
            .iter()
            .rev()
            .map(|m| format!("Z{m}"))
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn is_cyclic(&self) -> bool {
        self.0.invariant_factors.len() <= 1
    }

    /// Group rank: number of invariant factors.
    pub fn rank(&self) -> usize {
        self.0.invariant_factors.len()
    }

    pub fn zero(&self) -> usize {
        0
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        if let Some(t) = &self.0.add_table {
            return t[a * self.0.order + b] as usize;
        }
        let ca = coords_of(&self.0, a);
        let cb = coords_of(&self.0, b);
        let sum: Vec<u64> = ca
            .iter()
            .zip(&cb)
            .zip(&self.0.invariant_factors)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect();
        index_of(&self.0, &sum)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.0.neg_table[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Scalar multiple `t · a`.
    pub fn mul_scalar(&self, a: usize, t: u64) -> usize {
        let c = coords_of(&self.0, a);
        let scaled: Vec<u64> = c
            .iter()
            .zip(&self.0.invariant_factors)
            .map(|(&x, &m)| x % m * (t % m) % m)
            .collect();
        index_of(&self.0, &scaled)
    }

    /// Order of element `a`.
    pub fn elem_order(&self, a: usize) -> u64 {
        let c = coords_of(&self.0, a);
        let mut ord = 1u64;
        for (&x, &m) in c.iter().zip(&self.0.invariant_factors) {
            let o = m / gcd(x, m);
            ord = ord / gcd(ord, o) * o;
        }
        ord
    }

    /// Invariant-factor coordinates of element `a`.
    pub fn coords(&self, a: usize) -> Vec<u64> {
        coords_of(&self.0, a)
    }

    /// Element with the given invariant-factor coordinates.
    pub fn index(&self, coords: &[u64]) -> usize {
        assert_eq!(coords.len(), self.0.invariant_factors.len());
        let reduced: Vec<u64> = coords
            .iter()
            .zip(&self.0.invariant_factors)
            .map(|(&c, &m)| c % m)
            .collect();
        index_of(&self.0, &reduced)
    }

    /// Element from coordinates in the written factor order.
    pub fn elem_from_tuple(&self, tuple: &[u64]) -> Result<usize> {
        let r = self.0.display_factors.len();
        if tuple.len() != r {
            return Err(Error::Parse(format!(
                "element tuple has {} coordinates, group {} has {r}",
                tuple.len(),
                self.0.display
            )));
        }
        let kk = self.0.invariant_factors.len();
        let mut coords = vec![0u64; kk];
        for (j, &t) in tuple.iter().enumerate() {
            for (i, c) in coords.iter_mut().enumerate() {
                let m = self.0.invariant_factors[i];
                *c = (*c + self.0.display_gen_coords[j][i] % m * (t % m)) % m;
            }
        }
        Ok(index_of(&self.0, &coords))
    }

    /// Coordinates of element `a` in the written factor order.
    pub fn elem_tuple(&self, a: usize) -> &[u64] {
        &self.0.display_coords[a]
    }

    /// Render an element: bare integer for cyclic groups, `(a,b,…)` tuple in
    /// the written factor order otherwise.
    pub fn format_elem(&self, a: usize) -> String {
        if self.is_cyclic() {
            return a.to_string();
        }
        let t = self.elem_tuple(a);
        format!(
            "({})",
            t.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        )
    }

    /// Parse one element: a bare integer (cyclic groups) or a tuple
    /// `(a,b,…)` in the written factor order.
    pub fn parse_elem(&self, text: &str) -> Result<usize> {
        let text = text.trim();
        if let Some(inner) = text.strip_prefix('(') {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unclosed tuple `{text}`")))?;
            let mut tuple = Vec::new();
            for part in inner.split(',') {
                let v: i64 = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coordinate `{part}`")))?;
                tuple.push(v);
            }
            let reduced: Vec<u64> = tuple
                .iter()
                .zip(self.0.display_factors.iter())
                .map(|(&v, &m)| v.rem_euclid(m as i64) as u64)
                .collect();
            if tuple.len() != self.0.display_factors.len() {
                return Err(Error::Parse(format!(
                    "tuple `{text}` has wrong arity for {}",
                    self.0.display
                )));
            }
            self.elem_from_tuple(&reduced)
        } else {
            let v: i64 = text
                .parse()
                .map_err(|_| Error::Parse(format!("bad element `{text}`")))?;
            if !self.is_cyclic() {
                return Err(Error::Parse(format!(
                    "element `{text}` must be a coordinate tuple for group {}",
                    self.0.display
                )));
            }
            Ok(v.rem_euclid(self.0.order as i64) as usize)
        }
    }

    /// Parse a comma-separated element list such as `1,4,11,14` or
    /// `(0,0),(0,1),(1,0)`.
    pub fn parse_elems(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        let mut out = Vec::new();
        if text.is_empty() {
            return Ok(out);
        }
        if text.starts_with('(') {
            let mut depth = 0usize;
            let mut start = 0usize;
            for (i, ch) in text.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => {
                        depth = depth
                            .checked_sub(1)
                            .ok_or_else(|| Error::Parse("unbalanced parentheses".into()))?
                    }
                    ',' if depth == 0 => {
                        out.push(self.parse_elem(&text[start..i])?);
                        start = i + 1;
                    }
                    _ => {}
                }
            }
            out.push(self.parse_elem(&text[start..])?);
        } else {
            for part in text.split(',') {
                out.push(self.parse_elem(part)?);
            }
        }
        Ok(out)
    }

    /// Direct product `self × other`, normalized to invariant-factor form.
    pub fn product(a: &Group, b: &Group) -> Result<DirectProduct> {
        let mut factors = a.0.display_factors.clone();
        factors.extend_from_slice(&b.0.display_factors);
        let display = if a.0.display_factors.is_empty() {
            b.0.display.clone()
        } else if b.0.display_factors.is_empty() {
            a.0.display.clone()
        } else {
            format!("{}x{}", a.0.display, b.0.display)
        };
        let group = Group::from_factors(&factors, display)?;
        Ok(DirectProduct {
            left: a.clone(),
            right: b.clone(),
            group,
        })
    }
}

/// A direct product with its embedding map.
pub struct DirectProduct {
    pub left: Group,
    pub right: Group,
    pub group: Group,
}

impl DirectProduct {
    /// Index of the pair `(a, b)` in the product group.
    pub fn embed(&self, a: usize, b: usize) -> usize {
        let mut tuple = self.left.elem_tuple(a).to_vec();
        tuple.extend_from_slice(self.right.elem_tuple(b));
        self.group.elem_from_tuple(&tuple).expect("product tuple")
    }
}

#[inline]
fn coords_of(data: &GroupData, mut a: usize) -> Vec<u64> {
    let mut c = vec![0u64; data.invariant_factors.len()];
    for (ci, &m) in c.iter_mut().zip(&data.invariant_factors) {
        *ci = (a % m as usize) as u64;
        a /= m as usize;
    }
    c
}

#[inline]
fn index_of(data: &GroupData, coords: &[u64]) -> usize {
    coords
        .iter()
        .zip(&data.weights)
        .map(|(&c, &w)| c as usize * w)
        .sum()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        if a == 0 {
            1
        } else {
            a
        }
    } else {
        gcd(b, a % b)
    }
}

/// A subset of a group: sorted, duplicate-free element indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subset {
    group: Group,
    elems: Vec<usize>,
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Subset {
    pub fn new(group: &Group, mut elems: Vec<usize>) -> Result<Subset> {
        elems.sort_unstable();
        for &e in &elems {
            if e >= group.order() {
                return Err(Error::InvalidSubset(format!(
                    "element index {e} out of range for {}",
                    group
                )));
            }
        }
        if elems.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubset("duplicate element".into()));
        }
        Ok(Subset {
            group: group.clone(),
            elems,
        })
    }

    pub fn parse(group: &Group, text: &str) -> Result<Subset> {
        Subset::new(group, group.parse_elems(text)?)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elems.binary_search(&e).is_ok()
    }

    /// `{-a : a ∈ A}`.
    pub fn negate(&self) -> Subset {
        let g = &self.group;
        let mut elems: Vec<usize> = self.elems.iter().map(|&e| g.neg(e)).collect();
        elems.sort_unstable();
        Subset {
            group: g.clone(),
            elems,
        }
    }

    /// `A + g`.
    pub fn translate(&self, t: usize) -> Subset {
        let g = &self.group;
        let mut elems: Vec<usize> = self.elems.iter().map(|&e| g.add(e, t)).collect();
        elems.sort_unstable();
        Subset {
            group: g.clone(),
            elems,
        }
    }

    /// `G ∖ A`.
    pub fn complement(&self) -> Subset {
        let mut elems = Vec::with_capacity(self.group.order() - self.elems.len());
        let mut it = self.elems.iter().peekable();
        for e in 0..self.group.order() {
            if it.peek() == Some(&&e) {
                it.next();
            } else {
                elems.push(e);
            }
        }
        Subset {
            group: self.group.clone(),
            elems,
        }
    }

    /// Symmetric means `A = -A`.
    pub fn is_symmetric(&self) -> bool {
        self.elems.iter().all(|&e| self.contains(self.group.neg(e)))
    }

    /// Image under a permutation of the group.
    pub fn apply(&self, t: &Transformation) -> Subset {
        let mut elems: Vec<usize> = self.elems.iter().map(|&e| t.perm[e] as usize).collect();
        elems.sort_unstable();
        Subset {
            group: self.group.clone(),
            elems,
        }
    }

    /// Lexicographically least translate containing the identity.
    pub fn translation_normalize(&self) -> Subset {
        let g = &self.group;
        let mut best: Option<Vec<usize>> = None;
        let mut buf = Vec::with_capacity(self.elems.len());
        for &a in &self.elems {
            let na = g.neg(a);
            buf.clear();
            buf.extend(self.elems.iter().map(|&e| g.add(e, na)));
            buf.sort_unstable();
            if best.as_ref().map_or(true, |b| buf < *b) {
                best = Some(buf.clone());
            }
        }
        Subset {
            group: g.clone(),
            elems: best.unwrap_or_default(),
        }
    }

    pub fn render(&self) -> String {
        format!(
            "{{{}}}",
            self.elems
                .iter()
                .map(|&e| self.group.format_elem(e))
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

/// A permutation of a group arising from an automorphism.
#[derive(Clone, Debug)]
pub struct Transformation {
    pub kind: TransformKind,
    pub perm: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransformKind {
    Negation,
    /// Multiply invariant coordinate `coord` by the unit `unit`.
    UnitMult { coord: usize, unit: u64 },
    /// Swap equal invariant coordinates `i` and `j`.
    Swap { i: usize, j: usize },
    /// An automorphism found by exhaustive enumeration.
    General,
}

impl Transformation {
    fn from_coord_map(group: &Group, kind: TransformKind, f: impl Fn(&[u64]) -> Vec<u64>) -> Self {
        let perm = (0..group.order())
            .map(|e| group.index(&f(&group.coords(e))) as u32)
            .collect();
        Transformation { kind, perm }
    }

    /// Check that the permutation really is an automorphism.
    pub fn verify(&self, group: &Group) -> bool {
        let n = group.order();
        if self.perm.len() != n || self.perm[0] != 0 {
            return false;
        }
        let mut seen = vec![false; n];
        for &p in &self.perm {
            if seen[p as usize] {
                return false;
            }
            seen[p as usize] = true;
        }
        for a in 0..n {
            for b in a..n {
                if self.perm[group.add(a, b)]
                    != group.add(self.perm[a] as usize, self.perm[b] as usize) as u32
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Automorphisms of `group` for canonical-form pruning.
///
/// When the full automorphism group can be enumerated within `budget`
/// candidate generator images, all non-identity automorphisms are returned.
/// Otherwise a generating set is returned: negation, multiplication of each
/// invariant coordinate by each unit of its modulus, and swaps of equal
/// invariant factors.
pub fn automorphism_generators(group: &Group, budget: u64) -> Vec<Transformation> {
    if let Some(all) = enumerate_automorphisms(group, budget) {
        return all;
    }
    let mut out = Vec::new();
    let inv = group.invariant_factors().to_vec();
    let k = inv.len();
    if inv.iter().any(|&m| m > 2) {
        out.push(Transformation::from_coord_map(
            group,
            TransformKind::Negation,
            |c| {
                c.iter()
                    .zip(&inv)
                    .map(|(&x, &m)| (m - x) % m)
                    .collect()
            },
        ));
    }
    for coord in 0..k {
        let m = inv[coord];
        for unit in 2..m {
            if gcd(unit, m) == 1 {
                let inv2 = inv.clone();
                out.push(Transformation::from_coord_map(
                    group,
                    TransformKind::UnitMult { coord, unit },
                    move |c| {
                        let mut c = c.to_vec();
                        c[coord] = c[coord] * unit % inv2[coord];
                        c
                    },
                ));
            }
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            if inv[i] == inv[j] {
                out.push(Transformation::from_coord_map(
                    group,
                    TransformKind::Swap { i, j },
                    move |c| {
                        let mut c = c.to_vec();
                        c.swap(i, j);
                        c
                    },
                ));
            }
        }
    }
    debug_assert!(out.iter().all(|t| t.verify(group)));
    out
}

/// Enumerate the whole automorphism group if the candidate count fits the
/// budget: choose an image of each invariant-coordinate generator whose order
/// divides that coordinate's modulus, then keep the bijective maps.
fn enumerate_automorphisms(group: &Group, budget: u64) -> Option<Vec<Transformation>> {
    let n = group.order();
    if n <= 1 {
        return Some(Vec::new());
    }
    let inv = group.invariant_factors();
    let k = inv.len();
    // Candidate images per coordinate: elements of order dividing m_i.
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(k);
    let mut estimate: u64 = 1;
    for &m in inv {
        let c: Vec<usize> = (0..n).filter(|&h| m % group.elem_order(h) == 0).collect();
        estimate = estimate.saturating_mul(c.len() as u64);
        if estimate > budget {
            return None;
        }
        candidates.push(c);
    }

    let mut out = Vec::new();
    let mut images = vec![0usize; k];
    let mut perm = vec![0u32; n];
    let mut seen = vec![0u32; n];
    let mut stamp = 0u32;
    fn rec(
        group: &Group,
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        depth: usize,
        out: &mut Vec<Transformation>,
        perm: &mut Vec<u32>,
        seen: &mut Vec<u32>,
        stamp: &mut u32,
    ) {
        if depth == candidates.len() {
            // Build the induced map and keep it if bijective.
            let n = group.order();
            *stamp += 1;
            let inv = group.invariant_factors();
            // perm[e] = sum of c_i * images[i]
            for e in 0..n {
                let c = group.coords(e);
                let mut acc = 0usize;
                for (i, &ci) in c.iter().enumerate() {
                    if ci != 0 {
                        acc = group.add(acc, group.mul_scalar(images[i], ci));
                    }
                }
                if seen[acc] == *stamp {
                    return; // not injective
                }
                seen[acc] = *stamp;
                perm[e] = acc as u32;
            }
            let _ = inv;
            if perm.iter().enumerate().any(|(e, &p)| e as u32 != p) {
                out.push(Transformation {
                    kind: TransformKind::General,
                    perm: perm.clone(),
                });
            }
            return;
        }
        for &h in &candidates[depth] {
            images[depth] = h;
            rec(group, candidates, images, depth + 1, out, perm, seen, stamp);
        }
    }
    rec(
        group,
        &candidates,
        &mut images,
        0,
        &mut out,
        &mut perm,
        &mut seen,
        &mut stamp,
    );
    Some(out)
}

/// Reject `s` (sorted element indices) when some transform followed by
/// translation normalization yields a lexicographically smaller set.  The
/// lexicographically least member of each equivalence class is never
/// rejected, so exhaustive enumeration with this pruning stays exhaustive up
/// to equivalence.
pub fn canonical_reject(group: &Group, s: &[usize], transforms: &[Transformation]) -> bool {
    let mut mapped = s.to_vec();
    let mut buf = vec![0usize; s.len()];
    if normalize_less(group, &mapped, s, &mut buf) {
        return true;
    }
    for t in transforms {
        for (m, &orig) in mapped.iter_mut().zip(s) {
            *m = t.perm[orig] as usize;
        }
        mapped.sort_unstable();
        if normalize_less(group, &mapped, s, &mut buf) {
            return true;
        }
    }
    false
}

/// Is some translate of `a` containing the identity lexicographically
/// smaller than `base`?
fn normalize_less(group: &Group, a: &[usize], base: &[usize], buf: &mut [usize]) -> bool {
    for &anchor in a {
        let na = group.neg(anchor);
        for (b, &e) in buf.iter_mut().zip(a) {
            *b = group.add(e, na);
        }
        buf.sort_unstable();
        if &*buf < base {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_normalize() {
        let g = Group::parse("Z3xZ5").unwrap();
        assert_eq!(g.invariant_factors(), &[15]);
        assert_eq!(g.order(), 15);
        assert!(g.is_cyclic());
        let h = Group::parse("Z15").unwrap();
        assert_eq!(g, h);

        let g = Group::parse("Z8xZ2").unwrap();
        assert_eq!(g.invariant_factors(), &[2, 8]);
        assert!(!g.is_cyclic());

        let g = Group::parse("z2 X z12").unwrap();
        assert_eq!(g.invariant_factors(), &[2, 12]);

        let g = Group::parse("Z6xZ4").unwrap();
        assert_eq!(g.invariant_factors(), &[2, 12]);

        assert!(Group::parse("Z1").is_err());
        assert!(Group::parse("Q8").is_err());
        assert!(Group::parse("").is_err());
    }

    #[test]
    fn arithmetic_round_trip() {
        for spec in ["Z12", "Z8xZ2", "Z3xZ5", "Z2xZ2xZ2", "Z6xZ6"] {
            let g = Group::parse(spec).unwrap();
            let n = g.order();
            for a in 0..n {
                assert_eq!(g.add(a, g.neg(a)), 0);
                assert_eq!(g.add(a, 0), a);
                let c = g.coords(a);
                assert_eq!(g.index(&c), a);
                let t = g.elem_tuple(a).to_vec();
                assert_eq!(g.elem_from_tuple(&t).unwrap(), a);
                let printed = g.format_elem(a);
                assert_eq!(g.parse_elem(&printed).unwrap(), a);
            }
            // associativity + commutativity spot check
            for a in 0..n.min(12) {
                for b in 0..n.min(12) {
                    assert_eq!(g.add(a, b), g.add(b, a));
                    for c in 0..n.min(8) {
                        assert_eq!(g.add(g.add(a, b), c), g.add(a, g.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn display_tuples_match_written_order() {
        let g = Group::parse("Z8xZ2").unwrap();
        let e = g.parse_elem("(3,1)").unwrap();
        assert_eq!(g.elem_tuple(e), &[3, 1]);
        let s = g.parse_elems("(0,0),(0,1),(1,0),(3,0),(4,0)").unwrap();
        assert_eq!(s.len(), 5);
        // CRT-merged display coordinates
        let g = Group::parse("Z3xZ5").unwrap();
        let e = g.elem_from_tuple(&[1, 1]).unwrap();
        assert_eq!(e, 1); // CRT: (1 mod 3, 1 mod 5) = 1 mod 15
        let e = g.elem_from_tuple(&[2, 0]).unwrap();
        assert_eq!(e, 5); // 5 ≡ 2 mod 3, 0 mod 5
    }

    #[test]
    fn all_of_order_counts() {
        assert_eq!(Group::all_of_order(16).len(), 5);
        assert_eq!(Group::all_of_order(36).len(), 4);
        assert_eq!(Group::all_of_order(30).len(), 1);
        assert_eq!(Group::all_of_order(1).len(), 1);
    }

    #[test]
    fn elem_orders() {
        let g = Group::parse("Z12").unwrap();
        assert_eq!(g.elem_order(0), 1);
        assert_eq!(g.elem_order(1), 12);
        assert_eq!(g.elem_order(6), 2);
        assert_eq!(g.elem_order(8), 3);
    }

    #[test]
    fn automorphisms_verify() {
        for spec in ["Z12", "Z8xZ2", "Z2xZ2xZ2", "Z9xZ3"] {
            let g = Group::parse(spec).unwrap();
            let auts = automorphism_generators(&g, AUT_ENUM_BUDGET);
            assert!(!auts.is_empty());
            for t in &auts {
                assert!(t.verify(&g), "{spec}: invalid automorphism");
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        // |Aut(Z_n)| = φ(n); |Aut((Z2)^3)| = |GL(3,2)| = 168.
        let g = Group::parse("Z15").unwrap();
        let auts = enumerate_automorphisms(&g, AUT_ENUM_BUDGET).unwrap();
        assert_eq!(auts.len() + 1, 8); // φ(15) = 8 including identity
        let g = Group::parse("Z2xZ2xZ2").unwrap();
        let auts = enumerate_automorphisms(&g, AUT_ENUM_BUDGET).unwrap();
        assert_eq!(auts.len() + 1, 168);
    }

    #[test]
    fn subset_basics() {
        let g = Group::parse("Z15").unwrap();
        let s = Subset::parse(&g, "1,4,11,14").unwrap();
        assert!(s.is_symmetric());
        assert_eq!(s.negate(), s);
        let t = Subset::parse(&g, "0,2,6,7,8,9,13").unwrap();
        assert!(t.is_symmetric());
        assert!(!Subset::parse(&g, "0,1").unwrap().is_symmetric());
        assert_eq!(t.complement().len(), 8);
        assert_eq!(s.translate(1).elems(), &[0, 2, 5, 12]);
    }

    #[test]
    fn translation_normalize_is_least_translate() {
        let g = Group::parse("Z15").unwrap();
        let s = Subset::parse(&g, "1,4,11,14").unwrap();
        assert_eq!(s.translation_normalize().elems(), &[0, 2, 5, 12]);
    }

    #[test]
    fn canonical_reject_never_kills_class_minimum() {
        // Brute force: over small groups and all subsets of size <= 3, the
        // lexicographically least member of each translate-equivalence class
        // must never be rejected.
        for n in 2..=12u64 {
            for g in Group::all_of_order(n) {
                let transforms = automorphism_generators(&g, 100_000);
                let n = g.order();
                let mut sets: Vec<Vec<usize>> = Vec::new();
                for a in 0..n {
                    sets.push(vec![a]);
                    for b in a + 1..n {
                        sets.push(vec![a, b]);
                        for c in b + 1..n {
                            sets.push(vec![a, b, c]);
                        }
                    }
                }
                for s in &sets {
                    // class minimum over translations and transforms
                    let sub = Subset::new(&g, s.clone()).unwrap();
                    let mut class_min = sub.translation_normalize().elems().to_vec();
                    for t in &transforms {
                        let m = sub.apply(t).translation_normalize();
                        if m.elems() < class_min.as_slice() {
                            class_min = m.elems().to_vec();
                        }
                    }
                    if *s == class_min {
                        assert!(
                            !canonical_reject(&g, s, &transforms),
                            "{}: rejected class minimum {s:?}",
                            g
                        );
                    }
                }
            }
        }
    }
}
