//! Exhaustive search for near-factorizations with a given |S|.
//!
//! Candidates are enumerated in lexicographic order.  In the general mode
//! every candidate contains the identity (any solution can be translated to
//! one that does) and is pruned by the canonical-form test before the mate
//! computation.  In the symmetric-only mode candidates are built from
//! inverse-closed element pairs and self-inverse elements, with no
//! canonical pruning (translation does not preserve symmetry, so the
//! pruning argument is unsound there).
//!
//! Work is split into partitions (by the second chosen element, or by the
//! first chosen pair) that are processed in parallel and merged
//! deterministically; finished partitions can be checkpointed to disk and
//! skipped on resume.

use std::collections::HashSet;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::group::{automorphism_generators, canonical_reject, Group, Subset, Transformation, AUT_ENUM_BUDGET};
use crate::mate::mate;
use crate::ring::NearFactorization;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Size of the candidate set S.
    pub size: usize,
    /// Keep only mates with this λ (None: keep all).
    pub lambda: Option<u64>,
    /// Enumerate symmetric candidates only.
    pub symmetric_only: bool,
    /// Worker threads (0: rayon default).
    pub workers: usize,
    /// Stop after examining this many candidates.
    pub budget: Option<u64>,
    /// Checkpoint file, written after each finished partition.
    pub checkpoint: Option<PathBuf>,
}

impl SearchConfig {
    pub fn new(size: usize) -> SearchConfig {
        SearchConfig {
            size,
            lambda: None,
            symmetric_only: false,
            workers: 0,
            budget: None,
            checkpoint: None,
        }
    }
}

#[derive(Debug)]
pub struct SearchOutcome {
    /// Solutions, deduplicated up to automorphism, translation and (for
    /// |S| = |T|) duality; sorted by S.
    pub found: Vec<NearFactorization>,
    /// True when every candidate was examined (budget not exhausted).
    pub exhausted: bool,
    /// Candidates examined.
    pub candidates: u64,
    pub elapsed: Duration,
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    group: String,
    size: usize,
    symmetric_only: bool,
    lambda: Option<u64>,
    done: Vec<usize>,
    found: Vec<(Vec<usize>, Vec<usize>)>,
}

/// One unit of parallel work.
enum Partition {
    /// General mode: S = {0, second, …} with the rest drawn from
    /// elements > second.
    Second(usize),
    /// Symmetric mode: index of the first item (self-inverse element or
    /// inverse pair) in the item list.
    FirstItem(usize),
    /// Degenerate single-candidate partitions (|S| = 1, …).
    Whole,
}

/// Inverse-closed building blocks for symmetric candidates.
fn symmetric_items(group: &Group) -> Vec<Vec<usize>> {
    let n = group.order();
    let mut items = Vec::new();
    for x in 0..n {
        let nx = group.neg(x);
        if nx == x {
            items.push(vec![x]);
        } else if x < nx {
            items.push(vec![x, nx]);
        }
    }
    items
}

struct Shared<'a> {
    group: &'a Group,
    config: &'a SearchConfig,
    transforms: &'a [Transformation],
    candidates: AtomicU64,
    stopped: AtomicBool,
}

impl Shared<'_> {
    /// Count one candidate; returns false when the budget is exhausted.
    fn tick(&self) -> bool {
        let seen = self.candidates.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(b) = self.config.budget {
            if seen > b {
                self.stopped.store(true, Ordering::Relaxed);
                return false;
            }
        }
        true
    }

    fn consider(&self, elems: &[usize], prune: bool, out: &mut Vec<NearFactorization>) {
        if !self.tick() {
            return;
        }
        if prune && canonical_reject(self.group, elems, self.transforms) {
            return;
        }
        let Ok(subset) = Subset::new(self.group, elems.to_vec()) else {
            return;
        };
        let Ok(outcome) = mate(&subset) else {
            return;
        };
        if let Some(nf) = outcome.mate {
            if self.config.lambda.is_none_or(|l| nf.lambda() == l) {
                out.push(nf);
            }
        }
    }
}

/// Lexicographic k-combinations of `pool`, prefix preloaded into `buf`.
fn combos(
    pool: &[usize],
    k: usize,
    start: usize,
    buf: &mut Vec<usize>,
    shared: &Shared,
    prune: bool,
    out: &mut Vec<NearFactorization>,
) {
    if shared.stopped.load(Ordering::Relaxed) {
        return;
    }
    if k == 0 {
        shared.consider(buf, prune, out);
        return;
    }
    for i in start..=pool.len().saturating_sub(k) {
        buf.push(pool[i]);
        combos(pool, k - 1, i + 1, buf, shared, prune, out);
        buf.pop();
    }
}

/// Symmetric candidates: choose items (sizes 1 or 2) totalling `remaining`,
/// starting at item `start`.
fn sym_combos(
    items: &[Vec<usize>],
    remaining: usize,
    start: usize,
    buf: &mut Vec<usize>,
    shared: &Shared,
    out: &mut Vec<NearFactorization>,
) {
    if shared.stopped.load(Ordering::Relaxed) {
        return;
    }
    if remaining == 0 {
        let mut elems = buf.clone();
        elems.sort_unstable();
        shared.consider(&elems, false, out);
        return;
    }
    for i in start..items.len() {
        let item = &items[i];
        if item.len() > remaining {
            continue;
        }
        buf.extend_from_slice(item);
        sym_combos(items, remaining - item.len(), i + 1, buf, shared, out);
        buf.truncate(buf.len() - item.len());
    }
}

fn run_partition(shared: &Shared, part: &Partition) -> Vec<NearFactorization> {
    let n = shared.group.order();
    let size = shared.config.size;
    let mut out = Vec::new();
    match *part {
        Partition::Whole => {
            if !shared.config.symmetric_only && size == 1 {
                shared.consider(&[0], false, &mut out);
            }
        }
        Partition::Second(e2) => {
            let pool: Vec<usize> = (e2 + 1..n).collect();
            let mut buf = vec![0, e2];
            combos(&pool, size - 2, 0, &mut buf, shared, true, &mut out);
        }
        Partition::FirstItem(i) => {
            let items = symmetric_items(shared.group);
            let first = &items[i];
            if first.len() <= size {
                let mut buf = first.clone();
                sym_combos(&items, size - first.len(), i + 1, &mut buf, shared, &mut out);
            }
        }
    }
    out
}

/// Canonical key for deduplication: the lexicographically smallest image of
/// S (and, when |S| = |T|, of T^(-1)) under the available transformations
/// followed by translation normalization.
fn canonical_key(nf: &NearFactorization, transforms: &[Transformation]) -> Vec<usize> {
    let mut sides = vec![nf.s().clone()];
    if nf.s().len() == nf.t().len() {
        sides.push(nf.t().negate());
    }
    let mut best: Option<Vec<usize>> = None;
    for side in &sides {
        let mut consider = |set: Subset| {
            let e = set.translation_normalize().elems().to_vec();
            if best.as_ref().is_none_or(|b| e < *b) {
                best = Some(e);
            }
        };
        consider(side.clone());
        for t in transforms {
            consider(side.apply(t));
        }
    }
    best.expect("non-empty sides")
}

/// Exhaustive search for near-factorizations with |S| = `config.size`.
pub fn search(group: &Group, config: &SearchConfig) -> Result<SearchOutcome> {
    let n = group.order();
    if config.size == 0 || config.size >= n {
        return Err(Error::Usage(format!(
            "search size must lie in 1..{n} (got {})",
            config.size
        )));
    }
    let start = Instant::now();
    let transforms = automorphism_generators(group, AUT_ENUM_BUDGET);

    let partitions: Vec<Partition> = if config.symmetric_only {
        (0..symmetric_items(group).len())
            .map(Partition::FirstItem)
            .collect()
    } else if config.size == 1 {
        vec![Partition::Whole]
    } else {
        (1..=n - config.size + 1).map(Partition::Second).collect()
    };

    // Resume from a checkpoint when one matches this search.
    let mut done: HashSet<usize> = HashSet::new();
    let mut found: Vec<NearFactorization> = Vec::new();
    if let Some(path) = &config.checkpoint {
        if let Ok(text) = std::fs::read_to_string(path) {
            let cp: Checkpoint = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("bad checkpoint file: {e}")))?;
            if cp.group == group.spec()
                && cp.size == config.size
                && cp.symmetric_only == config.symmetric_only
                && cp.lambda == config.lambda
            {
                done = cp.done.into_iter().collect();
                for (s, t) in cp.found {
                    found.push(NearFactorization::new(
                        Subset::new(group, s)?,
                        Subset::new(group, t)?,
                    )?);
                }
            }
        }
    }

    let shared = Shared {
        group,
        config,
        transforms: &transforms,
        candidates: AtomicU64::new(0),
        stopped: AtomicBool::new(false),
    };
    let progress: Mutex<(HashSet<usize>, Vec<NearFactorization>)> =
        Mutex::new((done.clone(), found));

    let body = || {
        partitions
            .par_iter()
            .enumerate()
            .filter(|(i, _)| !done.contains(i))
            .for_each(|(i, part)| {
                if shared.stopped.load(Ordering::Relaxed) {
                    return;
                }
                let got = run_partition(&shared, part);
                let mut guard = progress.lock().unwrap();
                guard.1.extend(got);
                if !shared.stopped.load(Ordering::Relaxed) {
                    guard.0.insert(i);
                    if let Some(path) = &config.checkpoint {
                        let cp = Checkpoint {
                            group: group.spec().to_string(),
                            size: config.size,
                            symmetric_only: config.symmetric_only,
                            lambda: config.lambda,
                            done: guard.0.iter().copied().collect(),
                            found: guard
                                .1
                                .iter()
                                .map(|nf| {
                                    (nf.s().elems().to_vec(), nf.t().elems().to_vec())
                                })
                                .collect(),
                        };
                        if let Ok(text) = serde_json::to_string(&cp) {
                            let _ = std::fs::write(path, text);
                        }
                    }
                }
            });
    };
    if config.workers > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::Usage(format!("cannot build thread pool: {e}")))?;
        pool.install(body);
    } else {
        body();
    }

    let (_, mut all) = progress.into_inner().unwrap();
    // Deduplicate up to automorphism + translation (+ duality for s = t)
    // and sort for a deterministic result order.
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    all.sort_by(|a, b| a.s().elems().cmp(b.s().elems()));
    let mut unique = Vec::new();
    for nf in all {
        if seen.insert(canonical_key(&nf, &transforms)) {
            unique.push(nf);
        }
    }
    Ok(SearchOutcome {
        found: unique,
        exhausted: !shared.stopped.load(Ordering::Relaxed),
        candidates: shared.candidates.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
    })
}

/// Certify that no near-factorization with parameters `(s, t, λ)` exists in
/// `group` (restricted to symmetric ones when `symmetric_only`).  By
/// duality it suffices to search |S| = min(s, t).  Returns an error if the
/// parameters are arithmetically inconsistent; `Ok(true)` means certified
/// nonexistence by exhausted search.
pub fn certify_nonexistence(
    group: &Group,
    s: u64,
    t: u64,
    lambda: u64,
    symmetric_only: bool,
    workers: usize,
) -> Result<bool> {
    let n = group.order() as u64;
    if s * t != lambda * (n - 1) {
        return Err(Error::Usage(format!(
            "inconsistent parameters: {s}·{t} ≠ {lambda}·({n}-1)"
        )));
    }
    let mut config = SearchConfig::new(s.min(t) as usize);
    config.lambda = Some(lambda);
    config.symmetric_only = symmetric_only;
    config.workers = workers;
    let outcome = search(group, &config)?;
    assert!(outcome.exhausted, "unbudgeted search must exhaust");
    Ok(outcome.found.is_empty())
}
