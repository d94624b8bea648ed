//! Dyck paths and the inequalities they impose.
//!
//! A path starts at a simple root, each step advances either the row or the
//! column (to the next letter of `J`), and it ends at a simple root -- in
//! family C alternatively at a root `a[j,~j]`.  Every path contributes one
//! linear inequality on multi-exponents: the sum of the exponents along the
//! path is bounded by a partial sum `m_i + ... + m_high` of the weight,
//! where `high` is the final column for a plain end and `n` for a barred
//! end.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::rootsys::{ColumnIndex, Family, PositiveRoot, RootSystem};
use crate::Error;

/// A Dyck path: a non-empty root sequence obeying the recursion rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyckPath {
    pub roots: Vec<PositiveRoot>,
}

impl DyckPath {
    pub fn tokens(&self) -> String {
        self.roots.iter().map(|r| r.token()).collect::<Vec<_>>().join(" ")
    }
}

/// The inequality attached to a path: `sum of s over roots <= m_low + ... + m_high`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathInequality {
    /// Canonical indices of the roots on the path.
    pub root_ids: Vec<usize>,
    pub low: u32,
    pub high: u32,
}

impl PathInequality {
    /// The right-hand side evaluated at a weight.
    pub fn bound(&self, weight: &[u32]) -> i64 {
        weight[self.low as usize - 1..=self.high as usize - 1].iter().map(|&m| m as i64).sum()
    }
}

/// Is `seq` a valid Dyck path for this system?
pub fn is_path(sys: &RootSystem, seq: &[PositiveRoot]) -> bool {
    if seq.is_empty() {
        return false;
    }
    let canon: Vec<_> = seq.iter().map(|&r| sys.canonicalize(r)).collect();
    if canon.iter().any(|&r| sys.root_index(r).is_err()) {
        return false;
    }
    if !sys.is_simple(canon[0]) || !sys.is_path_end(canon[canon.len() - 1]) {
        return false;
    }
    canon.windows(2).all(|w| sys.root_successors(w[0]).contains(&w[1]))
}

/// Every Dyck path exactly once, in the canonical order: by starting simple
/// root, then depth-first with the column branch explored before the row
/// branch, shorter prefixes first.  The straightening algorithm picks the
/// first violated path in this order, so it is pinned.
pub fn enumerate_paths(sys: &RootSystem) -> Vec<DyckPath> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for i in 1..=sys.rank() {
        let start = PositiveRoot { row: i, col: ColumnIndex::Plain(i) };
        stack.push(start);
        dfs(sys, &mut stack, &mut out);
        stack.pop();
    }
    out
}

fn dfs(sys: &RootSystem, stack: &mut Vec<PositiveRoot>, out: &mut Vec<DyckPath>) {
    let cur = *stack.last().unwrap();
    if sys.is_path_end(cur) {
        out.push(DyckPath { roots: stack.clone() });
    }
    for succ in sys.root_successors(cur) {
        stack.push(succ);
        dfs(sys, stack, out);
        stack.pop();
    }
}

/// The inequality of a single path.
pub fn path_inequality(sys: &RootSystem, path: &DyckPath) -> Result<PathInequality, Error> {
    if !is_path(sys, &path.roots) {
        return Err(Error::InvalidPath(path.tokens()));
    }
    let first = sys.canonicalize(path.roots[0]);
    let last = sys.canonicalize(path.roots[path.roots.len() - 1]);
    let high = match last.col {
        ColumnIndex::Plain(j) if sys.is_simple(last) => j,
        _ => sys.rank(), // barred end a[j,~j]
    };
    let root_ids =
        path.roots.iter().map(|&r| sys.root_index(r).unwrap()).collect();
    Ok(PathInequality { root_ids, low: first.row, high })
}

/// Cached paths plus inequalities for a system, shared across the crate.
#[derive(Debug)]
pub struct PathSystem {
    pub paths: Vec<DyckPath>,
    pub inequalities: Vec<PathInequality>,
    /// For each root index, the inequalities whose path contains it.
    pub by_root: Vec<Vec<usize>>,
}

impl PathSystem {
    fn new(sys: &RootSystem) -> PathSystem {
        let paths = enumerate_paths(sys);
        let inequalities: Vec<_> =
            paths.iter().map(|p| path_inequality(sys, p).unwrap()).collect();
        let mut by_root = vec![Vec::new(); sys.num_roots()];
        for (k, ineq) in inequalities.iter().enumerate() {
            for &rid in &ineq.root_ids {
                by_root[rid].push(k);
            }
        }
        PathSystem { paths, inequalities, by_root }
    }
}

/// Shared, lazily built [`PathSystem`] for a given family and rank.
pub fn path_system(sys: &RootSystem) -> Arc<PathSystem> {
    static CACHE: OnceLock<Mutex<HashMap<(Family, u32), Arc<PathSystem>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry((sys.family(), sys.rank()))
        .or_insert_with(|| Arc::new(PathSystem::new(sys)))
        .clone()
}
