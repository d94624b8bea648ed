//! Positive roots of types `A_n` and `C_n` in two-index notation.
//!
//! A positive root is written `a[i,j]` with a row index `i` and a column
//! index `j` drawn from the alphabet `J = {1, ..., n, ~(n-1), ..., ~1}`
//! (`~j` denotes a barred letter).  For type `A_n` only plain columns occur
//! and `a[i,j] = alpha_i + ... + alpha_j`; for type `C_n` the barred columns
//! encode the long tail `a[i,~j] = alpha_i + ... + alpha_n + alpha_{n-1} +
//! ... + alpha_j`.  The identity `a[i,n] = a[i,~n]` is resolved by always
//! storing the plain form.
//!
//! Everything downstream (Dyck paths, the lowering operators, the monomial
//! orders) is driven by the epsilon-coordinate arithmetic implemented here:
//! `a[i,j] = e_i - e_{j+1}` for plain `j < n`, `a[i,n] = e_i + e_n`, and
//! `a[i,~j] = e_i + e_j`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Ambient family of the root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::C => write!(f, "C"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "A" | "a" => Ok(Family::A),
            "C" | "c" => Ok(Family::C),
            other => Err(Error::Parse(format!("unknown family `{other}` (expected A or C)"))),
        }
    }
}

/// A column letter of the alphabet `J`.
///
/// The `Ord` implementation is the order on `J`:
/// `1 < 2 < ... < n < ~(n-1) < ... < ~1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ColumnIndex {
    Plain(u32),
    Barred(u32),
}

impl ColumnIndex {
    pub fn is_barred(self) -> bool {
        matches!(self, ColumnIndex::Barred(_))
    }

    /// The underlying letter, ignoring the bar.
    pub fn letter(self) -> u32 {
        match self {
            ColumnIndex::Plain(k) | ColumnIndex::Barred(k) => k,
        }
    }

    /// The smallest element of `J` strictly larger than `self`, for the
    /// alphabet of rank `n`.  Barred letters only exist in family C.
    pub fn next_in_j(self, family: Family, rank: u32) -> Option<ColumnIndex> {
        match self {
            ColumnIndex::Plain(k) if k < rank => Some(ColumnIndex::Plain(k + 1)),
            ColumnIndex::Plain(_) => {
                if family == Family::C && rank >= 2 {
                    Some(ColumnIndex::Barred(rank - 1))
                } else {
                    None
                }
            }
            ColumnIndex::Barred(k) if k > 1 => Some(ColumnIndex::Barred(k - 1)),
            ColumnIndex::Barred(_) => None,
        }
    }
}

impl Ord for ColumnIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        use ColumnIndex::*;
        match (self, other) {
            (Plain(a), Plain(b)) => a.cmp(b),
            (Plain(_), Barred(_)) => Ordering::Less,
            (Barred(_), Plain(_)) => Ordering::Greater,
            (Barred(a), Barred(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for ColumnIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A positive root `a[i,j]`, stored canonically (`a[i,~n]` as `a[i,n]`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PositiveRoot {
    pub row: u32,
    pub col: ColumnIndex,
}

impl PositiveRoot {
    /// Token form `a[i,j]` / `a[i,~j]`.
    pub fn token(&self) -> String {
        match self.col {
            ColumnIndex::Plain(j) => format!("a[{},{}]", self.row, j),
            ColumnIndex::Barred(j) => format!("a[{},~{}]", self.row, j),
        }
    }

    /// Parses the token form produced by [`PositiveRoot::token`].
    pub fn parse_token(s: &str) -> Result<PositiveRoot, Error> {
        let bad = || Error::Parse(format!("malformed root token `{s}` (expected a[i,j] or a[i,~j])"));
        let inner = s
            .trim()
            .strip_prefix("a[")
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (i, j) = inner.split_once(',').ok_or_else(bad)?;
        let row: u32 = i.trim().parse().map_err(|_| bad())?;
        let j = j.trim();
        let col = if let Some(core) = j.strip_prefix('~') {
            ColumnIndex::Barred(core.trim().parse().map_err(|_| bad())?)
        } else {
            ColumnIndex::Plain(j.parse().map_err(|_| bad())?)
        };
        Ok(PositiveRoot { row, col })
    }
}

impl fmt::Display for PositiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.token())
    }
}

impl Serialize for PositiveRoot {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("PositiveRoot", 3)?;
        st.serialize_field("i", &self.row)?;
        st.serialize_field("j", &self.col.letter())?;
        st.serialize_field("barred", &self.col.is_barred())?;
        st.end()
    }
}

/// Classification of an operator/variable root pair, deciding which lowering
/// rule applies (see [`crate::partials`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    /// The operator annihilates the variable.
    Kill,
    /// `var - op` is a root and the pair sits in an `A_2` pattern.
    TypeA2,
    /// `op` long, `var = op + gamma`: coefficient-one rule.
    C2Ad2,
    /// `op = alpha + gamma`, `var = alpha + 2 gamma`: coefficient-one rule.
    C2Ad3,
    /// `op = gamma` short, `var = op + alpha` with `var + op` a root: `2^k`.
    C2Ad4,
    /// `op = gamma`, `var = alpha + 2 gamma`: rule with correction terms.
    C2Ad5,
}

/// Resolved lowering rule for a pair, with the concrete result roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum PairRule {
    Kill,
    /// Result `f_result^(k) f_var^(m-k)`, with coefficient `2^k` iff `doubles`.
    Single { result: usize, doubles: bool },
    /// `C2Ad5` pattern `var = alpha + 2 op`: the triple `(alpha, mid, var)`
    /// with `mid = alpha + op`.
    Ad5 { alpha: usize, mid: usize },
}

/// A root system of type `A_n` or `C_n` with its canonical root enumeration.
///
/// The enumeration is row-major with columns increasing in the `J` order;
/// it is the index space for multi-exponents everywhere in this crate.
#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    rank: u32,
    roots: Vec<PositiveRoot>,
    index: HashMap<PositiveRoot, usize>,
    epsilons: Vec<Vec<i64>>,
    rules: Vec<PairRule>,
}

impl RootSystem {
    pub fn new(family: Family, rank: u32) -> Result<RootSystem, Error> {
        if rank == 0 {
            return Err(Error::Parse("rank must be at least 1".into()));
        }
        let mut roots = Vec::new();
        for i in 1..=rank {
            for j in i..=rank {
                roots.push(PositiveRoot { row: i, col: ColumnIndex::Plain(j) });
            }
            if family == Family::C {
                for j in (i..rank).rev() {
                    roots.push(PositiveRoot { row: i, col: ColumnIndex::Barred(j) });
                }
            }
        }
        let index = roots.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        let mut sys = RootSystem { family, rank, roots, index, epsilons: Vec::new(), rules: Vec::new() };
        sys.epsilons = sys.roots.iter().map(|&r| sys.epsilon_of(r)).collect();
        sys.rules = sys.build_rule_table();
        Ok(sys)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// All positive roots in the canonical enumeration, each exactly once.
    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.roots
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Index of a root in the canonical enumeration.
    pub fn root_index(&self, root: PositiveRoot) -> Result<usize, Error> {
        self.index
            .get(&self.canonicalize(root))
            .copied()
            .ok_or_else(|| Error::RootNotInSystem(root.token(), self.family, self.rank))
    }

    pub fn root(&self, idx: usize) -> PositiveRoot {
        self.roots[idx]
    }

    /// Canonical storage form: `a[i,~n]` becomes `a[i,n]`.
    pub fn canonicalize(&self, root: PositiveRoot) -> PositiveRoot {
        match root.col {
            ColumnIndex::Barred(j) if j == self.rank => {
                PositiveRoot { row: root.row, col: ColumnIndex::Plain(j) }
            }
            _ => root,
        }
    }

    fn try_root(&self, row: u32, col: ColumnIndex) -> Option<PositiveRoot> {
        let cand = self.canonicalize(PositiveRoot { row, col });
        if row == 0 || row > self.rank {
            return None;
        }
        match cand.col {
            ColumnIndex::Plain(j) => (row <= j && j <= self.rank).then_some(cand),
            ColumnIndex::Barred(j) => {
                (self.family == Family::C && row <= j && j < self.rank).then_some(cand)
            }
        }
    }

    /// Expansion over the simple roots `alpha_1, ..., alpha_n`.
    pub fn to_simple_coords(&self, root: PositiveRoot) -> Result<Vec<i64>, Error> {
        let root = self.canonicalize(root);
        self.root_index(root)?;
        let n = self.rank as usize;
        let i = root.row as usize;
        let mut coords = vec![0i64; n];
        match root.col {
            ColumnIndex::Plain(j) => {
                for c in coords.iter_mut().take(j as usize).skip(i - 1) {
                    *c = 1;
                }
            }
            ColumnIndex::Barred(j) => {
                let j = j as usize;
                for (l, c) in coords.iter_mut().enumerate() {
                    let l = l + 1;
                    if l >= i && l <= n {
                        *c = if l >= j && l <= n - 1 { 2 } else { 1 };
                    }
                }
            }
        }
        Ok(coords)
    }

    pub fn height(&self, root: PositiveRoot) -> i64 {
        self.to_simple_coords(root).map(|c| c.iter().sum()).unwrap_or(0)
    }

    /// Epsilon coordinates; length `n+1` for family A, `n` for family C.
    fn epsilon_of(&self, root: PositiveRoot) -> Vec<i64> {
        let n = self.rank as usize;
        let i = root.row as usize;
        match self.family {
            Family::A => {
                let mut e = vec![0i64; n + 1];
                if let ColumnIndex::Plain(j) = root.col {
                    e[i - 1] = 1;
                    e[j as usize] = -1;
                }
                e
            }
            Family::C => {
                let mut e = vec![0i64; n];
                match root.col {
                    ColumnIndex::Plain(j) if (j as usize) < n => {
                        e[i - 1] = 1;
                        e[j as usize] -= 1;
                    }
                    ColumnIndex::Plain(_) => {
                        // a[i,n] = a[i,~n] = e_i + e_n
                        e[i - 1] += 1;
                        e[n - 1] += 1;
                    }
                    ColumnIndex::Barred(j) => {
                        e[i - 1] += 1;
                        e[j as usize - 1] += 1;
                    }
                }
                e
            }
        }
    }

    pub fn epsilon(&self, idx: usize) -> &[i64] {
        &self.epsilons[idx]
    }

    /// The positive root with the given epsilon coordinates, if any.
    pub fn root_from_epsilon(&self, eps: &[i64]) -> Option<PositiveRoot> {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut two = None;
        for (k, &v) in eps.iter().enumerate() {
            match v {
                0 => {}
                1 => pos.push(k + 1),
                -1 => neg.push(k + 1),
                2 if self.family == Family::C => two = Some(k + 1),
                _ => return None,
            }
        }
        match (self.family, two, pos.as_slice(), neg.as_slice()) {
            (_, None, [a], [b]) if a < b => {
                self.try_root(*a as u32, ColumnIndex::Plain(*b as u32 - 1))
            }
            (Family::C, None, [a, b], []) => {
                self.try_root(*a as u32, ColumnIndex::Barred(*b as u32))
            }
            (Family::C, Some(a), [], []) => self.try_root(a as u32, ColumnIndex::Barred(a as u32)),
            _ => None,
        }
    }

    /// Long root of family C (squared length 4 in epsilon coordinates).
    pub fn is_long(&self, root: PositiveRoot) -> bool {
        self.family == Family::C && {
            let r = self.canonicalize(root);
            match r.col {
                ColumnIndex::Plain(j) => j == self.rank && r.row == self.rank,
                ColumnIndex::Barred(j) => j == r.row,
            }
        }
    }

    pub fn is_simple(&self, root: PositiveRoot) -> bool {
        let r = self.canonicalize(root);
        matches!(r.col, ColumnIndex::Plain(j) if j == r.row)
    }

    /// Valid terminal roots of a Dyck path: simple roots, and for family C
    /// also the roots `a[j,~j]` (with `a[n,n]` counting as both).
    pub fn is_path_end(&self, root: PositiveRoot) -> bool {
        self.is_simple(root)
            || (self.family == Family::C
                && matches!(self.canonicalize(root).col,
                    ColumnIndex::Barred(j) if j == root.row))
    }

    /// The 0, 1 or 2 roots reachable from `root` by one Dyck recursion step:
    /// advance the column to the next letter of `J`, or advance the row.
    pub fn root_successors(&self, root: PositiveRoot) -> Vec<PositiveRoot> {
        let root = self.canonicalize(root);
        let mut out = Vec::with_capacity(2);
        // When the root is a[i,n] in family C, the column reads as the letter
        // n of J; its successor is ~(n-1).
        if let Some(next_col) = root.col.next_in_j(self.family, self.rank) {
            if let Some(r) = self.try_root(root.row, next_col) {
                out.push(r);
            }
        }
        if let Some(r) = self.try_root(root.row + 1, root.col) {
            out.push(r);
        }
        out
    }

    fn build_rule_table(&self) -> Vec<PairRule> {
        let nn = self.roots.len();
        let mut table = vec![PairRule::Kill; nn * nn];
        for op in 0..nn {
            for var in 0..nn {
                table[op * nn + var] = self.compute_rule(op, var);
            }
        }
        table
    }

    fn compute_rule(&self, op: usize, var: usize) -> PairRule {
        if op == var {
            return PairRule::Kill;
        }
        let dim = self.epsilons[op].len();
        let sub = |scale: i64| -> Vec<i64> {
            (0..dim).map(|k| self.epsilons[var][k] - scale * self.epsilons[op][k]).collect()
        };
        if self.family == Family::C {
            if let Some(alpha) = self.root_from_epsilon(&sub(2)) {
                let mid = self.root_from_epsilon(&sub(1)).expect("alpha+gamma closes the C2 pattern");
                return PairRule::Ad5 {
                    alpha: self.root_index(alpha).unwrap(),
                    mid: self.root_index(mid).unwrap(),
                };
            }
        }
        if let Some(gamma) = self.root_from_epsilon(&sub(1)) {
            let doubles = self.family == Family::C && {
                let add: Vec<i64> =
                    (0..dim).map(|k| self.epsilons[var][k] + self.epsilons[op][k]).collect();
                self.root_from_epsilon(&add).is_some()
            };
            return PairRule::Single { result: self.root_index(gamma).unwrap(), doubles };
        }
        PairRule::Kill
    }

    pub(crate) fn rule(&self, op: usize, var: usize) -> PairRule {
        self.rules[op * self.roots.len() + var]
    }

    /// Decides which lowering rule governs `(opRoot, varRoot)`.
    pub fn classify_pair(&self, op: PositiveRoot, var: PositiveRoot) -> Result<PairKind, Error> {
        let opi = self.root_index(op)?;
        let vari = self.root_index(var)?;
        Ok(match self.rule(opi, vari) {
            PairRule::Kill => PairKind::Kill,
            PairRule::Ad5 { .. } => PairKind::C2Ad5,
            PairRule::Single { doubles: true, .. } => PairKind::C2Ad4,
            PairRule::Single { doubles: false, .. } => {
                if self.is_long(self.roots[opi]) {
                    PairKind::C2Ad2
                } else if self.is_long(self.roots[vari]) {
                    PairKind::C2Ad3
                } else {
                    PairKind::TypeA2
                }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(f: Family, n: u32) -> RootSystem {
        RootSystem::new(f, n).unwrap()
    }

    fn root(s: &str) -> PositiveRoot {
        PositiveRoot::parse_token(s).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        for n in 1..=8 {
            assert_eq!(sys(Family::A, n).num_roots() as u32, n * (n + 1) / 2);
            assert_eq!(sys(Family::C, n).num_roots() as u32, n * n);
        }
    }

    #[test]
    fn a2_enumeration() {
        let s = sys(Family::A, 2);
        let toks: Vec<_> = s.positive_roots().iter().map(|r| r.token()).collect();
        assert_eq!(toks, ["a[1,1]", "a[1,2]", "a[2,2]"]);
    }

    #[test]
    fn c2_enumeration() {
        let s = sys(Family::C, 2);
        let toks: Vec<_> = s.positive_roots().iter().map(|r| r.token()).collect();
        assert_eq!(toks, ["a[1,1]", "a[1,2]", "a[1,~1]", "a[2,2]"]);
    }

    #[test]
    fn simple_coords() {
        let c2 = sys(Family::C, 2);
        assert_eq!(c2.to_simple_coords(root("a[1,~1]")).unwrap(), vec![2, 1]);
        assert_eq!(c2.to_simple_coords(root("a[1,2]")).unwrap(), vec![1, 1]);
        let a3 = sys(Family::A, 3);
        assert_eq!(a3.to_simple_coords(root("a[1,3]")).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn coords_of_two_eps_roots() {
        for n in 2..=5 {
            let s = sys(Family::C, n);
            for i in 1..=n {
                let r = s.canonicalize(PositiveRoot { row: i, col: ColumnIndex::Barred(i) });
                let coords = s.to_simple_coords(r).unwrap();
                let first_nonzero = coords.iter().position(|&c| c != 0).unwrap();
                assert_eq!(first_nonzero as u32 + 1, i);
                assert_eq!(coords.iter().sum::<i64>(), 2 * (n as i64 - i as i64) + 1);
            }
        }
    }

    #[test]
    fn successors() {
        let a2 = sys(Family::A, 2);
        assert_eq!(a2.root_successors(root("a[1,1]")), vec![root("a[1,2]")]);
        let c2 = sys(Family::C, 2);
        assert_eq!(c2.root_successors(root("a[1,2]")), vec![root("a[1,~1]"), root("a[2,2]")]);
        assert_eq!(c2.root_successors(root("a[1,~1]")), Vec::<PositiveRoot>::new());
    }

    #[test]
    fn successors_monotone() {
        for (f, n) in [(Family::A, 5), (Family::C, 5)] {
            let s = sys(f, n);
            for &r in s.positive_roots() {
                for succ in s.root_successors(r) {
                    assert!(succ.row >= r.row);
                    assert!(succ.col >= r.col, "column must not decrease in J");
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        let a2 = sys(Family::A, 2);
        assert_eq!(a2.classify_pair(root("a[1,1]"), root("a[1,2]")).unwrap(), PairKind::TypeA2);
        let c2 = sys(Family::C, 2);
        assert_eq!(c2.classify_pair(root("a[1,1]"), root("a[1,2]")).unwrap(), PairKind::C2Ad4);
        assert_eq!(c2.classify_pair(root("a[1,1]"), root("a[1,~1]")).unwrap(), PairKind::C2Ad5);
        assert_eq!(c2.classify_pair(root("a[2,2]"), root("a[1,2]")).unwrap(), PairKind::C2Ad2);
        assert_eq!(c2.classify_pair(root("a[1,2]"), root("a[1,~1]")).unwrap(), PairKind::C2Ad3);
    }

    #[test]
    fn classify_same_root_kills() {
        for (f, n) in [(Family::A, 3), (Family::C, 3)] {
            let s = sys(f, n);
            for &r in s.positive_roots() {
                assert_eq!(s.classify_pair(r, r).unwrap(), PairKind::Kill);
            }
        }
    }

    #[test]
    fn token_round_trip() {
        let s = sys(Family::C, 4);
        for &r in s.positive_roots() {
            assert_eq!(PositiveRoot::parse_token(&r.token()).unwrap(), r);
        }
    }

    #[test]
    fn barred_n_is_canonicalized() {
        let s = sys(Family::C, 3);
        let r = s.canonicalize(PositiveRoot { row: 1, col: ColumnIndex::Barred(3) });
        assert_eq!(r, root("a[1,3]"));
        assert_eq!(s.root_index(PositiveRoot { row: 1, col: ColumnIndex::Barred(3) }).unwrap(),
                   s.root_index(root("a[1,3]")).unwrap());
    }
}
