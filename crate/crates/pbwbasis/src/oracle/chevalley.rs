//! Integer matrix realizations of the Chevalley generators in the vector
//! representation: size `n+1` for type `A_n`, size `2n` for type `C_n` with
//! the antidiagonal symplectic form.
//!
//! All structure constants used elsewhere (bracket signs for the lowering
//! rules, the rank-2 derivation behind the correction terms) are read off
//! these matrices rather than hard-coded, so one sign convention propagates
//! from a single source.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rootsys::{Family, PairRule, RootSystem};

/// Sparse integer matrix, `entries` sorted by (row, col), 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    pub dim: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseMat {
    fn new(dim: usize, mut entries: Vec<(usize, usize, i64)>) -> SparseMat {
        entries.retain(|&(_, _, v)| v != 0);
        entries.sort_unstable();
        SparseMat { dim, entries }
    }

    /// `self * other - other * self`.
    pub fn bracket(&self, other: &SparseMat) -> SparseMat {
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for &(r, c, v) in &self.entries {
            for &(r2, c2, v2) in &other.entries {
                if c == r2 {
                    *acc.entry((r, c2)).or_insert(0) += v * v2;
                }
            }
        }
        for &(r, c, v) in &other.entries {
            for &(r2, c2, v2) in &self.entries {
                if c == r2 {
                    *acc.entry((r, c2)).or_insert(0) -= v * v2;
                }
            }
        }
        SparseMat::new(self.dim, acc.into_iter().map(|((r, c), v)| (r, c, v)).collect())
    }

    /// If `self == c * other` for a scalar `c`, returns `c`.
    pub fn scalar_multiple_of(&self, other: &SparseMat) -> Option<i64> {
        if other.entries.is_empty() {
            return self.entries.is_empty().then_some(0);
        }
        if self.entries.is_empty() {
            return Some(0);
        }
        let (r0, c0, v0) = other.entries[0];
        let mine = self.entries.iter().find(|&&(r, c, _)| (r, c) == (r0, c0))?;
        if mine.2 % v0 != 0 {
            return None;
        }
        let q = mine.2 / v0;
        let scaled: Vec<_> = other.entries.iter().map(|&(r, c, v)| (r, c, v * q)).collect();
        (self.entries == scaled).then_some(q)
    }
}

/// Bracket data for an (operator root, variable root) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairSign {
    NoRule,
    /// Sign of `[e_op, f_var] = c f_{var-op}` (`|c|` is 1, or 2 for the
    /// doubling rule).
    Single(i64),
    /// The `C2` pattern `var = alpha + 2 op`: signs of
    /// `[e_op, f_var] = s1 f_mid` and `[e_op, f_mid] = 2 s2 f_alpha`.
    Ad5 { s1: i64, s2: i64 },
}

/// Matrix realization of a root system, with cached bracket signs.
#[derive(Debug)]
pub struct Realization {
    pub family: Family,
    pub rank: u32,
    /// Dimension of the vector representation.
    pub dim: usize,
    pub e: Vec<SparseMat>,
    pub f: Vec<SparseMat>,
    /// Epsilon-weight of each basis vector of the vector representation,
    /// as a vector of length `rank` (C) or `rank + 1` (A).
    pub basis_weights: Vec<Vec<i64>>,
    signs: Vec<PairSign>,
}

impl Realization {
    fn build(sys: &RootSystem) -> Realization {
        let n = sys.rank() as usize;
        let family = sys.family();
        let dim = match family {
            Family::A => n + 1,
            Family::C => 2 * n,
        };
        let mut e = Vec::new();
        let mut f = Vec::new();
        for idx in 0..sys.num_roots() {
            let eps = sys.epsilon(idx);
            let (em, fm) = match family {
                Family::A => {
                    let i = eps.iter().position(|&v| v == 1).unwrap();
                    let j = eps.iter().position(|&v| v == -1).unwrap();
                    (
                        SparseMat::new(dim, vec![(i, j, 1)]),
                        SparseMat::new(dim, vec![(j, i, 1)]),
                    )
                }
                Family::C => {
                    let conj = |k: usize| 2 * n - 1 - k; // 0-based antidiagonal partner
                    if let Some(i) = eps.iter().position(|&v| v == 2) {
                        (
                            SparseMat::new(dim, vec![(i, conj(i), 1)]),
                            SparseMat::new(dim, vec![(conj(i), i, 1)]),
                        )
                    } else if let Some(j) = eps.iter().position(|&v| v == -1) {
                        let i = eps.iter().position(|&v| v == 1).unwrap();
                        (
                            SparseMat::new(dim, vec![(i, j, 1), (conj(j), conj(i), -1)]),
                            SparseMat::new(dim, vec![(j, i, 1), (conj(i), conj(j), -1)]),
                        )
                    } else {
                        let i = eps.iter().position(|&v| v == 1).unwrap();
                        let j = i + 1 + eps[i + 1..].iter().position(|&v| v == 1).unwrap();
                        (
                            SparseMat::new(dim, vec![(i, conj(j), 1), (j, conj(i), 1)]),
                            SparseMat::new(dim, vec![(conj(j), i, 1), (conj(i), j, 1)]),
                        )
                    }
                }
            };
            e.push(em);
            f.push(fm);
        }

        let mut basis_weights = Vec::with_capacity(dim);
        for k in 0..dim {
            let mut w = vec![0i64; if family == Family::A { n + 1 } else { n }];
            match family {
                Family::A => w[k] = 1,
                Family::C => {
                    if k < n {
                        w[k] = 1;
                    } else {
                        w[2 * n - 1 - k] = -1;
                    }
                }
            }
            basis_weights.push(w);
        }

        let nn = sys.num_roots();
        let mut signs = vec![PairSign::NoRule; nn * nn];
        for op in 0..nn {
            for var in 0..nn {
                signs[op * nn + var] = match sys.rule(op, var) {
                    PairRule::Kill => PairSign::NoRule,
                    PairRule::Single { result, doubles } => {
                        let br = e[op].bracket(&f[var]);
                        let c = br
                            .scalar_multiple_of(&f[result])
                            .expect("bracket must be a multiple of the result root vector");
                        assert_eq!(c.abs(), if doubles { 2 } else { 1 });
                        PairSign::Single(c.signum())
                    }
                    PairRule::Ad5 { alpha, mid } => {
                        let b1 = e[op].bracket(&f[var]);
                        let c1 = b1.scalar_multiple_of(&f[mid]).expect("C2 pattern: [e,f_var]");
                        assert_eq!(c1.abs(), 1);
                        let b2 = e[op].bracket(&f[mid]);
                        let c2 = b2.scalar_multiple_of(&f[alpha]).expect("C2 pattern: [e,f_mid]");
                        assert_eq!(c2.abs(), 2);
                        PairSign::Ad5 { s1: c1.signum(), s2: c2.signum() }
                    }
                };
            }
        }

        Realization { family, rank: sys.rank(), dim, e, f, basis_weights, signs }
    }

    pub fn pair_sign(&self, op: usize, var: usize) -> PairSign {
        self.signs[op * self.e.len() + var]
    }
}

/// Shared realization for a family and rank.
pub fn realization(sys: &RootSystem) -> Arc<Realization> {
    static CACHE: OnceLock<Mutex<HashMap<(Family, u32), Arc<Realization>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry((sys.family(), sys.rank()))
        .or_insert_with(|| Arc::new(Realization::build(sys)))
        .clone()
}

/// One term `r * x^(a) y^(b) z^(c)` of a rank-2 expansion, in divided-power
/// normalization, for the variables `x = f_alpha`, `y = f_{alpha+gamma}`,
/// `z = f_{alpha+2gamma}`.
pub type Rank2Term = (u32, u32, u32, BigInt);

/// Expansion of the `k`-th divided adjoint power of `e_gamma` applied to
/// `f_{alpha+2gamma}^(m)` in the `C_2` pattern, with all coefficients taken
/// positive (the true action carries a uniform per-step sign, restored by
/// the caller via [`PairSign::Ad5`]).
///
/// Computed by iterating the derivation `D z = y, D y = 2 x, D x = 0` on
/// `z^m` (the three variables commute: no sum of two of their roots is a
/// root), dividing by `k!` and renormalizing to divided powers.  Non-zero
/// exactly for `k <= 2m`; entries satisfy `a + b + c = m` and
/// `b + 2c = 2m - k`, and for `k <= m` the leading entry `(0, k, m-k)` has
/// coefficient one.
pub fn rank2_expansion(k: u32, m: u32) -> Arc<Vec<Rank2Term>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<Vec<Rank2Term>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard.entry((k, m)).or_insert_with(|| Arc::new(compute_rank2(k, m))).clone()
}

fn compute_rank2(k: u32, m: u32) -> Vec<Rank2Term> {
    if k > 2 * m {
        return Vec::new();
    }
    // ordinary (non divided-power) polynomial in x, y, z
    let mut poly: BTreeMap<(u32, u32, u32), BigInt> = BTreeMap::new();
    poly.insert((0, 0, m), BigInt::one());
    for _ in 0..k {
        let mut next: BTreeMap<(u32, u32, u32), BigInt> = BTreeMap::new();
        for (&(a, b, c), coeff) in &poly {
            if c > 0 {
                // D z = y
                *next.entry((a, b + 1, c - 1)).or_insert_with(BigInt::zero) +=
                    coeff * BigInt::from(c);
            }
            if b > 0 {
                // D y = 2x
                *next.entry((a + 1, b - 1, c)).or_insert_with(BigInt::zero) +=
                    coeff * BigInt::from(2 * b);
            }
        }
        poly = next;
    }
    let mut denom = factorial(k);
    denom *= factorial(m);
    let mut out = Vec::new();
    for ((a, b, c), coeff) in poly {
        if coeff.is_zero() {
            continue;
        }
        // x^a y^b z^c = a! b! c! x^(a) y^(b) z^(c)
        let num = coeff * factorial(a) * factorial(b) * factorial(c);
        let (q, r) = num_integer::Integer::div_rem(&num, &denom);
        assert!(r.is_zero(), "divided-power expansion must be integral");
        debug_assert_eq!(a + b + c, m);
        debug_assert_eq!(b + 2 * c, 2 * m - k);
        out.push((a, b, c, q));
    }
    if k <= m {
        let lead = out.iter().find(|&&(a, b, _, _)| a == 0 && b == k);
        assert_eq!(lead.map(|t| t.3.clone()), Some(BigInt::one()), "leading coefficient");
    }
    out
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::PositiveRoot;

    fn sys(f: Family, n: u32) -> RootSystem {
        RootSystem::new(f, n).unwrap()
    }

    fn idx(s: &RootSystem, tok: &str) -> usize {
        s.root_index(PositiveRoot::parse_token(tok).unwrap()).unwrap()
    }

    #[test]
    fn chevalley_relations_hold() {
        // [e_b, f_b] is diagonal with pairing values, and weights match:
        // [h, e_b] = <b, .> e_b for the Cartan elements read off [e, f].
        for (fam, n) in [(Family::A, 3), (Family::C, 3)] {
            let s = sys(fam, n);
            let real = realization(&s);
            for i in 0..s.num_roots() {
                let h = real.e[i].bracket(&real.f[i]);
                // h must be diagonal
                assert!(h.entries.iter().all(|&(r, c, _)| r == c), "h_beta diagonal");
                // and [h, e] = 2e (the pairing <beta, beta^vee> = 2)
                let he = h.bracket(&real.e[i]);
                assert_eq!(he.scalar_multiple_of(&real.e[i]), Some(2));
            }
        }
    }

    #[test]
    fn rank2_small_tables() {
        let t = rank2_expansion(1, 1);
        assert_eq!(t.as_slice(), &[(0, 1, 0, BigInt::one())]);
        let t = rank2_expansion(1, 2);
        assert_eq!(t.as_slice(), &[(0, 1, 1, BigInt::one())]);
        let t = rank2_expansion(2, 2);
        assert_eq!(
            t.as_slice(),
            &[(0, 2, 0, BigInt::one()), (1, 0, 1, BigInt::one())]
        );
    }

    #[test]
    fn rank2_beyond_m() {
        // k in (m, 2m] is non-zero: every term then carries x factors.
        let t = rank2_expansion(2, 1);
        assert_eq!(t.as_slice(), &[(1, 0, 0, BigInt::one())]);
        let t = rank2_expansion(3, 2);
        assert_eq!(t.as_slice(), &[(1, 1, 0, BigInt::one())]);
        assert!(rank2_expansion(5, 2).is_empty());
    }

    #[test]
    fn rank2_invariants() {
        for m in 0..=6u32 {
            for k in 0..=2 * m {
                for &(a, b, c, ref r) in rank2_expansion(k, m).iter() {
                    assert_eq!(a + b + c, m);
                    assert_eq!(b + 2 * c, 2 * m - k);
                    assert!(*r > BigInt::zero());
                }
            }
        }
    }

    #[test]
    fn ad5_signs_are_read_from_matrices() {
        let s = sys(Family::C, 2);
        let real = realization(&s);
        match real.pair_sign(idx(&s, "a[1,1]"), idx(&s, "a[1,~1]")) {
            PairSign::Ad5 { s1, s2 } => {
                assert_eq!(s1.abs(), 1);
                assert_eq!(s2.abs(), 1);
            }
            other => panic!("expected Ad5 sign, got {other:?}"),
        }
    }
}
