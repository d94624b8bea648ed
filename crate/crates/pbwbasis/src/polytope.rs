//! The lattice polytope of multi-exponents attached to a dominant weight.
//!
//! For `lambda = sum m_i omega_i`, a multi-exponent `s` (one non-negative
//! integer per positive root) lies in the polytope iff for every Dyck path
//! the sum of `s` along the path is at most the corresponding partial sum of
//! the `m_i`.  The integral points form the index set `S(lambda)` of the
//! monomial basis; counting them by total degree and weight drop gives the
//! graded character.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::dyck::{path_system, PathSystem};
use crate::rootsys::RootSystem;
use crate::Error;

/// A dominant weight, as coefficients of the fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantWeight(pub Vec<u32>);

impl DominantWeight {
    pub fn validate(&self, sys: &RootSystem) -> Result<(), Error> {
        if self.0.len() != sys.rank() as usize {
            return Err(Error::DimensionMismatch { expected: sys.rank() as usize, got: self.0.len() });
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }
}

/// A multi-exponent: one exponent per positive root, in canonical root order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiExponent(pub Vec<u32>);

impl MultiExponent {
    pub fn zero(sys: &RootSystem) -> MultiExponent {
        MultiExponent(vec![0; sys.num_roots()])
    }

    pub fn validate(&self, sys: &RootSystem) -> Result<(), Error> {
        if self.0.len() != sys.num_roots() {
            return Err(Error::DimensionMismatch { expected: sys.num_roots(), got: self.0.len() });
        }
        Ok(())
    }

    /// Total degree `sum s_beta`.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&v| v as u64).sum()
    }

    /// Weight drop `sum s_beta beta` in simple-root coordinates.
    pub fn weight_drop(&self, sys: &RootSystem) -> Vec<i64> {
        let mut drop = vec![0i64; sys.rank() as usize];
        for (idx, &v) in self.0.iter().enumerate() {
            if v > 0 {
                let coords = sys.to_simple_coords(sys.root(idx)).unwrap();
                for (d, c) in drop.iter_mut().zip(coords) {
                    *d += v as i64 * c;
                }
            }
        }
        drop
    }
}

/// Graded character: per weight drop, the polynomial in `q` counting basis
/// monomials by total degree (coefficient list, index = power of `q`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GradedCharacter {
    pub entries: BTreeMap<Vec<i64>, Vec<u64>>,
}

impl GradedCharacter {
    /// Evaluation at `q = 1`, per weight drop.
    pub fn at_q1(&self) -> BTreeMap<Vec<i64>, u64> {
        self.entries.iter().map(|(w, poly)| (w.clone(), poly.iter().sum())).collect()
    }

    /// Sum of all coefficients; equals the number of lattice points.
    pub fn total(&self) -> u64 {
        self.entries.values().flat_map(|p| p.iter()).sum()
    }
}

/// Is `s` an integral point of the polytope of `lambda`?
pub fn contains(sys: &RootSystem, lambda: &DominantWeight, s: &MultiExponent) -> Result<bool, Error> {
    lambda.validate(sys)?;
    s.validate(sys)?;
    let ps = path_system(sys);
    Ok(contains_fast(&ps, &lambda.0, &s.0))
}

pub(crate) fn contains_fast(ps: &PathSystem, weight: &[u32], s: &[u32]) -> bool {
    ps.inequalities.iter().all(|ineq| {
        let sum: i64 = ineq.root_ids.iter().map(|&rid| s[rid] as i64).sum();
        sum <= ineq.bound(weight)
    })
}

/// All integral points, in ascending lexicographic order of the exponent
/// vector.  Depth-first assignment in canonical root order with running
/// slack per inequality keeps the search tree tight.
pub fn enumerate_points(sys: &RootSystem, lambda: &DominantWeight) -> Result<Vec<MultiExponent>, Error> {
    lambda.validate(sys)?;
    let ps = path_system(sys);
    let mut slack: Vec<i64> = ps.inequalities.iter().map(|iq| iq.bound(&lambda.0)).collect();
    let mut exp = vec![0u32; sys.num_roots()];
    let mut out = Vec::new();
    assign(&ps, &mut slack, &mut exp, 0, &mut out);
    Ok(out)
}

fn assign(ps: &PathSystem, slack: &mut [i64], exp: &mut Vec<u32>, idx: usize, out: &mut Vec<MultiExponent>) {
    if idx == exp.len() {
        out.push(MultiExponent(exp.clone()));
        return;
    }
    let max = ps.by_root[idx].iter().map(|&k| slack[k]).min().unwrap_or(0).max(0);
    for v in 0..=max {
        if v > 0 {
            for &k in &ps.by_root[idx] {
                slack[k] -= 1;
            }
            exp[idx] = v as u32;
        }
        assign(ps, slack, exp, idx + 1, out);
    }
    for &k in &ps.by_root[idx] {
        slack[k] += max;
    }
    exp[idx] = 0;
}

/// The graded character of `lambda` from the polytope side: each point
/// contributes `q^{degree}` at its weight drop.
pub fn graded_character(sys: &RootSystem, lambda: &DominantWeight) -> Result<GradedCharacter, Error> {
    let points = enumerate_points(sys, lambda)?;
    let coords: Vec<Vec<i64>> =
        (0..sys.num_roots()).map(|i| sys.to_simple_coords(sys.root(i)).unwrap()).collect();
    let mut ch = GradedCharacter::default();
    for p in points {
        let mut drop = vec![0i64; sys.rank() as usize];
        for (idx, &v) in p.0.iter().enumerate() {
            for (d, c) in drop.iter_mut().zip(&coords[idx]) {
                *d += v as i64 * c;
            }
        }
        let deg = p.degree() as usize;
        let poly = ch.entries.entry(drop).or_default();
        if poly.len() <= deg {
            poly.resize(deg + 1, 0);
        }
        poly[deg] += 1;
    }
    Ok(ch)
}

/// Result of the Minkowski-sum comparison of `S(lambda) + S(mu)` against
/// `S(lambda + mu)`.
#[derive(Clone, Debug, Serialize)]
pub struct MinkowskiReport {
    pub subset: bool,
    /// Whether `|S(lambda)+S(mu)| = |S(lambda+mu)|`; `None` when the product
    /// of the two point counts is too large to enumerate the sum set.
    pub equality: Option<bool>,
    pub points_lambda: u64,
    pub points_mu: u64,
    pub points_sum: u64,
}

/// Checks the inclusion `S(lambda) + S(mu) <= S(lambda + mu)`.
///
/// The inclusion test is exact without enumerating pairs: a pairwise sum
/// violates inequality `k` iff the maxima of the path sums over the two
/// point sets add up beyond the bound for `lambda + mu`.
pub fn minkowski_subset(
    sys: &RootSystem,
    lambda: &DominantWeight,
    mu: &DominantWeight,
) -> Result<MinkowskiReport, Error> {
    lambda.validate(sys)?;
    mu.validate(sys)?;
    let ps = path_system(sys);
    let total = DominantWeight(
        lambda.0.iter().zip(&mu.0).map(|(&a, &b)| a + b).collect(),
    );
    let pts_l = enumerate_points(sys, lambda)?;
    let pts_m = enumerate_points(sys, mu)?;
    let pts_t = enumerate_points(sys, &total)?;

    let max_sums = |pts: &[MultiExponent]| -> Vec<i64> {
        let mut maxima = vec![0i64; ps.inequalities.len()];
        for p in pts {
            for (k, ineq) in ps.inequalities.iter().enumerate() {
                let sum: i64 = ineq.root_ids.iter().map(|&rid| p.0[rid] as i64).sum();
                maxima[k] = maxima[k].max(sum);
            }
        }
        maxima
    };
    let ml = max_sums(&pts_l);
    let mm = max_sums(&pts_m);
    let subset = ps
        .inequalities
        .iter()
        .enumerate()
        .all(|(k, ineq)| ml[k] + mm[k] <= ineq.bound(&total.0));

    const EQUALITY_PAIR_CAP: u64 = 1 << 22;
    let product = pts_l.len() as u64 * pts_m.len() as u64;
    let equality = if product <= EQUALITY_PAIR_CAP {
        let mut sums: HashSet<Vec<u32>> = HashSet::new();
        for a in &pts_l {
            for b in &pts_m {
                sums.insert(a.0.iter().zip(&b.0).map(|(&x, &y)| x + y).collect());
            }
        }
        Some(sums.len() == pts_t.len())
    } else {
        None
    };

    Ok(MinkowskiReport {
        subset,
        equality,
        points_lambda: pts_l.len() as u64,
        points_mu: pts_m.len() as u64,
        points_sum: pts_t.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    fn sys(f: Family, n: u32) -> RootSystem {
        RootSystem::new(f, n).unwrap()
    }

    #[test]
    fn a1_interval() {
        let s = sys(Family::A, 1);
        for m in 0..5u32 {
            let lam = DominantWeight(vec![m]);
            let pts = enumerate_points(&s, &lam).unwrap();
            assert_eq!(pts.len() as u32, m + 1);
            for k in 0..=m {
                assert!(contains(&s, &lam, &MultiExponent(vec![k])).unwrap());
            }
            assert!(!contains(&s, &lam, &MultiExponent(vec![m + 1])).unwrap());
        }
    }

    #[test]
    fn a2_adjoint_has_eight_points() {
        let s = sys(Family::A, 2);
        let pts = enumerate_points(&s, &DominantWeight(vec![1, 1])).unwrap();
        assert_eq!(pts.len(), 8);
        assert!(!contains(&s, &DominantWeight(vec![1, 1]), &MultiExponent(vec![1, 1, 1])).unwrap());
    }

    #[test]
    fn c2_21_has_35_points() {
        let s = sys(Family::C, 2);
        let lam = DominantWeight(vec![2, 1]);
        let pts = enumerate_points(&s, &lam).unwrap();
        assert_eq!(pts.len(), 35);
        // (s11, s12, s1~1, s22) = (2, 1, 0, 0): all four path sums hold.
        assert!(contains(&s, &lam, &MultiExponent(vec![2, 1, 0, 0])).unwrap());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let s = sys(Family::C, 2);
        let lam = DominantWeight(vec![2, 1]);
        let pts: HashSet<_> = enumerate_points(&s, &lam).unwrap().into_iter().collect();
        let mut brute = HashSet::new();
        for a in 0..=6u32 {
            for b in 0..=6u32 {
                for c in 0..=6u32 {
                    for d in 0..=6u32 {
                        let e = MultiExponent(vec![a, b, c, d]);
                        if contains(&s, &lam, &e).unwrap() {
                            brute.insert(e);
                        }
                    }
                }
            }
        }
        assert_eq!(pts, brute);
    }

    #[test]
    fn character_counts_points() {
        let s = sys(Family::A, 1);
        let ch = graded_character(&s, &DominantWeight(vec![2])).unwrap();
        assert_eq!(ch.entries.get(&vec![0]).unwrap(), &vec![1]);
        assert_eq!(ch.entries.get(&vec![1]).unwrap(), &vec![0, 1]);
        assert_eq!(ch.entries.get(&vec![2]).unwrap(), &vec![0, 0, 1]);
        assert_eq!(ch.total(), 3);
    }

    #[test]
    fn character_c2_21_pinned_entries() {
        let s = sys(Family::C, 2);
        let ch = graded_character(&s, &DominantWeight(vec![2, 1])).unwrap();
        assert_eq!(ch.entries.get(&vec![3, 1]), Some(&vec![0, 0, 1, 1]));
        assert_eq!(ch.entries.get(&vec![4, 2]), Some(&vec![0, 0, 1, 1, 1]));
        // outside the support of the weight lattice of this module
        assert_eq!(ch.entries.get(&vec![2, 4]), None);
    }

    #[test]
    fn character_total_equals_point_count() {
        for (f, n, m) in [(Family::A, 2, vec![2, 1]), (Family::C, 2, vec![1, 2])] {
            let s = sys(f, n);
            let lam = DominantWeight(m);
            let ch = graded_character(&s, &lam).unwrap();
            assert_eq!(ch.total() as usize, enumerate_points(&s, &lam).unwrap().len());
        }
    }

    #[test]
    fn minkowski_with_zero_weight() {
        let s = sys(Family::C, 2);
        let rep = minkowski_subset(&s, &DominantWeight(vec![1, 2]), &DominantWeight(vec![0, 0]))
            .unwrap();
        assert!(rep.subset);
        assert_eq!(rep.equality, Some(true));
        assert_eq!(rep.points_mu, 1);
    }

    #[test]
    fn minkowski_examples() {
        let a2 = sys(Family::A, 2);
        let rep = minkowski_subset(&a2, &DominantWeight(vec![1, 0]), &DominantWeight(vec![0, 1]))
            .unwrap();
        assert!(rep.subset);
        let c2 = sys(Family::C, 2);
        let rep = minkowski_subset(&c2, &DominantWeight(vec![1, 0]), &DominantWeight(vec![1, 1]))
            .unwrap();
        assert!(rep.subset);
    }

    #[test]
    fn additivity_of_membership() {
        // contains(lambda, s) and contains(mu, t) imply contains(lambda+mu, s+t).
        let s = sys(Family::C, 2);
        let lam = DominantWeight(vec![1, 1]);
        let mu = DominantWeight(vec![1, 0]);
        let tot = DominantWeight(vec![2, 1]);
        for a in enumerate_points(&s, &lam).unwrap() {
            for b in enumerate_points(&s, &mu).unwrap() {
                let sum = MultiExponent(a.0.iter().zip(&b.0).map(|(&x, &y)| x + y).collect());
                assert!(contains(&s, &tot, &sum).unwrap());
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn sparse_exp() -> impl Strategy<Value = Vec<u32>> {
            prop::collection::vec(prop_oneof![4 => Just(0u32), 1 => 1u32..3], 9)
        }

        proptest! {
            #[test]
            fn membership_is_additive_in_the_weight(
                lam in prop::collection::vec(0u32..3, 3),
                mu in prop::collection::vec(0u32..3, 3),
                s in sparse_exp(),
                t in sparse_exp(),
            ) {
                let sys = RootSystem::new(Family::C, 3).unwrap();
                let lam = DominantWeight(lam);
                let mu = DominantWeight(mu);
                let s = MultiExponent(s);
                let t = MultiExponent(t);
                if contains(&sys, &lam, &s).unwrap() && contains(&sys, &mu, &t).unwrap() {
                    let tot = DominantWeight(
                        lam.0.iter().zip(&mu.0).map(|(a, b)| a + b).collect(),
                    );
                    let sum = MultiExponent(
                        s.0.iter().zip(&t.0).map(|(a, b)| a + b).collect(),
                    );
                    prop_assert!(contains(&sys, &tot, &sum).unwrap());
                }
            }
        }
    }
}
