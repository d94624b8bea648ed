//! Straightening: rewriting an arbitrary divided-power monomial as an
//! integer combination of basis monomials.
//!
//! A monomial violating a path inequality is the leading term of an
//! explicit element in the annihilator of the highest weight vector,
//! obtained by applying a word of lowering operators to a single high
//! power of the top root of the path window.  Subtracting that element and
//! multiplying the off-path factors back strictly decreases the monomial
//! order at fixed degree, so iterating terminates in the basis.
//!
//! Family A uses the homogeneous lexicographic order on the row-major
//! variable order; family C refines degree first by the tuple of row sums
//! (smaller tuple = greater monomial) and then by homogeneous lex.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::dpalg::DpPolynomial;
use crate::dyck::{path_system, DyckPath, PathSystem};
use crate::partials::apply_signed;
use crate::polytope::{DominantWeight, MultiExponent};
use crate::rootsys::{ColumnIndex, Family, PositiveRoot, RootSystem};
use crate::Error;

/// The monomial order of a family, ready to compare exponent vectors.
#[derive(Clone, Debug)]
pub struct MonomialOrder {
    family: Family,
    rank: u32,
    rows: Vec<u32>,
}

impl MonomialOrder {
    pub fn new(sys: &RootSystem) -> MonomialOrder {
        MonomialOrder {
            family: sys.family(),
            rank: sys.rank(),
            rows: sys.positive_roots().iter().map(|r| r.row).collect(),
        }
    }

    /// `Greater` when `s` is strictly greater than `t` in the order used
    /// for straightening (degree first, then the family-specific refinement).
    pub fn compare(&self, s: &MultiExponent, t: &MultiExponent) -> Ordering {
        assert_eq!(s.0.len(), self.rows.len());
        assert_eq!(t.0.len(), self.rows.len());
        match s.degree().cmp(&t.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        if self.family == Family::C {
            // smaller row-sum tuple wins
            match self.d_stat_raw(&s.0).cmp(&self.d_stat_raw(&t.0)) {
                Ordering::Equal => {}
                ord => return ord.reverse(),
            }
        }
        // homogeneous lex: scan variables from the largest down
        for idx in (0..s.0.len()).rev() {
            match s.0[idx].cmp(&t.0[idx]) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    fn d_stat_raw(&self, exp: &[u32]) -> Vec<u64> {
        let mut sums = vec![0u64; self.rank as usize];
        for (idx, &v) in exp.iter().enumerate() {
            sums[self.rank as usize - self.rows[idx] as usize] += v as u64;
        }
        sums
    }

    /// Sort key such that the natural `Ord` on keys agrees with the
    /// monomial order restricted to a fixed degree.
    fn key(&self, exp: &[u32]) -> (Reverse<Vec<u64>>, Vec<u32>) {
        let d = if self.family == Family::C { self.d_stat_raw(exp) } else { Vec::new() };
        let mut rev = exp.to_vec();
        rev.reverse();
        (Reverse(d), rev)
    }
}

/// The tuple of row sums `(s_{n,.}, ..., s_{1,.})` refining the family-C
/// order.
pub fn d_stat(sys: &RootSystem, s: &MultiExponent) -> Result<Vec<u64>, Error> {
    if sys.family() != Family::C {
        return Err(Error::WrongFamily("d_stat"));
    }
    s.validate(sys)?;
    Ok(MonomialOrder::new(sys).d_stat_raw(&s.0))
}

/// First path (in canonical path order) whose inequality `s` violates;
/// `None` iff `s` is a polytope point.
pub fn find_violation(
    sys: &RootSystem,
    lambda: &DominantWeight,
    s: &MultiExponent,
) -> Result<Option<DyckPath>, Error> {
    lambda.validate(sys)?;
    s.validate(sys)?;
    let ps = path_system(sys);
    Ok(find_violation_idx(&ps, &lambda.0, &s.0).map(|k| ps.paths[k].clone()))
}

fn find_violation_idx(ps: &PathSystem, weight: &[u32], s: &[u32]) -> Option<usize> {
    ps.inequalities.iter().position(|ineq| {
        let sum: i64 = ineq.root_ids.iter().map(|&rid| s[rid] as i64).sum();
        sum > ineq.bound(weight)
    })
}

/// The annihilator element attached to a violated path.
///
/// `sprime` must be supported on the path and its total must exceed the
/// path bound.  The result is homogeneous of that total degree; its
/// greatest term is exactly `f^(sprime)` with coefficient one and all other
/// terms are strictly smaller.
pub fn straightening_element(
    sys: &RootSystem,
    lambda: &DominantWeight,
    path: &DyckPath,
    sprime: &MultiExponent,
) -> Result<DpPolynomial, Error> {
    lambda.validate(sys)?;
    sprime.validate(sys)?;
    let ineq = crate::dyck::path_inequality(sys, path)?;
    let on_path = |idx: usize| ineq.root_ids.contains(&idx);
    for (idx, &v) in sprime.0.iter().enumerate() {
        if v > 0 && !on_path(idx) {
            return Err(Error::Precondition(format!(
                "exponent must be supported on the path, but {} is off it",
                sys.root(idx).token()
            )));
        }
    }
    let sigma: i64 = sprime.0.iter().map(|&v| v as i64).sum();
    if sigma <= ineq.bound(&lambda.0) {
        return Err(Error::Precondition(format!(
            "path sum {sigma} does not exceed the bound {}",
            ineq.bound(&lambda.0)
        )));
    }

    let element = build_element(sys, path, sprime, sigma as u32);

    // Normalize the sign so the leading coefficient is +1, and check the
    // contract: homogeneous, leading term sprime, unimodular.
    let order = MonomialOrder::new(sys);
    assert!(element.is_homogeneous_of_degree(sigma as u64), "straightening element not homogeneous");
    let lead = element
        .terms()
        .max_by(|(a, _), (b, _)| {
            order.compare(&MultiExponent((*a).clone()), &MultiExponent((*b).clone()))
        })
        .map(|(e, c)| (e.clone(), c.clone()))
        .expect("straightening element is non-zero");
    assert_eq!(lead.0, sprime.0, "leading term of the straightening element");
    assert!(lead.1.abs().is_one(), "leading coefficient must be unimodular");
    Ok(if lead.1.is_negative() { element.scale(&BigInt::from(-1)) } else { element })
}

/// Applies the operator word for the path to the starting power, with the
/// signed operators (so the result genuinely lies in the annihilator).
fn build_element(
    sys: &RootSystem,
    path: &DyckPath,
    sprime: &MultiExponent,
    sigma: u32,
) -> DpPolynomial {
    let first = sys.canonicalize(path.roots[0]);
    let last = sys.canonicalize(*path.roots.last().unwrap());
    let i0 = first.row;
    let n = sys.rank();

    // column and row sums of the supported exponent
    let mut col_plain = vec![0u32; n as usize + 1]; // 1-based
    let mut col_barred = vec![0u32; n as usize + 1];
    let mut row_sum = vec![0u32; n as usize + 1];
    for (idx, &v) in sprime.0.iter().enumerate() {
        if v == 0 {
            continue;
        }
        let r = sys.root(idx);
        row_sum[r.row as usize] += v;
        match r.col {
            ColumnIndex::Plain(j) => col_plain[j as usize] += v,
            ColumnIndex::Barred(j) => col_barred[j as usize] += v,
        }
    }
    let col_sum = |c: ColumnIndex| -> u32 {
        match c {
            ColumnIndex::Plain(j) => col_plain[j as usize],
            ColumnIndex::Barred(j) if j == n => col_plain[n as usize],
            ColumnIndex::Barred(j) => col_barred[j as usize],
        }
    };

    let root_id = |row: u32, col: ColumnIndex| -> usize {
        sys.root_index(sys.canonicalize(PositiveRoot { row, col })).unwrap()
    };
    let apply_word = |start: usize, word: &[(usize, u32)]| -> DpPolynomial {
        let mut e = MultiExponent::zero(sys);
        e.0[start] = sigma;
        let mut acc = DpPolynomial::monomial(&e, BigInt::one());
        for &(alpha, k) in word {
            if k > 0 {
                acc = apply_signed(sys, alpha, k, &acc);
            }
        }
        acc
    };

    let plain_end = matches!(last.col, ColumnIndex::Plain(j) if sys.is_simple(last) && (sys.family() == Family::A || j < n));
    if plain_end {
        // window [i0 .. j], all plain columns
        let j = last.col.letter();
        let mut word = Vec::new();
        for l in i0 + 1..=j {
            word.push((root_id(l, ColumnIndex::Plain(j)), col_sum(ColumnIndex::Plain(l - 1))));
        }
        for w in (i0 + 1..=j).rev() {
            word.push((root_id(i0, ColumnIndex::Plain(w - 1)), row_sum[w as usize]));
        }
        return apply_word(root_id(i0, ColumnIndex::Plain(j)), &word);
    }

    // barred-ended path a[e,~e] (including a[n,n])
    let e = last.row;
    let mut word = Vec::new();
    for t in i0..e {
        word.push((root_id(i0, ColumnIndex::Barred(t + 1)), col_sum(ColumnIndex::Plain(t))));
    }
    for q in e..n {
        let k = col_sum(ColumnIndex::Plain(q)) + col_sum(ColumnIndex::Barred(q + 1));
        word.push((root_id(i0, ColumnIndex::Plain(q)), k));
    }
    for t in (e + 1..=n).rev() {
        word.push((root_id(t, ColumnIndex::Barred(t)), col_sum(ColumnIndex::Plain(t - 1))));
    }
    if e > i0 {
        let k = col_sum(ColumnIndex::Barred(e)) + row_sum[e as usize];
        word.push((root_id(i0, ColumnIndex::Plain(e - 1)), k));
    }
    for w in (i0 + 1..e).rev() {
        word.push((root_id(i0, ColumnIndex::Plain(w - 1)), row_sum[w as usize]));
    }
    apply_word(root_id(i0, ColumnIndex::Barred(i0)), &word)
}

/// Rewrites `f^(s) v_lambda` over the basis monomials: returns the
/// coefficient of each basis exponent.  Total on every input; an exponent
/// already in the polytope returns itself with coefficient one, and inputs
/// whose rewriting collapses entirely (like too-high powers of a single
/// root) return the empty map.
pub fn reduce_to_basis(
    sys: &RootSystem,
    lambda: &DominantWeight,
    s: &MultiExponent,
) -> Result<BTreeMap<Vec<u32>, BigInt>, Error> {
    lambda.validate(sys)?;
    s.validate(sys)?;
    let ps = path_system(sys);
    let order = MonomialOrder::new(sys);
    let mut elements: HashMap<(usize, Vec<u32>), DpPolynomial> = HashMap::new();

    let mut work: BTreeMap<(Reverse<Vec<u64>>, Vec<u32>), BigInt> = BTreeMap::new();
    work.insert(order.key(&s.0), BigInt::one());
    let mut result: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();

    // Any strictly decreasing chain at fixed degree is bounded by the
    // number of monomials of that degree; a hard cap guards the loop
    // against an implementation bug breaking well-foundedness.
    let cap = monomial_count_cap(s.degree(), sys.num_roots());
    let mut steps: u64 = 0;

    while let Some((key, coeff)) = work.pop_last() {
        steps += 1;
        assert!(steps <= cap, "straightening failed to terminate within the monomial bound");
        if coeff.is_zero() {
            continue;
        }
        let mut exp = key.1.clone();
        exp.reverse();
        match find_violation_idx(&ps, &lambda.0, &exp) {
            None => {
                *result.entry(exp).or_insert_with(BigInt::zero) += &coeff;
            }
            Some(pidx) => {
                let ineq = &ps.inequalities[pidx];
                let mut on_path = vec![false; sys.num_roots()];
                for &rid in &ineq.root_ids {
                    on_path[rid] = true;
                }
                let sprime: Vec<u32> =
                    exp.iter().enumerate().map(|(i, &v)| if on_path[i] { v } else { 0 }).collect();
                let rest: Vec<u32> =
                    exp.iter().enumerate().map(|(i, &v)| if on_path[i] { 0 } else { v }).collect();
                let element = elements
                    .entry((pidx, sprime.clone()))
                    .or_insert_with(|| {
                        straightening_element(
                            sys,
                            lambda,
                            &ps.paths[pidx],
                            &MultiExponent(sprime.clone()),
                        )
                        .expect("violated path yields a straightening element")
                    })
                    .clone();
                // f^(exp) = f^(sprime) f^(rest) (disjoint supports), and
                // f^(sprime) - element is a sum of strictly smaller terms.
                let reduced = DpPolynomial::monomial(&MultiExponent(sprime), BigInt::one())
                    .sub(&element)
                    .mul(&DpPolynomial::monomial(&MultiExponent(rest), BigInt::one()));
                for (t, c) in reduced.terms() {
                    debug_assert_eq!(
                        order.compare(&MultiExponent(t.clone()), &MultiExponent(exp.clone())),
                        Ordering::Less,
                        "replacement terms must strictly decrease"
                    );
                    let entry = work.entry(order.key(t)).or_insert_with(BigInt::zero);
                    *entry += c * &coeff;
                }
            }
        }
    }
    result.retain(|_, v| !v.is_zero());
    Ok(result)
}

fn monomial_count_cap(degree: u64, nvars: usize) -> u64 {
    // C(degree + nvars - 1, nvars - 1), saturating
    let mut acc: u128 = 1;
    for i in 1..nvars as u128 {
        acc = acc.saturating_mul(degree as u128 + i) / i;
        if acc > u64::MAX as u128 / 4 {
            return u64::MAX;
        }
    }
    (acc as u64).saturating_add(4)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(f: Family, n: u32) -> RootSystem {
        RootSystem::new(f, n).unwrap()
    }

    fn me(v: &[u32]) -> MultiExponent {
        MultiExponent(v.to_vec())
    }

    #[test]
    fn d_stat_examples() {
        let c2 = sys(Family::C, 2);
        assert_eq!(d_stat(&c2, &me(&[1, 2, 1, 0])).unwrap(), vec![0, 4]);
        assert_eq!(d_stat(&c2, &me(&[0, 0, 0, 0])).unwrap(), vec![0, 0]);
        let c3 = sys(Family::C, 3);
        let mut e = MultiExponent::zero(&c3);
        e.0[c3.root_index(PositiveRoot::parse_token("a[2,2]").unwrap()).unwrap()] = 5;
        assert_eq!(d_stat(&c3, &e).unwrap(), vec![0, 5, 0]);
        assert!(d_stat(&sys(Family::A, 2), &me(&[0, 0, 0])).is_err());
    }

    #[test]
    fn compare_rules() {
        let c2 = sys(Family::C, 2);
        let ord = MonomialOrder::new(&c2);
        // degree dominates
        assert_eq!(ord.compare(&me(&[2, 1, 0, 0]), &me(&[0, 0, 0, 2])), Ordering::Greater);
        // equal degree: smaller d wins; d([1,2,1,0]) = (0,4) < d([0,2,1,1]) = (1,3)
        assert_eq!(ord.compare(&me(&[1, 2, 1, 0]), &me(&[0, 2, 1, 1])), Ordering::Greater);
        assert_eq!(ord.compare(&me(&[1, 1, 0, 0]), &me(&[1, 1, 0, 0])), Ordering::Equal);
        // same degree and d: homogeneous lex on the variable order
        assert_eq!(ord.compare(&me(&[1, 0, 1, 0]), &me(&[0, 2, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn order_is_total_and_monomial() {
        let c2 = sys(Family::C, 2);
        let ord = MonomialOrder::new(&c2);
        let mut exps = Vec::new();
        for a in 0..3u32 {
            for b in 0..3u32 {
                for c in 0..3u32 {
                    for d in 0..3u32 {
                        exps.push(vec![a, b, c, d]);
                    }
                }
            }
        }
        for s in &exps {
            for t in &exps {
                let st = ord.compare(&me(s), &me(t));
                assert_eq!(st == Ordering::Equal, s == t);
                assert_eq!(st.reverse(), ord.compare(&me(t), &me(s)));
                // monomial order property against a fixed shift
                let m = vec![1, 0, 2, 1];
                let sm: Vec<u32> = s.iter().zip(&m).map(|(a, b)| a + b).collect();
                let tm: Vec<u32> = t.iter().zip(&m).map(|(a, b)| a + b).collect();
                assert_eq!(st, ord.compare(&me(&sm), &me(&tm)));
            }
        }
    }

    #[test]
    fn violation_detection() {
        let a2 = sys(Family::A, 2);
        let lam = DominantWeight(vec![1, 1]);
        assert!(find_violation(&a2, &lam, &me(&[1, 1, 0])).unwrap().is_none());
        let path = find_violation(&a2, &lam, &me(&[1, 1, 1])).unwrap().unwrap();
        assert_eq!(path.tokens(), "a[1,1] a[1,2] a[2,2]");
        let a1 = sys(Family::A, 1);
        let path = find_violation(&a1, &DominantWeight(vec![1]), &me(&[2])).unwrap().unwrap();
        assert_eq!(path.tokens(), "a[1,1]");
    }

    #[test]
    fn element_for_single_root_path() {
        // the generator relation itself: empty operator word
        let a1 = sys(Family::A, 1);
        let lam = DominantWeight(vec![3]);
        let path = DyckPath { roots: vec![PositiveRoot::parse_token("a[1,1]").unwrap()] };
        let el = straightening_element(&a1, &lam, &path, &me(&[4])).unwrap();
        assert_eq!(el, DpPolynomial::monomial(&me(&[4]), BigInt::one()));
    }

    #[test]
    fn element_full_a2_path() {
        let a2 = sys(Family::A, 2);
        let lam = DominantWeight(vec![1, 1]);
        let path = find_violation(&a2, &lam, &me(&[1, 1, 1])).unwrap().unwrap();
        let el = straightening_element(&a2, &lam, &path, &me(&[1, 1, 1])).unwrap();
        assert!(el.is_homogeneous_of_degree(3));
        assert_eq!(el.coefficient(&[1, 1, 1]), BigInt::one());
    }

    #[test]
    fn element_barred_c2_path_at_zero_weight() {
        let c2 = sys(Family::C, 2);
        let lam = DominantWeight(vec![0, 0]);
        let path = DyckPath {
            roots: vec![
                PositiveRoot::parse_token("a[1,1]").unwrap(),
                PositiveRoot::parse_token("a[1,2]").unwrap(),
                PositiveRoot::parse_token("a[1,~1]").unwrap(),
            ],
        };
        let el = straightening_element(&c2, &lam, &path, &me(&[1, 1, 1, 0])).unwrap();
        assert!(el.is_homogeneous_of_degree(3));
        assert_eq!(el.coefficient(&[1, 1, 1, 0]), BigInt::one());
    }

    #[test]
    fn element_rejects_bad_support() {
        let a2 = sys(Family::A, 2);
        let lam = DominantWeight(vec![0, 1]);
        let path = DyckPath { roots: vec![PositiveRoot::parse_token("a[1,1]").unwrap()] };
        assert!(straightening_element(&a2, &lam, &path, &me(&[1, 0, 1])).is_err());
        // not exceeding the bound
        assert!(straightening_element(&a2, &lam, &path, &me(&[0, 0, 0])).is_err());
    }

    #[test]
    fn reduce_inside_polytope_is_identity() {
        let c2 = sys(Family::C, 2);
        let lam = DominantWeight(vec![2, 1]);
        let s = me(&[2, 1, 0, 0]);
        let red = reduce_to_basis(&c2, &lam, &s).unwrap();
        assert_eq!(red.len(), 1);
        assert_eq!(red.get(&s.0[..].to_vec()), Some(&BigInt::one()));
    }

    #[test]
    fn reduce_sl2_power_to_zero() {
        let a1 = sys(Family::A, 1);
        let red = reduce_to_basis(&a1, &DominantWeight(vec![1]), &me(&[2])).unwrap();
        assert!(red.is_empty());
    }

    #[test]
    fn reduce_stays_in_polytope_and_grading() {
        let c2 = sys(Family::C, 2);
        let lam = DominantWeight(vec![1, 1]);
        let s = me(&[2, 1, 1, 0]);
        let red = reduce_to_basis(&c2, &lam, &s).unwrap();
        for (t, c) in &red {
            assert!(!c.is_zero());
            let t = MultiExponent(t.clone());
            assert!(crate::polytope::contains(&c2, &lam, &t).unwrap());
            assert_eq!(t.degree(), s.degree());
            assert_eq!(t.weight_drop(&c2), s.weight_drop(&c2));
        }
        // idempotence on every output term
        for t in red.keys() {
            let again = reduce_to_basis(&c2, &lam, &MultiExponent(t.clone())).unwrap();
            assert_eq!(again.len(), 1);
            assert_eq!(again.get(t), Some(&BigInt::one()));
        }
    }
}
