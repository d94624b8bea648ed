//! Independent ground truth for the combinatorial side: Weyl dimensions,
//! Freudenthal weight multiplicities, explicit modules with their
//! filtration, and basis verification over the rationals and the integers.

pub mod chevalley;
pub mod linalg;
pub mod module;
pub mod suites;

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::oracle::chevalley::{rank2_expansion, Rank2Term};
use crate::oracle::linalg::{is_integral, solve_in_columns};
use crate::oracle::module::{eps_diff_to_simple, ExplicitModule};
use crate::polytope::{DominantWeight, MultiExponent};
use crate::rootsys::{Family, RootSystem};
use crate::Error;

/// Default cap on the module dimension for [`build_module`]; override with
/// the `PBWBASIS_DIM_CAP` environment variable.
pub const DEFAULT_DIM_CAP: u64 = 2000;

pub fn dim_cap_from_env() -> u64 {
    std::env::var("PBWBASIS_DIM_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_DIM_CAP)
}

/// Epsilon coordinates of `lambda + rho` (for `lambda = 0` this is
/// `rho = (n, n-1, ..)`).  For family A these are the natural `gl`-style
/// coordinates of length `n + 1`.
fn lambda_plus_rho_eps(sys: &RootSystem, lambda: &[u32], rho: bool) -> Vec<i64> {
    let n = sys.rank() as usize;
    let len = if sys.family() == Family::A { n + 1 } else { n };
    let mut eps = vec![0i64; len];
    for i in 0..n {
        let v = lambda.get(i).copied().unwrap_or(0) as i64 + i64::from(rho);
        for e in eps.iter_mut().take(i + 1) {
            *e += v;
        }
    }
    eps
}

/// Exact dimension of the irreducible module by the Weyl product formula.
pub fn weyl_dim(sys: &RootSystem, lambda: &DominantWeight) -> Result<BigUint, Error> {
    lambda.validate(sys)?;
    let lr = lambda_plus_rho_eps(sys, &lambda.0, true);
    let rho = lambda_plus_rho_eps(sys, &[], true);
    let pairing = |eps_root: &[i64], w: &[i64]| -> i64 {
        // <w, beta^vee> up to the fixed positive normalization per length;
        // the same factor appears in numerator and denominator.
        eps_root.iter().zip(w).map(|(a, b)| a * b).sum()
    };
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for idx in 0..sys.num_roots() {
        let beta = sys.epsilon(idx);
        let up = pairing(beta, &lr);
        let lo = pairing(beta, &rho);
        assert!(up > 0 && lo > 0);
        num *= BigUint::from(up as u64);
        den *= BigUint::from(lo as u64);
    }
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "Weyl dimension must be an integer");
    Ok(q)
}

/// Exact weight multiplicities of the irreducible module, keyed by weight
/// drop in simple-root coordinates.  Only non-zero multiplicities appear.
pub fn freudenthal(sys: &RootSystem, lambda: &DominantWeight) -> Result<BTreeMap<Vec<i64>, u64>, Error> {
    lambda.validate(sys)?;
    let n = sys.rank() as usize;
    let lam_eps = lambda_plus_rho_eps(sys, &lambda.0, false);
    let lr = lambda_plus_rho_eps(sys, &lambda.0, true);
    let dot = |a: &[i64], b: &[i64]| -> i64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };

    // box of candidate drops: coordinates of lambda - w0(lambda)
    let lowest_eps: Vec<i64> = match sys.family() {
        Family::A => lam_eps.iter().rev().copied().collect(),
        Family::C => lam_eps.iter().map(|&v| -v).collect(),
    };
    let diff: Vec<i64> = lam_eps.iter().zip(&lowest_eps).map(|(a, b)| a - b).collect();
    let maxdrop = eps_diff_to_simple(sys.family(), sys.rank(), &diff);

    let coords: Vec<Vec<i64>> =
        (0..sys.num_roots()).map(|i| sys.to_simple_coords(sys.root(i)).unwrap()).collect();

    // enumerate the box by increasing height so dependencies are ready
    let mut cells: Vec<Vec<i64>> = vec![vec![]];
    for d in 0..n {
        let mut next = Vec::new();
        for cell in &cells {
            for v in 0..=maxdrop[d] {
                let mut c = cell.clone();
                c.push(v);
                next.push(c);
            }
        }
        cells = next;
    }
    cells.sort_by_key(|c| c.iter().sum::<i64>());

    let eps_of_drop = |drop: &[i64]| -> Vec<i64> {
        // lambda - sum c_i alpha_i in epsilon coordinates
        let mut eps = lam_eps.clone();
        match sys.family() {
            Family::A => {
                for (i, &c) in drop.iter().enumerate() {
                    eps[i] -= c;
                    eps[i + 1] += c;
                }
            }
            Family::C => {
                for (i, &c) in drop.iter().enumerate() {
                    if i + 1 < n {
                        eps[i] -= c;
                        eps[i + 1] += c;
                    } else {
                        eps[i] -= 2 * c;
                    }
                }
            }
        }
        eps
    };

    let norm_lr = dot(&lr, &lr);
    let mut mult: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    mult.insert(vec![0; n], 1);
    for cell in &cells {
        if cell.iter().all(|&v| v == 0) {
            continue;
        }
        let mu_eps = eps_of_drop(cell);
        let mut numer: i64 = 0;
        for (ridx, beta_coords) in coords.iter().enumerate() {
            let beta_eps = sys.epsilon(ridx);
            let mut k = 1i64;
            loop {
                let upper: Vec<i64> =
                    cell.iter().zip(beta_coords).map(|(c, b)| c - k * b).collect();
                if upper.iter().any(|&v| v < 0) {
                    break;
                }
                if let Some(&m) = mult.get(&upper) {
                    if m > 0 {
                        let mut up_eps = mu_eps.clone();
                        for (e, b) in up_eps.iter_mut().zip(beta_eps) {
                            *e += k * b;
                        }
                        numer += m * dot(&up_eps, beta_eps);
                    }
                }
                k += 1;
            }
        }
        if numer == 0 {
            continue;
        }
        let mu_rho: Vec<i64> = {
            let rho = lambda_plus_rho_eps(sys, &[], true);
            mu_eps.iter().zip(&rho).map(|(a, b)| a + b).collect()
        };
        let denom = norm_lr - dot(&mu_rho, &mu_rho);
        assert!(denom > 0, "Freudenthal denominator must be positive off the highest weight");
        assert_eq!((2 * numer) % denom, 0, "Freudenthal multiplicity must be integral");
        let m = 2 * numer / denom;
        if m > 0 {
            mult.insert(cell.clone(), m);
        }
    }
    Ok(mult.into_iter().map(|(k, v)| (k, v as u64)).collect())
}

/// One row of the rank-2 adjoint table: the expansion of the `k`-th divided
/// adjoint power applied to the `m`-th divided power of the long end of the
/// `C_2` string, normalized so the leading coefficient is one.
pub fn rank2_ad(k: u32, m: u32) -> Result<Vec<Rank2Term>, Error> {
    if k > m {
        return Err(Error::Precondition(format!("rank2_ad requires k <= m, got ({k}, {m})")));
    }
    Ok(rank2_expansion(k, m).as_ref().clone())
}

/// Builds the explicit module, honoring the dimension cap.
pub fn build_module(sys: &RootSystem, lambda: &DominantWeight) -> Result<ExplicitModule, Error> {
    build_module_with_cap(sys, lambda, dim_cap_from_env())
}

pub fn build_module_with_cap(
    sys: &RootSystem,
    lambda: &DominantWeight,
    cap: u64,
) -> Result<ExplicitModule, Error> {
    let dim = weyl_dim(sys, lambda)?;
    if dim > BigUint::from(cap) {
        return Err(Error::CapExceeded { dim, cap });
    }
    let module = ExplicitModule::new(sys, lambda)?;
    assert_eq!(
        BigUint::from(module.dim as u64),
        dim,
        "cyclic span dimension must match the Weyl dimension"
    );
    Ok(module)
}

/// Report of [`verify_basis`].
#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub dim: u64,
    pub candidate_count: u64,
    pub independent: bool,
    pub count_matches: bool,
    pub integral: bool,
    pub sampled: u64,
}

impl BasisReport {
    pub fn passed(&self) -> bool {
        self.independent && self.count_matches && self.integral
    }
}

/// Checks that the polytope monomials applied to the highest weight vector
/// form a basis of the explicit module, and that the coordinates of sampled
/// arbitrary divided-power monomials in that candidate basis are integers.
pub fn verify_basis(
    sys: &RootSystem,
    lambda: &DominantWeight,
    samples: u64,
    seed: u64,
) -> Result<BasisReport, Error> {
    let module = build_module(sys, lambda)?;
    let points = crate::polytope::enumerate_points(sys, lambda)?;
    verify_basis_in(sys, &module, &points, samples, seed)
}

pub fn verify_basis_in(
    sys: &RootSystem,
    module: &ExplicitModule,
    points: &[MultiExponent],
    samples: u64,
    seed: u64,
) -> Result<BasisReport, Error> {
    // group candidate vectors per weight drop
    let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    let mut missing = false;
    let mut columns: BTreeMap<Vec<i64>, Vec<Vec<num_rational::BigRational>>> = BTreeMap::new();
    for (pi, p) in points.iter().enumerate() {
        let drop = p.weight_drop(sys);
        match module.vector_of(&p.0) {
            Some(v) => {
                groups.entry(drop.clone()).or_default().push(pi);
                columns.entry(drop).or_default().push(module.to_dense(v));
            }
            None => missing = true, // f^(s) v = 0: cannot be part of a basis
        }
    }
    let mut independent = !missing;
    if independent {
        for cols in columns.values() {
            let mut ech = linalg::Echelon::new();
            let mut rank = 0;
            for c in cols {
                if ech.insert(c.clone()) {
                    rank += 1;
                }
            }
            if rank != cols.len() {
                independent = false;
                break;
            }
        }
    }
    let count_matches = points.len() == module.dim;

    // integrality of sampled coordinates in the candidate basis
    let mut integral = independent && count_matches;
    let mut sampled = 0;
    if integral && !module.monomials.is_empty() {
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..samples {
            let pick = rng.gen_range(0..module.monomials.len());
            let mono = &module.monomials[pick];
            sampled += 1;
            let Some(cols) = columns.get(&mono.drop) else {
                integral = false;
                break;
            };
            let b = module.to_dense(&mono.vec);
            match solve_in_columns(cols, &b) {
                Some(x) => {
                    if !is_integral(&x) {
                        integral = false;
                        break;
                    }
                }
                None => {
                    integral = false;
                    break;
                }
            }
        }
    }

    Ok(BasisReport {
        dim: module.dim as u64,
        candidate_count: points.len() as u64,
        independent,
        count_matches,
        integral,
        sampled,
    })
}

/// Graded character from the module side, as drop -> coefficient list.
pub fn pbw_poincare(module: &ExplicitModule) -> BTreeMap<Vec<i64>, Vec<u64>> {
    module.pbw_poincare()
}

/// Evaluates a straightening identity inside the explicit module: checks
/// that `f^(s) v - sum c_t f^(t) v` lies in the span of strictly lower
/// filtration degree (that is, equality holds in the graded module).
pub fn check_reduction_in_module(
    sys: &RootSystem,
    module: &ExplicitModule,
    s: &MultiExponent,
    reduction: &BTreeMap<Vec<u32>, BigInt>,
) -> bool {
    let drop = s.weight_drop(sys);
    let degree = s.degree();
    let mut diff: BTreeMap<usize, BigInt> = module
        .apply_monomial(&s.0, &module.vlambda)
        .into_iter()
        .collect();
    for (t, c) in reduction {
        let tv = module.apply_monomial(t, &module.vlambda);
        for (idx, v) in tv {
            let entry = diff.entry(idx).or_insert_with(BigInt::zero);
            *entry -= c * v;
            if entry.is_zero() {
                diff.remove(&idx);
            }
        }
    }
    if diff.is_empty() {
        return true;
    }
    if degree == 0 {
        return false;
    }
    let span = module.filtration_span(&drop, degree - 1);
    span.contains(module.to_dense(&diff))
}

/// True when the polynomial annihilates the highest weight vector in the
/// graded module (its value lands in strictly lower filtration degree).
pub fn annihilates_graded(
    sys: &RootSystem,
    module: &ExplicitModule,
    poly: &crate::dpalg::DpPolynomial,
) -> bool {
    let mut by_degree: BTreeMap<u64, BTreeMap<usize, BigInt>> = BTreeMap::new();
    let mut drops: BTreeMap<u64, Vec<i64>> = BTreeMap::new();
    for (exp, c) in poly.terms() {
        let me = MultiExponent(exp.clone());
        let deg = me.degree();
        drops.entry(deg).or_insert_with(|| me.weight_drop(sys));
        let acc = by_degree.entry(deg).or_default();
        for (idx, v) in module.apply_monomial(exp, &module.vlambda) {
            let entry = acc.entry(idx).or_insert_with(BigInt::zero);
            *entry += c * v;
            if entry.is_zero() {
                acc.remove(&idx);
            }
        }
    }
    for (deg, acc) in by_degree {
        if acc.is_empty() {
            continue;
        }
        if deg == 0 {
            return false;
        }
        let span = module.filtration_span(&drops[&deg], deg - 1);
        if !span.contains(module.to_dense(&acc)) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(f: Family, n: u32) -> RootSystem {
        RootSystem::new(f, n).unwrap()
    }

    fn w(v: &[u32]) -> DominantWeight {
        DominantWeight(v.to_vec())
    }

    #[test]
    fn weyl_dims() {
        let a2 = sys(Family::A, 2);
        assert_eq!(weyl_dim(&a2, &w(&[1, 1])).unwrap(), BigUint::from(8u32));
        let c2 = sys(Family::C, 2);
        assert_eq!(weyl_dim(&c2, &w(&[2, 1])).unwrap(), BigUint::from(35u32));
        assert_eq!(weyl_dim(&c2, &w(&[1, 1])).unwrap(), BigUint::from(16u32));
        assert_eq!(weyl_dim(&c2, &w(&[0, 0])).unwrap(), BigUint::one());
        let a3 = sys(Family::A, 3);
        assert_eq!(weyl_dim(&a3, &w(&[1, 0, 1])).unwrap(), BigUint::from(15u32));
    }

    #[test]
    fn freudenthal_adjoint_sl3() {
        let a2 = sys(Family::A, 2);
        let mult = freudenthal(&a2, &w(&[1, 1])).unwrap();
        assert_eq!(mult.get(&vec![0, 0]), Some(&1));
        assert_eq!(mult.get(&vec![1, 1]), Some(&2));
        let total: u64 = mult.values().sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn freudenthal_totals_match_weyl() {
        for (f, n, lam) in [
            (Family::A, 2, vec![2, 1]),
            (Family::A, 3, vec![1, 0, 1]),
            (Family::C, 2, vec![1, 2]),
            (Family::C, 3, vec![1, 1, 0]),
        ] {
            let s = sys(f, n);
            let lam = w(&lam);
            let total: u64 = freudenthal(&s, &lam).unwrap().values().sum();
            assert_eq!(BigUint::from(total), weyl_dim(&s, &lam).unwrap());
        }
    }

    #[test]
    fn freudenthal_c2_table_value() {
        let c2 = sys(Family::C, 2);
        let mult = freudenthal(&c2, &w(&[2, 1])).unwrap();
        assert_eq!(mult.get(&vec![3, 1]), Some(&2));
    }

    #[test]
    fn rank2_ad_guard() {
        assert!(rank2_ad(3, 2).is_err());
        let t = rank2_ad(2, 2).unwrap();
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let a2 = sys(Family::A, 2);
        match build_module_with_cap(&a2, &w(&[5, 5]), 10) {
            Err(Error::CapExceeded { .. }) => {}
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn basis_verification_small() {
        let a1 = sys(Family::A, 1);
        for m in 0..=5u32 {
            let rep = verify_basis(&a1, &w(&[m]), 20, 7).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
        let a2 = sys(Family::A, 2);
        let rep = verify_basis(&a2, &w(&[1, 1]), 50, 7).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.dim, 8);
        let c2 = sys(Family::C, 2);
        let rep = verify_basis(&c2, &w(&[1, 1]), 50, 7).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.dim, 16);
    }
}
