//! Divided-power lowering operators acting on the divided-power algebra.
//!
//! On a single power the operator with root `alpha` and order `k` acts by
//! case analysis on the pair (see [`RootSystem::classify_pair`]):
//!
//! * `Kill` -- zero;
//! * difference rules -- `f_{beta-alpha}^(k) f_beta^(m-k)` with
//!   coefficient one (or `2^k` in the doubling case) for `k <= m`;
//! * the `C2` pattern `beta = alpha + 2 gamma` -- the leading term plus
//!   correction terms whose coefficients come from the rank-2 derivation
//!   (see [`crate::oracle::rank2_ad`]); here orders up to `2m` act
//!   non-trivially.
//!
//! On products the action extends by the divided-power Leibniz rule: the
//! order `k` is distributed over the factors in all ways.
//!
//! Public operators follow the convention that all printed coefficients are
//! positive.  The crate-internal signed variant multiplies in the bracket
//! signs of the Chevalley realization, making the operator word exactly the
//! integral raising action; the straightening construction uses it so that
//! its output provably annihilates the highest weight vector.

use num_bigint::BigInt;
use num_traits::One;

use crate::dpalg::DpPolynomial;
use crate::oracle::chevalley::{realization, rank2_expansion, PairSign, Realization};
use crate::polytope::MultiExponent;
use crate::rootsys::{PairRule, PositiveRoot, RootSystem};

/// The operator: a positive root and a divided-power order `k >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartialOperator {
    pub alpha: PositiveRoot,
    pub k: u32,
}

/// Action on a single divided power `f_beta^(m)` (positive convention).
pub fn apply_to_power(
    sys: &RootSystem,
    op: &PartialOperator,
    beta: PositiveRoot,
    m: u32,
) -> DpPolynomial {
    let engine = Engine::positive(sys);
    let alpha = sys.root_index(op.alpha).expect("operator root not in system");
    let beta = sys.root_index(beta).expect("variable root not in system");
    engine.power(alpha, op.k, beta, m)
}

/// Action on a polynomial, by linearity and the Leibniz rule
/// (positive convention).
pub fn apply(sys: &RootSystem, op: &PartialOperator, p: &DpPolynomial) -> DpPolynomial {
    let engine = Engine::positive(sys);
    let alpha = sys.root_index(op.alpha).expect("operator root not in system");
    engine.poly(alpha, op.k, p)
}

/// Signed action: the true integral raising operator.
pub(crate) fn apply_signed(sys: &RootSystem, alpha: usize, k: u32, p: &DpPolynomial) -> DpPolynomial {
    Engine::signed(sys).poly(alpha, k, p)
}

struct Engine<'a> {
    sys: &'a RootSystem,
    real: Option<std::sync::Arc<Realization>>,
}

impl<'a> Engine<'a> {
    fn positive(sys: &'a RootSystem) -> Engine<'a> {
        Engine { sys, real: None }
    }

    fn signed(sys: &'a RootSystem) -> Engine<'a> {
        Engine { sys, real: Some(realization(sys)) }
    }

    /// Largest order that acts non-trivially on `f_beta^(m)`.
    fn max_order(&self, alpha: usize, beta: usize, m: u32) -> u32 {
        match self.sys.rule(alpha, beta) {
            PairRule::Kill => 0,
            PairRule::Single { .. } => m,
            PairRule::Ad5 { .. } => 2 * m,
        }
    }

    /// `partial_alpha^(k) f_beta^(m)` as a polynomial.
    fn power(&self, alpha: usize, k: u32, beta: usize, m: u32) -> DpPolynomial {
        let nn = self.sys.num_roots();
        if k == 0 {
            let mut e = vec![0u32; nn];
            e[beta] = m;
            return DpPolynomial::monomial(&MultiExponent(e), BigInt::one());
        }
        match self.sys.rule(alpha, beta) {
            PairRule::Kill => DpPolynomial::zero(),
            PairRule::Single { result, doubles } => {
                if k > m {
                    return DpPolynomial::zero();
                }
                let mut coeff = if doubles { BigInt::from(2).pow(k) } else { BigInt::one() };
                if let Some(real) = &self.real {
                    if let PairSign::Single(s) = real.pair_sign(alpha, beta) {
                        if s < 0 && k % 2 == 1 {
                            coeff = -coeff;
                        }
                    }
                }
                let mut e = vec![0u32; nn];
                e[beta] = m - k;
                e[result] = k;
                let mut out = DpPolynomial::zero();
                out.add_term(&e, &coeff);
                out
            }
            PairRule::Ad5 { alpha: long, mid } => {
                if k > 2 * m {
                    return DpPolynomial::zero();
                }
                let (s1, s2) = match self.real.as_ref().map(|r| r.pair_sign(alpha, beta)) {
                    Some(PairSign::Ad5 { s1, s2 }) => (s1, s2),
                    _ => (1, 1),
                };
                let mut out = DpPolynomial::zero();
                for &(a, b, c, ref r) in rank2_expansion(k, m).iter() {
                    let mut coeff = r.clone();
                    let neg_s1 = s1 < 0 && (a + b) % 2 == 1;
                    let neg_s2 = s2 < 0 && a % 2 == 1;
                    if neg_s1 != neg_s2 {
                        coeff = -coeff;
                    }
                    // the three pattern roots are pairwise distinct
                    let mut e = vec![0u32; nn];
                    e[long] = a;
                    e[mid] += b;
                    e[beta] += c;
                    out.add_term(&e, &coeff);
                }
                out
            }
        }
    }

    /// Leibniz rule on one monomial `coeff * f^(exp)`: distribute the order
    /// over the factors the operator does not kill.
    fn monomial(&self, alpha: usize, k: u32, exp: &[u32], coeff: &BigInt) -> DpPolynomial {
        let active: Vec<usize> = (0..exp.len())
            .filter(|&i| exp[i] > 0 && self.max_order(alpha, i, exp[i]) > 0)
            .collect();
        let mut passive = exp.to_vec();
        for &i in &active {
            passive[i] = 0;
        }
        let mut out = DpPolynomial::zero();
        let mut orders = vec![0u32; active.len()];
        self.distribute(alpha, k, &active, exp, &mut orders, 0, &passive, coeff, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn distribute(
        &self,
        alpha: usize,
        remaining: u32,
        active: &[usize],
        exp: &[u32],
        orders: &mut Vec<u32>,
        pos: usize,
        passive: &[u32],
        coeff: &BigInt,
        out: &mut DpPolynomial,
    ) {
        if pos == active.len() {
            if remaining > 0 {
                return;
            }
            // multiply out the factor images
            let mut acc =
                DpPolynomial::monomial(&MultiExponent(passive.to_vec()), coeff.clone());
            for (slot, &beta) in active.iter().enumerate() {
                let k_l = orders[slot];
                let img = self.power(alpha, k_l, beta, exp[beta]);
                if img.is_zero() {
                    return;
                }
                acc = acc.mul(&img);
            }
            *out = out.add(&acc);
            return;
        }
        let beta = active[pos];
        let cap = self.max_order(alpha, beta, exp[beta]).min(remaining);
        let tail_cap: u32 = active[pos + 1..]
            .iter()
            .map(|&b| self.max_order(alpha, b, exp[b]))
            .sum();
        for k_l in 0..=cap {
            if remaining - k_l > tail_cap {
                continue;
            }
            orders[pos] = k_l;
            self.distribute(alpha, remaining - k_l, active, exp, orders, pos + 1, passive, coeff, out);
        }
        orders[pos] = 0;
    }

    fn poly(&self, alpha: usize, k: u32, p: &DpPolynomial) -> DpPolynomial {
        let mut out = DpPolynomial::zero();
        for (exp, coeff) in p.terms() {
            out = out.add(&self.monomial(alpha, k, exp, coeff));
        }
        out
    }
}
