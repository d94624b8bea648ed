//! The divided-power symmetric algebra on the negative root vectors.
//!
//! Monomials are indexed by multi-exponents; the product of two powers of
//! the same variable picks up a binomial coefficient,
//! `f^(m) f^(k) = C(m+k, m) f^(m+k)`, so all coefficients are exact
//! big integers.  Distinct variables commute freely.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::polytope::MultiExponent;
use crate::rootsys::RootSystem;

/// An integer linear combination of divided-power monomials.  Zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DpPolynomial {
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl DpPolynomial {
    pub fn zero() -> DpPolynomial {
        DpPolynomial::default()
    }

    /// The single-term polynomial `c * f^(s)`; zero when `c = 0`.
    pub fn monomial(s: &MultiExponent, c: BigInt) -> DpPolynomial {
        let mut p = DpPolynomial::zero();
        if !c.is_zero() {
            p.terms.insert(s.0.clone(), c);
        }
        p
    }

    /// The unit `f^(0)`.
    pub fn unit(sys: &RootSystem) -> DpPolynomial {
        DpPolynomial::monomial(&MultiExponent::zero(sys), BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[u32]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, exp: &[u32], c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp.to_vec()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(exp);
        }
    }

    pub fn add(&self, other: &DpPolynomial) -> DpPolynomial {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &DpPolynomial) -> DpPolynomial {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, &(-c));
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> DpPolynomial {
        if c.is_zero() {
            return DpPolynomial::zero();
        }
        DpPolynomial { terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// Exact product.  Exponents add; for each variable present in both
    /// factors the coefficient gains `C(a+b, a)`.
    pub fn mul(&self, other: &DpPolynomial) -> DpPolynomial {
        let mut out = DpPolynomial::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let mut coeff = ca * cb;
                let exp: Vec<u32> = ea
                    .iter()
                    .zip(eb)
                    .map(|(&a, &b)| {
                        if a > 0 && b > 0 {
                            coeff *= binomial(BigInt::from(a + b), BigInt::from(a));
                        }
                        a + b
                    })
                    .collect();
                out.add_term(&exp, &coeff);
            }
        }
        out
    }

    /// The homogeneous component of total degree exactly `d`.
    pub fn degree_filter(&self, d: u64) -> DpPolynomial {
        DpPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().map(|&v| v as u64).sum::<u64>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// True if every term has total degree `d`.
    pub fn is_homogeneous_of_degree(&self, d: u64) -> bool {
        self.terms.keys().all(|e| e.iter().map(|&v| v as u64).sum::<u64>() == d)
    }

    /// Textual form for logs and golden files, e.g.
    /// `2 * f[1,1]^(1) f[1,2]^(2) + -1 * f[2,2]^(3)`.
    pub fn render(&self, sys: &RootSystem) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (exp, coeff)) in self.terms.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            let _ = write!(out, "{coeff}");
            let factors: Vec<String> = exp
                .iter()
                .enumerate()
                .filter(|&(_, &v)| v > 0)
                .map(|(idx, &v)| {
                    let tok = sys.root(idx).token().replacen('a', "f", 1);
                    format!("{tok}^({v})")
                })
                .collect();
            if !factors.is_empty() {
                let _ = write!(out, " * {}", factors.join(" "));
            }
        }
        out
    }
}
