//! Explicit highest-weight modules by exact integer linear algebra.
//!
//! The module of weight `lambda = sum m_i omega_i` is realized as the
//! cyclic span of the top vector inside a tensor product of exterior powers
//! of the vector representation, one factor `Lambda^i` per unit of `m_i`.
//! The cyclic vector is the tensor of top wedges; applying divided powers
//! of the negative root vectors (exact integer matrices, nilpotent, so
//! `f^k/k!` is integral) closes up the span.
//!
//! Everything the verification suites need is derived from the list of all
//! non-zero vectors `f^(m) v_lambda`: dimension and basis checks per weight
//! space, the per-degree filtration ranks behind the graded character, and
//! membership tests modulo lower filtration pieces.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::oracle::chevalley::{realization, Realization};
use crate::oracle::linalg::Echelon;
use crate::polytope::{DominantWeight, MultiExponent};
use crate::rootsys::{Family, RootSystem};
use crate::Error;

pub type SparseVec = BTreeMap<usize, BigInt>;

/// One enumerated vector `f^(m) v_lambda` (non-zero by construction).
#[derive(Clone, Debug)]
pub struct ModMonomial {
    pub exp: Vec<u32>,
    pub degree: u64,
    pub drop: Vec<i64>,
    pub vec: SparseVec,
}

#[derive(Clone, Debug)]
struct Factor {
    subsets: Vec<Vec<u8>>,
    subset_index: HashMap<Vec<u8>, usize>,
}

impl Factor {
    fn new(base_dim: usize, k: usize) -> Factor {
        let mut subsets = Vec::new();
        let mut cur: Vec<u8> = (0..k as u8).collect();
        if k == 0 {
            subsets.push(Vec::new());
        } else {
            loop {
                subsets.push(cur.clone());
                // next combination in lex order
                let mut i = k;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    if (cur[i] as usize) < base_dim - (k - i) {
                        cur[i] += 1;
                        for j in i + 1..k {
                            cur[j] = cur[j - 1] + 1;
                        }
                        break;
                    }
                    if i == 0 {
                        cur.clear();
                        break;
                    }
                }
                if cur.is_empty() {
                    break;
                }
            }
        }
        let subset_index = subsets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Factor { subsets, subset_index }
    }

    fn dim(&self) -> usize {
        self.subsets.len()
    }
}

/// The explicit module.
#[derive(Debug)]
pub struct ExplicitModule {
    pub lambda: DominantWeight,
    real: Arc<Realization>,
    factors: Vec<Factor>,
    strides: Vec<usize>,
    pub ambient_dim: usize,
    pub vlambda: SparseVec,
    pub monomials: Vec<ModMonomial>,
    by_exp: HashMap<Vec<u32>, usize>,
    pub dim: usize,
    lambda_eps: Vec<i64>,
    family: Family,
    rank: u32,
}

impl ExplicitModule {
    /// Builds the cyclic span with the canonical root order for the
    /// divided-power products.
    pub fn new(sys: &RootSystem, lambda: &DominantWeight) -> Result<ExplicitModule, Error> {
        let order: Vec<usize> = (0..sys.num_roots()).collect();
        ExplicitModule::new_with_order(sys, lambda, &order)
    }

    /// Same, with an explicit product order of the roots (used to check
    /// that the construction does not depend on it).
    pub fn new_with_order(
        sys: &RootSystem,
        lambda: &DominantWeight,
        order: &[usize],
    ) -> Result<ExplicitModule, Error> {
        lambda.validate(sys)?;
        let real = realization(sys);
        let base_dim = real.dim;
        let mut factors = Vec::new();
        for (i, &m) in lambda.0.iter().enumerate() {
            for _ in 0..m {
                factors.push(Factor::new(base_dim, i + 1));
            }
        }
        if factors.is_empty() {
            factors.push(Factor::new(base_dim, 0)); // trivial module
        }
        let mut strides = vec![0usize; factors.len()];
        let mut total = 1usize;
        for (i, f) in factors.iter().enumerate().rev() {
            strides[i] = total;
            total *= f.dim();
        }
        let ambient_dim = total;

        // v_lambda: every factor at its first subset {0, .., k-1}
        let mut vlambda = SparseVec::new();
        vlambda.insert(0, BigInt::one());

        let n = sys.rank() as usize;
        let mut lambda_eps = vec![0i64; if sys.family() == Family::A { n + 1 } else { n }];
        for (i, &m) in lambda.0.iter().enumerate() {
            for e in lambda_eps.iter_mut().take(i + 1) {
                *e += m as i64;
            }
        }

        let mut module = ExplicitModule {
            lambda: lambda.clone(),
            real,
            factors,
            strides,
            ambient_dim,
            vlambda: vlambda.clone(),
            monomials: Vec::new(),
            by_exp: HashMap::new(),
            dim: 0,
            lambda_eps,
            family: sys.family(),
            rank: sys.rank(),
        };

        // enumerate all non-zero f^(m) v_lambda, product read right to left
        let mut exp = vec![0u32; sys.num_roots()];
        module.enumerate(sys, order, order.len(), &vlambda, &mut exp);

        // dimension: weight spaces are independent, so rank sums per drop
        let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (i, m) in module.monomials.iter().enumerate() {
            groups.entry(m.drop.clone()).or_default().push(i);
        }
        let mut dim = 0;
        for idxs in groups.values() {
            let mut ech = Echelon::new();
            for &i in idxs {
                let dense = module.to_dense(&module.monomials[i].vec);
                ech.insert(dense);
            }
            dim += ech.rank();
        }
        module.dim = dim;
        module.by_exp =
            module.monomials.iter().enumerate().map(|(i, m)| (m.exp.clone(), i)).collect();
        Ok(module)
    }

    fn enumerate(
        &mut self,
        sys: &RootSystem,
        order: &[usize],
        pos: usize,
        vec: &SparseVec,
        exp: &mut Vec<u32>,
    ) {
        if pos == 0 {
            let me = MultiExponent(exp.clone());
            self.monomials.push(ModMonomial {
                exp: exp.clone(),
                degree: me.degree(),
                drop: me.weight_drop(sys),
                vec: vec.clone(),
            });
            return;
        }
        let root = order[pos - 1];
        self.enumerate(sys, order, pos - 1, vec, exp);
        let mut cur = vec.clone();
        let mut k = 0u32;
        loop {
            k += 1;
            cur = self.apply_divided(root, &cur, k);
            if cur.is_empty() {
                break;
            }
            exp[root] = k;
            self.enumerate(sys, order, pos - 1, &cur, exp);
        }
        exp[root] = 0;
    }

    /// One more step of the divided power: given `w = f^(k-1) u`, returns
    /// `f^(k) u = f(w) / k` (exact on the lattice).
    fn apply_divided(&self, root: usize, w: &SparseVec, k: u32) -> SparseVec {
        let fw = self.apply_f(root, w);
        if k <= 1 {
            return fw;
        }
        let kk = BigInt::from(k);
        let mut out = SparseVec::new();
        for (idx, v) in fw {
            let (q, r) = v.div_rem(&kk);
            assert!(r.is_zero(), "divided power must stay integral on the lattice");
            if !q.is_zero() {
                out.insert(idx, q);
            }
        }
        out
    }

    /// Action of `f_root` on the tensor product of wedges (Leibniz rule).
    pub fn apply_f(&self, root: usize, w: &SparseVec) -> SparseVec {
        let mat = &self.real.f[root];
        let mut out = SparseVec::new();
        for (&amb, coeff) in w {
            for (fi, factor) in self.factors.iter().enumerate() {
                let sub_idx = amb / self.strides[fi] % factor.dim();
                let subset = &factor.subsets[sub_idx];
                for &(r, c, v) in &mat.entries {
                    let Some(slot) = subset.iter().position(|&x| x as usize == c) else {
                        continue;
                    };
                    if subset.iter().any(|&x| x as usize == r) {
                        continue; // wedge with a repeated vector
                    }
                    let mut new_subset = subset.clone();
                    new_subset.remove(slot);
                    let insert_at = new_subset.partition_point(|&x| (x as usize) < r);
                    new_subset.insert(insert_at, r as u8);
                    let sign = if (slot + insert_at) % 2 == 0 { 1 } else { -1 };
                    let new_sub_idx = factor.subset_index[&new_subset];
                    let new_amb =
                        amb - sub_idx * self.strides[fi] + new_sub_idx * self.strides[fi];
                    let add = coeff * v * sign;
                    let entry = out.entry(new_amb).or_insert_with(BigInt::zero);
                    *entry += add;
                    if entry.is_zero() {
                        out.remove(&new_amb);
                    }
                }
            }
        }
        out
    }

    /// `f^(m) v_lambda` as stored during enumeration ( `None` when zero).
    pub fn vector_of(&self, exp: &[u32]) -> Option<&SparseVec> {
        self.by_exp.get(exp).map(|&i| &self.monomials[i].vec)
    }

    /// Applies the full divided-power monomial to an arbitrary vector.
    pub fn apply_monomial(&self, exp: &[u32], v: &SparseVec) -> SparseVec {
        let mut cur = v.clone();
        for root in (0..exp.len()).rev() {
            for k in 1..=exp[root] {
                cur = self.apply_divided(root, &cur, k);
                if cur.is_empty() {
                    return cur;
                }
            }
        }
        cur
    }

    pub fn to_dense(&self, v: &SparseVec) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.ambient_dim];
        for (&i, c) in v {
            out[i] = BigRational::from_integer(c.clone());
        }
        out
    }

    /// Weight drop (simple-root coordinates) of an ambient basis index.
    pub fn drop_of_index(&self, amb: usize) -> Vec<i64> {
        let mut w = vec![0i64; self.lambda_eps.len()];
        for (fi, factor) in self.factors.iter().enumerate() {
            let sub_idx = amb / self.strides[fi] % factor.dim();
            for &x in &factor.subsets[sub_idx] {
                for (a, b) in w.iter_mut().zip(&self.real.basis_weights[x as usize]) {
                    *a += b;
                }
            }
        }
        let diff: Vec<i64> = self.lambda_eps.iter().zip(&w).map(|(l, x)| l - x).collect();
        eps_diff_to_simple(self.family, self.rank, &diff)
    }

    /// Per weight drop, the Poincare polynomial of the induced filtration:
    /// coefficient of `q^s` is the rank gained by degree-`s` monomials.
    pub fn pbw_poincare(&self) -> BTreeMap<Vec<i64>, Vec<u64>> {
        let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (i, m) in self.monomials.iter().enumerate() {
            groups.entry(m.drop.clone()).or_default().push(i);
        }
        let mut out = BTreeMap::new();
        for (drop, mut idxs) in groups {
            idxs.sort_by_key(|&i| self.monomials[i].degree);
            let mut ech = Echelon::new();
            let mut poly: Vec<u64> = Vec::new();
            for &i in &idxs {
                let deg = self.monomials[i].degree as usize;
                if ech.insert(self.to_dense(&self.monomials[i].vec)) {
                    if poly.len() <= deg {
                        poly.resize(deg + 1, 0);
                    }
                    poly[deg] += 1;
                }
            }
            out.insert(drop, poly);
        }
        out
    }

    /// Echelon of the span of all `f^(m) v_lambda` with the given drop and
    /// degree at most `max_degree`.
    pub fn filtration_span(&self, drop: &[i64], max_degree: u64) -> Echelon {
        let mut ech = Echelon::new();
        for m in &self.monomials {
            if m.drop == drop && m.degree <= max_degree {
                ech.insert(self.to_dense(&m.vec));
            }
        }
        ech
    }
}

/// Converts an epsilon-coordinate difference of weights into simple-root
/// coordinates (exact; panics if the difference is not in the root lattice).
pub fn eps_diff_to_simple(family: Family, rank: u32, diff: &[i64]) -> Vec<i64> {
    let n = rank as usize;
    let mut out = vec![0i64; n];
    match family {
        Family::A => {
            let mut acc = 0i64;
            for i in 0..n {
                acc += diff[i];
                out[i] = acc;
            }
            assert_eq!(acc, -diff[n], "weight difference outside the root lattice");
        }
        Family::C => {
            let mut acc = 0i64;
            for i in 0..n - 1 {
                acc += diff[i];
                out[i] = acc;
            }
            let last = diff[n - 1] + if n >= 2 { out[n - 2] } else { 0 };
            assert!(last % 2 == 0, "weight difference outside the root lattice");
            out[n - 1] = last / 2;
        }
    }
    out
}
