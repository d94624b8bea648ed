//! Exact linear algebra: fraction-free rank over the integers and
//! Gauss-Jordan solving over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn rank_bareiss(mut rows: Vec<Vec<BigInt>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in rank + 1..rows.len() {
            for c in col + 1..ncols {
                let num = &rows[rank][col] * &rows[r][c] - &rows[r][col] * &rows[rank][c];
                rows[r][c] = num / &prev;
            }
            rows[r][col] = BigInt::zero();
        }
        prev = rows[rank][col].clone();
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Incremental row echelon over the rationals, for rank and membership.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    /// Rows in echelon form, each with its pivot column; pivots normalized
    /// to one.
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows (in place, returned).
    pub fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let factor = v[*pivot].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &factor * y;
                }
            }
        }
        v
    }

    /// Inserts `v` if independent of the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<BigRational>) -> bool {
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = v[pivot].clone();
        for x in v.iter_mut() {
            *x /= &lead;
        }
        // keep earlier rows reduced against the new one
        for (_, row) in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let factor = row[pivot].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x -= &factor * y;
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }

    pub fn contains(&self, v: Vec<BigRational>) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

/// Solves `sum_j x_j col_j = b` exactly; `None` when inconsistent.
/// Requires the columns to be linearly independent.
pub fn solve_in_columns(cols: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let d = cols.len();
    if d == 0 {
        return b.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    let rows = cols[0].len();
    // augmented row-major matrix [cols | b]
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(b[r].clone());
            row
        })
        .collect();
    let mut pivot_row_of_col = vec![usize::MAX; d];
    let mut next_row = 0;
    for col in 0..d {
        let Some(p) = (next_row..rows).find(|&r| !m[r][col].is_zero()) else {
            return None; // dependent columns
        };
        m.swap(next_row, p);
        let lead = m[next_row][col].clone();
        for x in m[next_row].iter_mut() {
            *x /= &lead;
        }
        for r in 0..rows {
            if r != next_row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let (pivot_row, row) = if r < next_row {
                    let (a, bb) = m.split_at_mut(next_row);
                    (&bb[0], &mut a[r])
                } else {
                    let (a, bb) = m.split_at_mut(r);
                    (&a[next_row], &mut bb[0])
                };
                for (x, y) in row.iter_mut().zip(pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        pivot_row_of_col[col] = next_row;
        next_row += 1;
    }
    // consistency: no leftover rows with non-zero rhs
    for r in next_row..rows {
        if !m[r][d].is_zero() {
            return None;
        }
    }
    Some((0..d).map(|col| m[pivot_row_of_col[col]][d].clone()).collect())
}

pub fn to_rationals(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

pub fn is_integral(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.denom().abs().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn brow(vals: &[i64]) -> Vec<BigRational> {
        vals.iter().map(|&v| BigRational::from_integer(bi(v))).collect()
    }

    #[test]
    fn bareiss_rank() {
        let m = vec![
            vec![bi(2), bi(4), bi(6)],
            vec![bi(1), bi(2), bi(3)],
            vec![bi(0), bi(1), bi(1)],
        ];
        assert_eq!(rank_bareiss(m), 2);
        assert_eq!(rank_bareiss(vec![vec![bi(0); 3]; 2]), 0);
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(brow(&[1, 2, 0])));
        assert!(e.insert(brow(&[0, 1, 1])));
        assert!(!e.insert(brow(&[2, 5, 1])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(brow(&[1, 3, 1])));
        assert!(!e.contains(brow(&[0, 0, 1])));
    }

    #[test]
    fn solve_exact() {
        let cols = vec![brow(&[1, 0, 2]), brow(&[1, 1, 0])];
        let x = solve_in_columns(&cols, &brow(&[3, 1, 4])).unwrap();
        assert_eq!(x, brow(&[2, 1]));
        assert!(solve_in_columns(&cols, &brow(&[0, 0, 1])).is_none());
    }
}
