//! Exact dense linear algebra over a [`Field`]: row reduction, rank,
//! nullspaces and span membership.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;

/// Row-major dense matrix.
pub type Matrix<T> = Vec<Vec<T>>;

/// Reduces `rows` to reduced row echelon form in place and returns the
/// pivot columns. Zero rows are removed.
pub fn rref<T: Field>(rows: &mut Matrix<T>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                *x = x.mul(&inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x = x.sub(&factor.mul(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Rank by exact elimination.
pub fn rank<T: Field>(rows: &[Vec<T>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of { v : M v = 0 }, one vector per free column with that free
/// coordinate set to 1.
pub fn nullspace<T: Field>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![T::zero(); ncols];
        v[free] = T::one();
        for (row, &p) in m.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[p] = row[free].neg();
            }
        }
        basis.push(v);
    }
    basis
}

/// True iff `v` lies in the span of `vectors`.
pub fn in_span<T: Field>(vectors: &[Vec<T>], v: &[T]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    let r = rank(vectors);
    let mut ext = vectors.to_vec();
    ext.push(v.to_vec());
    rank(&ext) == r
}

/// Incremental row-echelon basis: supports fast "is this vector new?"
/// queries while a span grows.
#[derive(Clone, Debug)]
pub struct EchelonBasis<T> {
    ncols: usize,
    /// Each row is normalized with a 1 at its pivot column.
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: Field> EchelonBasis<T> {
    pub fn new(ncols: usize) -> Self {
        EchelonBasis {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows.
    pub fn reduce(&self, v: &[T]) -> Vec<T> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.sub(&f.mul(r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the span; returns true iff the rank grew.
    pub fn insert(&mut self, v: &[T]) -> bool {
        assert_eq!(v.len(), self.ncols);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        for x in r.iter_mut() {
            *x = x.mul(&inv);
        }
        self.rows.push((p, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rational};

    fn q(v: i64) -> Rational {
        rat(v, 1)
    }

    #[test]
    fn rank_and_nullspace() {
        let m = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(1), q(0), q(1)],
        ];
        assert_eq!(rank(&m), 2);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot: Rational = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert_eq!(dot, q(0));
        }
    }

    #[test]
    fn echelon_membership() {
        let mut b = EchelonBasis::new(3);
        assert!(b.insert(&[q(1), q(1), q(0)]));
        assert!(b.insert(&[q(0), q(1), q(1)]));
        assert!(b.contains(&[q(1), q(2), q(1)]));
        assert!(!b.contains(&[q(0), q(0), q(1)]));
        assert!(!b.insert(&[q(2), q(3), q(1)]));
        assert!(in_span(&[vec![q(1), q(1), q(0)]], &[q(3), q(3), q(0)]));
    }
}
