//! Dense exact linear algebra: rank, kernel, solving, inversion.
//!
//! Plain Gauss–Jordan elimination over the coefficient field with
//! first-nonzero pivoting; exactness makes pivot-size heuristics moot.

use alloc::vec;
use alloc::vec::Vec;

use crate::ring::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K: Field> {
    nrows: usize,
    ncols: usize,
    data: Vec<K>,
}

impl<K: Field> Matrix<K> {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Matrix {
            nrows,
            ncols,
            data: vec![K::zero(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, K::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            data.extend(row);
        }
        Matrix { nrows, ncols, data }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Matrix::zero(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(v.len(), self.ncols);
        (0..self.nrows)
            .map(|i| {
                let mut acc = K::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc = acc.add(&a.mul(b));
                }
                acc
            })
            .collect()
    }

    pub fn mul_mat(&self, rhs: &Self) -> Self {
        assert_eq!(self.ncols, rhs.nrows);
        let mut out = Matrix::zero(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for j in 0..rhs.ncols {
                let mut acc = K::zero();
                for k in 0..self.ncols {
                    acc = acc.add(&self.get(i, k).mul(rhs.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<K> {
        (0..self.nrows).map(|i| self.get(i, j).clone()).collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.ncols {
            if r == self.nrows {
                break;
            }
            let Some(pivot_row) = (r..self.nrows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            if pivot_row != r {
                for j in 0..self.ncols {
                    self.data
                        .swap(pivot_row * self.ncols + j, r * self.ncols + j);
                }
            }
            let inv = self.get(r, col).inv().expect("nonzero pivot");
            for j in col..self.ncols {
                let v = self.get(r, j).mul(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.nrows {
                if i == r || self.get(i, col).is_zero() {
                    continue;
                }
                let factor = self.get(i, col).clone();
                for j in col..self.ncols {
                    let v = self.get(i, j).sub(&factor.mul(self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel {v : Mv = 0}.
    pub fn kernel_basis(&self) -> Vec<Vec<K>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.ncols];
            for &p in &pivots {
                s[p] = true;
            }
            s
        };
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![K::zero(); self.ncols];
            v[free] = K::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = m.get(row, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of Mx = b, or `None` when inconsistent.
    pub fn solve(&self, b: &[K]) -> Option<Vec<K>> {
        assert_eq!(b.len(), self.nrows);
        let mut aug = Matrix::zero(self.nrows, self.ncols + 1);
        for (i, rhs) in b.iter().enumerate() {
            for j in 0..self.ncols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.ncols, rhs.clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.ncols) {
            return None;
        }
        let mut x = vec![K::zero(); self.ncols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(row, self.ncols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let mut aug = Matrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, K::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut out = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(out)
    }
}

/// Incrementally maintained row space: rows are kept in echelon form so that
/// membership of a new vector costs one reduction pass.
#[derive(Clone, Debug)]
pub struct RowSpace<K: Field> {
    ncols: usize,
    rows: Vec<(usize, Vec<K>)>, // (pivot column, normalized row)
}

impl<K: Field> RowSpace<K> {
    pub fn new(ncols: usize) -> Self {
        RowSpace {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<K>) -> bool {
        assert_eq!(v.len(), self.ncols);
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = x.sub(&factor.mul(r));
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = x.mul(&inv);
        }
        self.rows.push((pivot, v));
        true
    }

    /// True when the vector lies in the current span.
    pub fn contains(&self, v: &[K]) -> bool {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = x.sub(&factor.mul(r));
            }
        }
        v.iter().all(K::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{make_context, Scalar};

    fn mat(rows: &[&[i64]]) -> Matrix<Scalar> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn identity_rank() {
        assert_eq!(Matrix::<Scalar>::identity(3).rank(), 3);
    }

    #[test]
    fn zero_matrix_rank_and_kernel() {
        let z = Matrix::<Scalar>::zero(2, 3);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel_basis().len(), 3);
    }

    #[test]
    fn cyclotomic_rank_drop() {
        // Second row is zeta(4) times the first: rank 1.
        let ctx = make_context(4);
        let z = Scalar::zeta(&ctx);
        let m = Matrix::from_rows(alloc::vec![
            alloc::vec![Scalar::from_int(1), z.clone()],
            alloc::vec![z.clone(), Scalar::from_int(-1)],
        ]);
        assert_eq!(m.rank(), 1);
        let kernel = m.kernel_basis();
        assert_eq!(kernel.len(), 1);
        let v = &kernel[0];
        let img = m.mul_vec(v);
        assert!(img.iter().all(Scalar::is_zero));
    }

    #[test]
    fn solve_and_invert() {
        let m = mat(&[&[2, 1], &[1, 1]]);
        let x = m
            .solve(&[Scalar::from_int(3), Scalar::from_int(2)])
            .unwrap();
        assert_eq!(x, alloc::vec![Scalar::from_int(1), Scalar::from_int(1)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul_mat(&inv), Matrix::identity(2));

        let singular = mat(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        assert!(singular
            .solve(&[Scalar::from_int(0), Scalar::from_int(1)])
            .is_none());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        for v in m.kernel_basis() {
            assert!(m.mul_vec(&v).iter().all(Scalar::is_zero));
        }
    }
}
