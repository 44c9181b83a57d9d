//! Dense matrices and Gaussian elimination.
//!
//! Exact mode pivots on the first nonzero entry of a column; float mode uses
//! partial pivoting and treats pivots below `1e-12 * max|A|` as zero.

use std::fmt;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Relative pivot threshold in float mode.
pub const PIVOT_TOL: f64 = 1e-12;

#[derive(Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for DenseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for r in 0..self.rows {
            list.entry(&&self.entries[r * self.cols..(r + 1) * self.cols]);
        }
        list.finish()
    }
}

impl<T: Clone> DenseMatrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> DenseMatrix<U> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn mul_mat(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self.get(r, k).clone() * rhs.get(k, c).clone()
            })
        }))
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} columns, vector of length {}",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    fn max_magnitude(&self) -> f64 {
        self.entries.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Pivot row for column `col` among rows `from..`, or `None` if the column is (numerically) zero.
    fn find_pivot(&self, col: usize, from: usize, scale: f64) -> Option<usize> {
        if T::EXACT {
            (from..self.rows).find(|&r| !self.get(r, col).is_zero())
        } else {
            let (best, mag) = (from..self.rows)
                .map(|r| (r, self.get(r, col).magnitude()))
                .fold((from, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            (mag > PIVOT_TOL * scale).then_some(best)
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Row echelon form in place; returns the pivot columns and the number of row swaps.
    fn eliminate(&mut self, scale: f64) -> (Vec<usize>, usize) {
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = self.find_pivot(col, row, scale) else {
                continue;
            };
            if p != row {
                self.swap_rows(p, row);
                swaps += 1;
            }
            let pivot = self.get(row, col).clone();
            for r in row + 1..self.rows {
                let f = self.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                let f = f / pivot.clone();
                for c in col..self.cols {
                    let v = self.get(r, c).clone() - f.clone() * self.get(row, c).clone();
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (pivots, swaps)
    }

    pub fn det(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        // partial pivoting without a rank cutoff: tiny pivots give a tiny determinant
        let mut m = self.clone();
        let (pivots, swaps) = m.eliminate(0.0);
        if pivots.len() < self.rows {
            return Ok(T::zero());
        }
        let mut d = (0..self.rows).fold(T::one(), |acc, k| acc * m.get(k, k).clone());
        if swaps % 2 == 1 {
            d = -d;
        }
        Ok(d)
    }

    pub fn rank(&self) -> usize {
        let scale = self.max_magnitude();
        let mut m = self.clone();
        m.eliminate(scale).0.len()
    }

    /// Solves `A x = b` for square nonsingular `A`.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("solve needs a square matrix".into()));
        }
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let n = self.rows;
        let scale = self.max_magnitude();
        let mut aug = Self::from_fn(n, n + 1, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let mut row = 0;
        for col in 0..n {
            let Some(p) = aug.find_pivot(col, row, scale) else {
                return Err(Error::SingularMatrix);
            };
            aug.swap_rows(p, row);
            let pivot = aug.get(row, col).clone();
            for r in row + 1..n {
                let f = aug.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                let f = f / pivot.clone();
                for c in col..=n {
                    let v = aug.get(r, c).clone() - f.clone() * aug.get(row, c).clone();
                    aug.set(r, c, v);
                }
            }
            row += 1;
        }
        let mut x = vec![T::zero(); n];
        for r in (0..n).rev() {
            let mut acc = aug.get(r, n).clone();
            for c in r + 1..n {
                acc = acc - aug.get(r, c).clone() * x[c].clone();
            }
            x[r] = acc / aug.get(r, r).clone();
        }
        Ok(x)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let scale = self.max_magnitude();
        let mut m = self.clone();
        let (pivots, _) = m.eliminate(scale);
        for (i, &pc) in pivots.iter().enumerate().rev() {
            let pv = m.get(i, pc).clone();
            for c in pc..m.cols {
                let v = m.get(i, c).clone() / pv.clone();
                m.set(i, c, v);
            }
            for r in 0..i {
                let f = m.get(r, pc).clone();
                if f.is_zero() {
                    continue;
                }
                for c in pc..m.cols {
                    let v = m.get(r, c).clone() - f.clone() * m.get(i, c).clone();
                    m.set(r, c, v);
                }
            }
        }
        (m, pivots)
    }

    /// Basis of the right kernel `{x : A x = 0}` from the reduced row echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![T::zero(); m.cols];
                v[fc] = T::one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(i, fc).clone();
                }
                v
            })
            .collect()
    }
}

/// Incrementally maintained echelon basis of a row space (exact or float).
///
/// Useful when the candidate vectors are many more than the ambient
/// dimension: each insertion costs `O(rank · dim)`.
#[derive(Clone, Debug)]
pub struct RowBasis<T> {
    dim: usize,
    rows: Vec<(usize, Vec<T>)>,
    tol: f64,
}

impl<T: Scalar> RowBasis<T> {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new(), tol: PIVOT_TOL }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the basis; returns `true` if it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<T>) -> bool {
        assert_eq!(v.len(), self.dim);
        let scale = v.iter().map(Scalar::magnitude).fold(0.0, f64::max);
        for (pc, row) in &self.rows {
            let f = v[*pc].clone();
            if f.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                *x = x.clone() - f.clone() * r.clone();
            }
        }
        let pivot = if T::EXACT {
            v.iter().position(|x| !x.is_zero())
        } else {
            let (i, m) = v
                .iter()
                .enumerate()
                .map(|(i, x)| (i, x.magnitude()))
                .fold((0, -1.0), |a, b| if b.1 > a.1 { b } else { a });
            (m > self.tol * scale.max(1.0)).then_some(i)
        };
        let Some(pc) = pivot else {
            return false;
        };
        let inv = T::one() / v[pc].clone();
        for x in v.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        // keep existing rows reduced in the new pivot column
        for (_, row) in self.rows.iter_mut() {
            let f = row[pc].clone();
            if f.is_zero() {
                continue;
            }
            for (x, r) in row.iter_mut().zip(&v) {
                *x = x.clone() - f.clone() * r.clone();
            }
        }
        self.rows.push((pc, v));
        true
    }
}
