//! Dense exact linear algebra over a field.
//!
//! Everything is plain Gaussian elimination with exact arithmetic and
//! first-non-zero pivoting, so results are deterministic: the same matrix
//! always yields the same reduced form, kernel basis and particular solution.
//! Instantiated at [`crate::field::FieldElement`] for the cochain complexes
//! and at `BigRational` for the resolution ring.

use num_traits::{One, Zero};
use std::ops::{Div, Mul, Neg, Sub};

/// Field-like scalar: exact, clonable, with total equality.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
        + Div<Output = Self>
{
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose j-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<T>]) -> Self {
        let c = columns.len();
        let r = columns.first().map_or(0, Vec::len);
        assert!(columns.iter().all(|col| col.len() == r), "ragged columns");
        let mut m = Matrix::zero(r, c);
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = acc + self[(i, j)].clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Appends `extra` columns on the right.
    pub fn augment(&self, extra: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.rows, extra.rows);
        let mut out = Matrix::zero(self.rows, self.cols + extra.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..extra.cols {
                out[(i, self.cols + j)] = extra[(i, j)].clone();
            }
        }
        out
    }

    /// In-place reduced row echelon form restricted to the first
    /// `pivot_cols` columns; the remaining columns are carried along.
    /// Returns the pivot column indices.
    fn rref_partial(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..pivot_cols {
            let Some(pr) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, pr);
            let pivot = self[(row, col)].clone();
            for j in 0..self.cols {
                let v = self[(row, j)].clone();
                self[(row, j)] = v / pivot.clone();
            }
            for r in 0..self.rows {
                if r != row && !self[(r, col)].is_zero() {
                    let factor = self[(r, col)].clone();
                    for j in 0..self.cols {
                        let delta = factor.clone() * self[(row, j)].clone();
                        let v = self[(r, j)].clone();
                        self[(r, j)] = v - delta;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    /// Reduced row echelon form together with pivot columns.
    pub fn rref(&self) -> (Matrix<T>, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_partial(m.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column, in column order;
    /// the free coordinate of each vector is normalized to 1.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (k, &c) in pivots.iter().enumerate() {
                v[c] = Some(k);
            }
            v
        };
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![T::zero(); self.cols];
            vec[free] = T::one();
            for (k, &pc) in pivots.iter().enumerate() {
                vec[pc] = -r[(k, free)].clone();
            }
            basis.push(vec);
        }
        basis
    }

    /// A particular solution of `self · x = rhs` with free variables set to
    /// zero, or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[T]) -> Option<Vec<T>> {
        assert_eq!(rhs.len(), self.rows);
        let rhs_m = Matrix::from_columns(&[rhs.to_vec()]);
        let mut aug = self.augment(&rhs_m);
        let pivots = aug.rref_partial(self.cols);
        // rank of [A|b] exceeding rank of A shows up as a row (0 … 0 | 1)
        for i in pivots.len()..self.rows {
            if !aug[(i, self.cols)].is_zero() {
                return None;
            }
        }
        let mut x = vec![T::zero(); self.cols];
        for (k, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(k, self.cols)].clone();
        }
        Some(x)
    }

    /// Whether `v` lies in the column span.
    pub fn in_column_span(&self, v: &[T]) -> bool {
        self.solve(v).is_some()
    }

    /// Determinant by elimination; exact.
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = T::one();
        for col in 0..m.cols {
            let Some(pr) = (col..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                return T::zero();
            };
            if pr != col {
                m.swap_rows(col, pr);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = det * pivot.clone();
            for r in col + 1..m.rows {
                if !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone() / pivot.clone();
                    for j in col..m.cols {
                        let delta = factor.clone() * m[(col, j)].clone();
                        let v = m[(r, j)].clone();
                        m[(r, j)] = v - delta;
                    }
                }
            }
        }
        det
    }

    /// Leading principal k×k minor determinants, k = 1..=n.
    pub fn leading_principal_minors(&self) -> Vec<T> {
        assert_eq!(self.rows, self.cols);
        (1..=self.rows)
            .map(|k| {
                let mut sub = Matrix::zero(k, k);
                for i in 0..k {
                    for j in 0..k {
                        sub[(i, j)] = self[(i, j)].clone();
                    }
                }
                sub.det()
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix<T>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = self.augment(&Matrix::identity(n));
        let pivots = aug.rref_partial(n);
        if pivots.len() < n {
            return None;
        }
        let mut inv = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Precomputed solver for repeated "express `rhs` over these columns" queries.
///
/// Built once from the rref of [M | I]; each query is then a single
/// matrix-vector product plus consistency checks, with free coordinates
/// pinned to zero exactly like [`Matrix::solve`].
#[derive(Clone, Debug)]
pub struct SpanSolver<T> {
    transform: Matrix<T>,
    pivots: Vec<usize>,
    cols: usize,
}

impl<T: Scalar> SpanSolver<T> {
    pub fn new(m: &Matrix<T>) -> Self {
        let n = m.rows();
        let mut aug = m.augment(&Matrix::identity(n));
        let pivots = aug.rref_partial(m.cols());
        let mut transform = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                transform[(i, j)] = aug[(i, m.cols() + j)].clone();
            }
        }
        SpanSolver {
            transform,
            pivots,
            cols: m.cols(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Coordinates of `rhs` over the original columns, or `None` when `rhs`
    /// is outside their span.
    pub fn solve(&self, rhs: &[T]) -> Option<Vec<T>> {
        let reduced = self.transform.mul_vec(rhs);
        for value in reduced.iter().skip(self.pivots.len()) {
            if !value.is_zero() {
                return None;
            }
        }
        let mut x = vec![T::zero(); self.cols];
        for (k, &pc) in self.pivots.iter().enumerate() {
            x[pc] = reduced[k].clone();
        }
        Some(x)
    }

    pub fn contains(&self, rhs: &[T]) -> bool {
        self.solve(rhs).is_some()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}
