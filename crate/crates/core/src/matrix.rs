//! Dense row-major matrices over a [`Field`] with a rank-revealing reduced
//! row-echelon routine.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Rendered, Tol};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(cols: usize, rows: &[Vec<T>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_cols(rows: usize, cols: &[Vec<T>]) -> Result<Self> {
        Ok(Self::from_rows(rows, cols)?.transpose())
    }

    pub fn from_i64(rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: values.iter().map(|&v| T::from_i64(v)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Matrix<T>) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(l, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn add(&self, other: &Matrix<T>) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix<T>) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    pub fn scale(&self, s: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    pub fn hstack(&self, other: &Matrix<T>) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix<T>) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(blocks: &[Matrix<T>]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix<T>) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn is_zero_within(&self, tol: Tol) -> bool {
        self.data.iter().all(|a| a.negligible(tol))
    }

    pub fn approx_eq(&self, other: &Matrix<T>, tol: Tol) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| (a.clone() - b.clone()).negligible(tol))
    }

    /// First index pair where the matrix fails to be skew, if any.
    pub fn skew_defect(&self, tol: Tol) -> Option<(usize, usize)> {
        if self.rows != self.cols {
            return Some((self.rows, self.cols));
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if !(self[(i, j)].clone() + self[(j, i)].clone()).negligible(tol) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.magnitude()).fold(0.0, f64::max)
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(|a| a.to_f64())
    }

    /// Reduced row-echelon form. Pivots are chosen by largest magnitude in the
    /// column; entries at or below `tol` count as zero and are cleared.
    pub fn rref(&self, tol: Tol) -> Echelon<T> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let mut best = None;
            let mut best_mag = -1.0;
            for i in r..a.rows {
                if a[(i, c)].negligible(tol) {
                    continue;
                }
                let mag = a[(i, c)].magnitude();
                if T::EXACT {
                    best = Some(i);
                    break;
                }
                if mag > best_mag {
                    best_mag = mag;
                    best = Some(i);
                }
            }
            let Some(p) = best else {
                for i in r..a.rows {
                    a[(i, c)] = T::zero();
                }
                continue;
            };
            a.swap_rows(r, p);
            let inv = T::one() / a[(r, c)].clone();
            for j in c..a.cols {
                a[(r, j)] = a[(r, j)].clone() * inv.clone();
            }
            a[(r, c)] = T::one();
            for i in 0..a.rows {
                if i == r {
                    continue;
                }
                let f = a[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..a.cols {
                    let v = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                    a[(i, j)] = if v.negligible(tol) && !T::EXACT {
                        T::zero()
                    } else {
                        v
                    };
                }
                a[(i, c)] = T::zero();
            }
            pivots.push(c);
            r += 1;
        }
        for i in r..a.rows {
            for j in 0..a.cols {
                a[(i, j)] = T::zero();
            }
        }
        Echelon { reduced: a, pivots }
    }

    pub fn rank(&self, tol: Tol) -> usize {
        self.rref(tol).pivots.len()
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel_basis(&self, tol: Tol) -> Vec<Vec<T>> {
        let e = self.rref(tol);
        let mut is_pivot = vec![false; self.cols];
        for &p in &e.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![T::zero(); self.cols];
            v[f] = T::one();
            for (i, &p) in e.pivots.iter().enumerate() {
                v[p] = -e.reduced[(i, f)].clone();
            }
            out.push(v);
        }
        out
    }

    /// Unique `X` with `self · X = rhs`.
    ///
    /// Fails with [`Error::IllDefined`] when the system is inconsistent and
    /// [`Error::Underdetermined`] when `self` has a nontrivial kernel.
    pub fn solve(&self, rhs: &Matrix<T>, tol: Tol) -> Result<Matrix<T>> {
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: rhs.rows,
            });
        }
        let e = self.hstack(rhs).rref(tol);
        if e.pivots.iter().any(|&p| p >= self.cols) {
            return Err(Error::IllDefined);
        }
        if e.pivots.len() < self.cols {
            return Err(Error::Underdetermined {
                rank: e.pivots.len(),
                dim: self.cols,
            });
        }
        Ok(e.reduced.block(0, self.cols, self.cols, rhs.cols))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rows rendered as strings, for reports.
    pub fn render_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.render()).collect())
            .collect()
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

impl<T: Field> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", Rendered(self.row(i)))?;
        }
        Ok(())
    }
}

pub fn dot<T: Field>(a: &[T], b: &[T]) -> T {
    assert_eq!(a.len(), b.len(), "dot product length mismatch");
    let mut s = T::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        s = s + x.clone() * y.clone();
    }
    s
}

pub fn add_vec<T: Field>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub_vec<T: Field>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn scale_vec<T: Field>(s: &T, a: &[T]) -> Vec<T> {
    a.iter().map(|x| s.clone() * x.clone()).collect()
}

pub fn neg_vec<T: Field>(a: &[T]) -> Vec<T> {
    a.iter().map(|x| -x.clone()).collect()
}

pub fn is_zero_vec<T: Field>(a: &[T], tol: Tol) -> bool {
    a.iter().all(|x| x.negligible(tol))
}

pub fn unit<T: Field>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}
