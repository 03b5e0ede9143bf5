//! Dense complex matrices and the factorization kernel built on them.
//!
//! Everything downstream works at desk scale (dimensions in the tens, not
//! thousands), so the matrix type is a plain row-major `Vec` and the
//! factorizations are Jacobi iterations, which deliver high relative accuracy
//! for small dense problems without any external linear-algebra dependency.

mod eig;
mod factor;
mod svd;

pub use eig::HermEig;
pub use factor::default_rank_tol;
pub use svd::Svd;

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// All-zero matrix. Zero-sized shapes are allowed; they show up as empty
    /// factors of rank-0 matrices.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            out[(i, i)] = Complex64::ONE;
        }
        out
    }

    /// Builds a matrix from rows of complex entries.
    ///
    /// # Errors
    ///
    /// [`Error::Dimension`] when the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from rows of real entries.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    /// Builds a matrix by evaluating `f` at every position.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = f(i, j);
            }
        }
        out
    }

    /// Square matrix with `diag` on the main diagonal.
    pub fn from_diag(diag: &[Complex64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i] } else { Complex64::ZERO })
    }

    /// `(rows, cols)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// True for square matrices.
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Conjugate transpose.
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Matrix product.
    ///
    /// # Errors
    ///
    /// [`Error::ShapeMismatch`] when the inner dimensions differ.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(shape_err(self, rhs, "matrix product"));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == Complex64::ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += aik * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Entrywise sum.
    ///
    /// # Errors
    ///
    /// [`Error::ShapeMismatch`] when the shapes differ.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(shape_err(self, rhs, "matrix sum"));
        }
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(&rhs.data) {
            *o += r;
        }
        Ok(out)
    }

    /// Entrywise difference.
    ///
    /// # Errors
    ///
    /// [`Error::ShapeMismatch`] when the shapes differ.
    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(shape_err(self, rhs, "matrix difference"));
        }
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(&rhs.data) {
            *o -= r;
        }
        Ok(out)
    }

    /// Scalar multiple.
    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= s;
        }
        out
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        self.scale(-Complex64::ONE)
    }

    /// Hermitian part `(A + A*)/2`; exact for already-Hermitian input.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    /// Largest entry magnitude.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm.
    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest deviation from Hermitian symmetry, `max |A - A*|`; zero for
    /// non-square shapes never (returns infinity so callers fail loudly).
    pub fn asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// True when `max |A - A*| <= tol * (1 + max |A|)`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.asymmetry() <= tol * (1.0 + self.max_norm())
    }

    /// Copies the block with rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Column `j` as a vector of entries.
    pub fn col(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Replaces the columns listed in `idx` by their product with the square
    /// matrix `w`: `A[:, idx] <- A[:, idx] * w`.
    pub(crate) fn rotate_cols(&mut self, idx: &[usize], w: &ComplexMatrix) {
        debug_assert_eq!(idx.len(), w.rows());
        debug_assert!(w.is_square());
        for i in 0..self.rows {
            let old: Vec<Complex64> = idx.iter().map(|&j| self[(i, j)]).collect();
            for (jj, &j) in idx.iter().enumerate() {
                let mut acc = Complex64::ZERO;
                for (kk, o) in old.iter().enumerate() {
                    acc += o * w[(kk, jj)];
                }
                self[(i, j)] = acc;
            }
        }
    }

    /// Relative residual between two matrices: largest entrywise difference
    /// normalized by `1 +` the largest entry magnitude of either side.
    pub fn rel_residual(&self, rhs: &Self) -> f64 {
        match self.sub(rhs) {
            Ok(diff) => diff.max_norm() / (1.0 + self.max_norm().max(rhs.max_norm())),
            Err(_) => f64::INFINITY,
        }
    }
}

fn shape_err(a: &ComplexMatrix, b: &ComplexMatrix, op: &'static str) -> Error {
    Error::ShapeMismatch {
        left: format!("{}x{}", a.rows, a.cols),
        right: format!("{}x{}", b.rows, b.cols),
        op,
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}
