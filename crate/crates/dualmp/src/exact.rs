//! Exact-arithmetic oracle over Gaussian rationals.
//!
//! Small dual matrices (dimensions up to about 4) with rational real and
//! imaginary parts admit exact linear algebra: row reduction, full-rank
//! factorization, the classical Moore-Penrose inverse via
//! `G^* (G G^*)^{-1} (F^* F)^{-1} F^*`, the essential/nonessential split,
//! and the NDMPI through its closed form — all with no rounding. Every
//! result is verified against its defining equations *exactly*; a candidate
//! that fails is rejected loudly rather than returned.
//!
//! The oracle exists to pin down ground truth for the floating-point paths,
//! not for performance. Conversions from `f64` are exact (every finite
//! float is a rational).

use crate::error::{Error, Result};
use crate::kernel::ComplexMatrix;
use crate::matrix::DualMatrix;
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A Gaussian rational: exact complex number with rational parts.
pub type GaussianRational = Complex<BigRational>;

fn gq(re: BigRational, im: BigRational) -> GaussianRational {
    Complex::new(re, im)
}

fn gq_conj(z: &GaussianRational) -> GaussianRational {
    gq(z.re.clone(), -z.im.clone())
}

/// Exact reciprocal; the caller guarantees `z != 0`.
fn gq_inv(z: &GaussianRational) -> GaussianRational {
    let norm = &z.re * &z.re + &z.im * &z.im;
    gq(&z.re / &norm, -&z.im / &norm)
}

/// Dense matrix of Gaussian rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    /// Builds a real matrix from integer rows (test- and example-friendly).
    ///
    /// # Errors
    ///
    /// `Error::Dimension` for ragged rows.
    pub fn from_integer_rows(rows: &[&[i64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows in matrix literal".into()));
        }
        let mut m = RationalMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = gq(
                    BigRational::from_integer(BigInt::from(v)),
                    BigRational::zero(),
                );
            }
        }
        Ok(m)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conj_transpose(&self) -> Self {
        let mut out = RationalMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = gq_conj(&self[(i, j)]);
            }
        }
        out
    }

    /// # Errors
    ///
    /// `ShapeMismatch` when the inner dimensions differ.
    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
                op: "exact multiply",
            });
        }
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = &self[(i, k)];
                if aik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = aik * &other[(k, j)];
                    out[(i, j)] = out[(i, j)].clone() + prod;
                }
            }
        }
        Ok(out)
    }

    /// # Errors
    ///
    /// `ShapeMismatch` when the shapes differ.
    pub fn add(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
                op: "exact add",
            });
        }
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(&other.data) {
            *o = o.clone() + r.clone();
        }
        Ok(out)
    }

    /// # Errors
    ///
    /// `ShapeMismatch` when the shapes differ.
    pub fn sub(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalMatrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = -v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form plus the pivot-column indices.
    fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = gq_inv(&m[(row, col)]);
            for j in col..m.cols {
                m[(row, j)] = &m[(row, j)] * &inv;
            }
            for i in 0..m.rows {
                if i == row || m[(i, col)].is_zero() {
                    continue;
                }
                let factor = m[(i, col)].clone();
                for j in col..m.cols {
                    let delta = &factor * &m[(row, j)];
                    m[(i, j)] = m[(i, j)].clone() - delta;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Exact conversion from a floating-point matrix (every finite `f64` is
    /// a rational number).
    ///
    /// # Errors
    ///
    /// `NotRepresentable` for NaN or infinite entries.
    pub fn from_float(m: &ComplexMatrix, location: &str) -> Result<RationalMatrix> {
        let (rows, cols) = m.shape();
        let mut out = RationalMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let z = m[(i, j)];
                let re = BigRational::from_float(z.re).ok_or(Error::NotRepresentable {
                    value: z.re,
                    location: format!("{location}[{i},{j}].re"),
                })?;
                let im = BigRational::from_float(z.im).ok_or(Error::NotRepresentable {
                    value: z.im,
                    location: format!("{location}[{i},{j}].im"),
                })?;
                out[(i, j)] = gq(re, im);
            }
        }
        Ok(out)
    }

    /// Nearest floating-point matrix.
    pub fn to_float(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| {
            let z = &self[(i, j)];
            num_complex::Complex64::new(
                z.re.to_f64().unwrap_or(f64::NAN),
                z.im.to_f64().unwrap_or(f64::NAN),
            )
        })
    }
}

/// Rank over the rationals (exact).
pub fn exact_rank(a: &RationalMatrix) -> usize {
    a.rref().1.len()
}

/// Exact full-rank factorization `A = F G`: `F` keeps the pivot columns of
/// `A`, `G` is the nonzero rows of the RREF.
pub fn exact_full_rank_factor(a: &RationalMatrix) -> (RationalMatrix, RationalMatrix) {
    let (reduced, pivots) = a.rref();
    let r = pivots.len();
    let mut f = RationalMatrix::zeros(a.rows(), r);
    for (k, &col) in pivots.iter().enumerate() {
        for i in 0..a.rows() {
            f[(i, k)] = a[(i, col)].clone();
        }
    }
    let mut g = RationalMatrix::zeros(r, a.cols());
    for i in 0..r {
        for j in 0..a.cols() {
            g[(i, j)] = reduced[(i, j)].clone();
        }
    }
    (f, g)
}

/// Exact inverse by Gauss-Jordan elimination.
///
/// # Errors
///
/// `NotInvertible` when the matrix is singular (or not square).
pub fn exact_inv(a: &RationalMatrix) -> Result<RationalMatrix> {
    if a.rows() != a.cols() {
        return Err(Error::NotInvertible {
            detail: format!("matrix is {}x{}, not square", a.rows(), a.cols()),
        });
    }
    let n = a.rows();
    let mut work = a.clone();
    let mut inv = RationalMatrix::identity(n);
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !work[(i, col)].is_zero()) else {
            return Err(Error::NotInvertible {
                detail: format!("exact elimination found no pivot in column {col}"),
            });
        };
        work.swap_rows(col, p);
        inv.swap_rows(col, p);
        let scale = gq_inv(&work[(col, col)]);
        for j in 0..n {
            work[(col, j)] = &work[(col, j)] * &scale;
            inv[(col, j)] = &inv[(col, j)] * &scale;
        }
        for i in 0..n {
            if i == col || work[(i, col)].is_zero() {
                continue;
            }
            let factor = work[(i, col)].clone();
            for j in 0..n {
                let dw = &factor * &work[(col, j)];
                work[(i, j)] = work[(i, j)].clone() - dw;
                let di = &factor * &inv[(col, j)];
                inv[(i, j)] = inv[(i, j)].clone() - di;
            }
        }
    }
    Ok(inv)
}

/// Exact classical Moore-Penrose inverse via
/// `A^+ = G^* (G G^*)^{-1} (F^* F)^{-1} F^*` from an exact full-rank
/// factorization. All four Penrose conditions hold exactly by
/// construction (and are asserted in the test suite).
///
/// # Errors
///
/// Propagates `NotInvertible` only if the Gram matrices degenerate, which
/// cannot happen for a genuine full-rank factorization.
pub fn exact_pinv(a: &RationalMatrix) -> Result<RationalMatrix> {
    let (m, n) = a.shape();
    let (f, g) = exact_full_rank_factor(a);
    if f.cols() == 0 {
        return Ok(RationalMatrix::zeros(n, m));
    }
    let gstar = g.conj_transpose();
    let fstar = f.conj_transpose();
    let gram_g = exact_inv(&g.mul(&gstar)?)?;
    let gram_f = exact_inv(&fstar.mul(&f)?)?;
    gstar.mul(&gram_g)?.mul(&gram_f)?.mul(&fstar)
}

/// A dual matrix with Gaussian-rational components; `eps^2 = 0` is
/// enforced structurally by the product rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalDualMatrix {
    pub standard: RationalMatrix,
    pub dual: RationalMatrix,
}

impl RationalDualMatrix {
    /// # Panics
    ///
    /// When the component shapes differ (construction-time invariant).
    pub fn new(standard: RationalMatrix, dual: RationalMatrix) -> Self {
        assert_eq!(
            standard.shape(),
            dual.shape(),
            "dual matrix components must share a shape"
        );
        RationalDualMatrix { standard, dual }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalDualMatrix::new(
            RationalMatrix::zeros(rows, cols),
            RationalMatrix::zeros(rows, cols),
        )
    }

    pub fn shape(&self) -> (usize, usize) {
        self.standard.shape()
    }

    pub fn conj_transpose(&self) -> Self {
        RationalDualMatrix::new(self.standard.conj_transpose(), self.dual.conj_transpose())
    }

    /// # Errors
    ///
    /// `ShapeMismatch` when the inner dimensions differ.
    pub fn mul(&self, other: &RationalDualMatrix) -> Result<RationalDualMatrix> {
        let standard = self.standard.mul(&other.standard)?;
        let dual = self
            .standard
            .mul(&other.dual)?
            .add(&self.dual.mul(&other.standard)?)?;
        Ok(RationalDualMatrix::new(standard, dual))
    }

    /// # Errors
    ///
    /// `ShapeMismatch` when the shapes differ.
    pub fn sub(&self, other: &RationalDualMatrix) -> Result<RationalDualMatrix> {
        Ok(RationalDualMatrix::new(
            self.standard.sub(&other.standard)?,
            self.dual.sub(&other.dual)?,
        ))
    }

    /// Exact conversion from a floating-point dual matrix.
    ///
    /// # Errors
    ///
    /// `NotRepresentable` for NaN or infinite entries.
    pub fn from_float(m: &DualMatrix) -> Result<Self> {
        Ok(RationalDualMatrix::new(
            RationalMatrix::from_float(m.standard(), "standard")?,
            RationalMatrix::from_float(m.dual(), "dual")?,
        ))
    }

    /// Nearest floating-point dual matrix.
    pub fn to_float(&self) -> DualMatrix {
        DualMatrix::new(self.standard.to_float(), self.dual.to_float())
    }
}

/// Exact essential/nonessential split: the nonessential dual part is
/// `(I - A_s A_s^+) A_d (I - A_s^+ A_s)`, subtracted exactly.
///
/// # Errors
///
/// Propagates exact-arithmetic shape errors only.
pub fn exact_essential_split(
    a: &RationalDualMatrix,
) -> Result<(RationalDualMatrix, RationalDualMatrix)> {
    let (m, n) = a.shape();
    let p = exact_pinv(&a.standard)?;
    let left = RationalMatrix::identity(m).sub(&a.standard.mul(&p)?)?;
    let right = RationalMatrix::identity(n).sub(&p.mul(&a.standard)?)?;
    let nonessential_dual = left.mul(&a.dual)?.mul(&right)?;
    let nonessential = RationalDualMatrix::new(
        RationalMatrix::zeros(m, n),
        nonessential_dual,
    );
    let essential = a.sub(&nonessential)?;
    Ok((essential, nonessential))
}

/// Exact verdicts of the four nonessential Penrose equations for the
/// candidate `x`: `[A X A = A_e, X A X = X, (A X)^* = A X, (X A)^* = X A]`.
///
/// # Errors
///
/// `ShapeMismatch` when `x` is not the transposed shape of `a`.
pub fn exact_penrose_holds(a: &RationalDualMatrix, x: &RationalDualMatrix) -> Result<[bool; 4]> {
    let ax = a.mul(x)?;
    let xa = x.mul(a)?;
    let (essential, _) = exact_essential_split(a)?;
    let eq1 = ax.mul(a)? == essential;
    let eq2 = xa.mul(x)? == *x;
    let eq3 = ax.conj_transpose() == ax;
    let eq4 = xa.conj_transpose() == xa;
    Ok([eq1, eq2, eq3, eq4])
}

/// Exact verdict of the alternative first-equation characterization
/// `A^* A X A A^* = A^* A A^*`.
///
/// # Errors
///
/// `ShapeMismatch` when `x` is not the transposed shape of `a`.
pub fn exact_alternative_holds(a: &RationalDualMatrix, x: &RationalDualMatrix) -> Result<bool> {
    let astar = a.conj_transpose();
    let lhs = astar.mul(a)?.mul(x)?.mul(a)?.mul(&astar)?;
    let rhs = astar.mul(a)?.mul(&astar)?;
    Ok(lhs == rhs)
}

/// Exact NDMPI through the closed form, verified against the four
/// equations before being returned. Uniqueness of the NDMPI makes any
/// verified candidate *the* answer.
///
/// # Errors
///
/// `CandidateRejected` when the verified-exact check fails (an
/// implementation defect, never a property of the input).
pub fn exact_ndmpi(a: &RationalDualMatrix) -> Result<RationalDualMatrix> {
    let (m, n) = a.shape();
    let p = exact_pinv(&a.standard)?;
    let pstar = p.conj_transpose();
    let adstar = a.dual.conj_transpose();
    let gram_left_inv = p.mul(&pstar)?; // (A_s^* A_s)^+
    let gram_right_inv = pstar.mul(&p)?; // (A_s A_s^*)^+
    let left_proj = RationalMatrix::identity(m).sub(&a.standard.mul(&p)?)?;
    let right_proj = RationalMatrix::identity(n).sub(&p.mul(&a.standard)?)?;

    let term1 = p.mul(&a.dual)?.mul(&p)?.neg();
    let term2 = gram_left_inv.mul(&adstar)?.mul(&left_proj)?;
    let term3 = right_proj.mul(&adstar)?.mul(&gram_right_inv)?;
    let candidate = RationalDualMatrix::new(p, term1.add(&term2)?.add(&term3)?);

    let verdicts = exact_penrose_holds(a, &candidate)?;
    if verdicts != [true; 4] {
        return Err(Error::CandidateRejected {
            detail: format!(
                "closed-form NDMPI candidate failed exact Penrose verification: {verdicts:?}"
            ),
        });
    }
    Ok(candidate)
}

/// Deterministic random dual matrix with small rational entries
/// (numerators in `-8..=8`, denominators in `1..=6`), for oracle
/// comparisons.
pub fn random_rational_dual(rows: usize, cols: usize, seed: u64) -> RationalDualMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let part = |rng: &mut ChaCha8Rng| {
        let mut m = RationalMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let q = |rng: &mut ChaCha8Rng| {
                    BigRational::new(
                        BigInt::from(rng.random_range(-8..=8i64)),
                        BigInt::from(rng.random_range(1..=6i64)),
                    )
                };
                let re = q(rng);
                let im = q(rng);
                m[(i, j)] = gq(re, im);
            }
        }
        m
    };
    let standard = part(&mut rng);
    let dual = part(&mut rng);
    RationalDualMatrix::new(standard, dual)
}
