//! Dual complex matrices: pairs `A = A_s + A_d * eps` of complex matrices
//! with nilpotent dual arithmetic, plus the essential/nonessential split and
//! seeded random generators used throughout the test batteries.

use crate::error::{Error, Result};
use crate::kernel::ComplexMatrix;
use crate::scalar::DualComplex;
use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// A dual complex matrix `A_s + A_d * eps`. Both components always share one
/// shape.
#[derive(Debug, Clone, PartialEq)]
pub struct DualMatrix {
    standard: ComplexMatrix,
    dual: ComplexMatrix,
}

/// Result of splitting a dual matrix into essential and nonessential parts.
///
/// The nonessential part is computed and the essential part is obtained by
/// subtraction, so the two parts sum back to the original up to one
/// floating-point rounding per entry.
#[derive(Debug, Clone)]
pub struct EssentialSplit {
    /// The essential part `A_e`.
    pub essential: DualMatrix,
    /// The nonessential part `A_n`; purely dual by construction.
    pub nonessential: DualMatrix,
}

impl DualMatrix {
    /// Builds a dual matrix from its standard and dual components.
    ///
    /// # Panics
    ///
    /// Panics when the component shapes differ; parsing layers validate
    /// shapes before calling this.
    pub fn new(standard: ComplexMatrix, dual: ComplexMatrix) -> Self {
        assert_eq!(
            standard.shape(),
            dual.shape(),
            "dual matrix components must share a shape"
        );
        Self { standard, dual }
    }

    /// A purely standard matrix (zero dual part).
    pub fn from_standard(standard: ComplexMatrix) -> Self {
        let dual = ComplexMatrix::zeros(standard.rows(), standard.cols());
        Self { standard, dual }
    }

    /// Builds both components from rows of real entries; the common shorthand
    /// for small worked examples.
    ///
    /// # Errors
    ///
    /// [`Error::Dimension`] when rows are ragged or the components disagree.
    pub fn from_real_parts(standard: &[&[f64]], dual: &[&[f64]]) -> Result<Self> {
        let s = ComplexMatrix::from_real_rows(standard)?;
        let d = ComplexMatrix::from_real_rows(dual)?;
        if s.shape() != d.shape() {
            return Err(Error::Dimension(format!(
                "standard part is {}x{} but dual part is {}x{}",
                s.rows(),
                s.cols(),
                d.rows(),
                d.cols()
            )));
        }
        Ok(Self::new(s, d))
    }

    /// All-zero dual matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            standard: ComplexMatrix::zeros(rows, cols),
            dual: ComplexMatrix::zeros(rows, cols),
        }
    }

    /// Identity as a dual matrix.
    pub fn identity(n: usize) -> Self {
        Self::from_standard(ComplexMatrix::identity(n))
    }

    /// Standard component.
    pub fn standard(&self) -> &ComplexMatrix {
        &self.standard
    }

    /// Dual component.
    pub fn dual(&self) -> &ComplexMatrix {
        &self.dual
    }

    /// `(rows, cols)`.
    pub fn shape(&self) -> (usize, usize) {
        self.standard.shape()
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.standard.rows()
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.standard.cols()
    }

    /// True for square matrices.
    pub fn is_square(&self) -> bool {
        self.standard.is_square()
    }

    /// Entry at `(i, j)` as a dual complex scalar.
    pub fn get(&self, i: usize, j: usize) -> DualComplex {
        DualComplex::new(self.standard[(i, j)], self.dual[(i, j)])
    }

    /// Sets the entry at `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, value: DualComplex) {
        self.standard[(i, j)] = value.standard;
        self.dual[(i, j)] = value.dual;
    }

    /// Conjugate transpose, applied to both components.
    pub fn conj_transpose(&self) -> Self {
        Self {
            standard: self.standard.conj_transpose(),
            dual: self.dual.conj_transpose(),
        }
    }

    /// Dual matrix product: the dual component collects the two cross terms,
    /// and the `eps^2` term vanishes.
    ///
    /// # Errors
    ///
    /// [`Error::ShapeMismatch`] when inner dimensions differ.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let standard = self.standard.mul(&rhs.standard)?;
        let dual = self
            .standard
            .mul(&rhs.dual)?
            .add(&self.dual.mul(&rhs.standard)?)?;
        Ok(Self { standard, dual })
    }

    /// Entrywise sum.
    ///
    /// # Errors
    ///
    /// [`Error::ShapeMismatch`] when shapes differ.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(Self {
            standard: self.standard.add(&rhs.standard)?,
            dual: self.dual.add(&rhs.dual)?,
        })
    }

    /// Entrywise difference.
    ///
    /// # Errors
    ///
    /// [`Error::ShapeMismatch`] when shapes differ.
    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(Self {
            standard: self.standard.sub(&rhs.standard)?,
            dual: self.dual.sub(&rhs.dual)?,
        })
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Self {
            standard: self.standard.neg(),
            dual: self.dual.neg(),
        }
    }

    /// Multiplication by a dual complex scalar (nilpotent rule applies).
    pub fn scale(&self, s: DualComplex) -> Self {
        Self {
            standard: self.standard.scale(s.standard),
            dual: self
                .standard
                .scale(s.dual)
                .add(&self.dual.scale(s.standard))
                .expect("components share a shape"),
        }
    }

    /// Largest entry magnitude over both components.
    pub fn max_norm(&self) -> f64 {
        self.standard.max_norm().max(self.dual.max_norm())
    }

    /// True when both components are Hermitian at `tol` (relative to size).
    pub fn is_hermitian(&self, tol: f64) -> bool {
        let scale = 1.0 + self.max_norm();
        self.is_square()
            && self.standard.asymmetry() <= tol * scale
            && self.dual.asymmetry() <= tol * scale
    }

    /// True when `U^* U` and `U U^*` are both the identity at `tol`;
    /// non-square matrices are never unitary.
    pub fn is_unitary(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows();
        let id = DualMatrix::identity(n);
        let left = self.conj_transpose().mul(self).expect("square");
        let right = self.mul(&self.conj_transpose()).expect("square");
        rel_residual(&left, &id) <= tol && rel_residual(&right, &id) <= tol
    }

    /// Splits the matrix into essential and nonessential parts. The
    /// nonessential dual component is `(I - A_s A_s^+) A_d (I - A_s^+ A_s)`,
    /// the portion of the dual part invisible to the standard column and row
    /// spaces; the essential part is the exact remainder.
    ///
    /// # Errors
    ///
    /// Propagates kernel errors from the pseudoinverse.
    pub fn essential_split(&self, tol: f64) -> Result<EssentialSplit> {
        let (m, n) = self.shape();
        let pinv = self.standard.pinv(tol)?;
        let left = ComplexMatrix::identity(m).sub(&self.standard.mul(&pinv)?)?;
        let right = ComplexMatrix::identity(n).sub(&pinv.mul(&self.standard)?)?;
        let nonessential_dual = left.mul(&self.dual)?.mul(&right)?;
        let nonessential = DualMatrix::new(ComplexMatrix::zeros(m, n), nonessential_dual);
        let essential = self.sub(&nonessential)?;
        Ok(EssentialSplit {
            essential,
            nonessential,
        })
    }

    /// Norm of the nonessential part relative to the matrix scale; this is
    /// the obstruction to both the dual Moore-Penrose generalized inverse and
    /// the dual rank decomposition.
    ///
    /// # Errors
    ///
    /// Propagates kernel errors from the pseudoinverse.
    pub fn nonessential_norm(&self, tol: f64) -> Result<f64> {
        let split = self.essential_split(tol)?;
        Ok(split.nonessential.dual.max_norm() / (1.0 + self.max_norm()))
    }
}

/// Relative residual between two dual matrices: the largest entrywise
/// difference over both components, normalized by `1 +` the larger of the two
/// operand magnitudes. Mismatched shapes compare as infinitely far apart.
pub fn rel_residual(a: &DualMatrix, b: &DualMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    let scale = 1.0 + a.max_norm().max(b.max_norm());
    let diff_s = a
        .standard
        .sub(&b.standard)
        .expect("shape checked")
        .max_norm();
    let diff_d = a.dual.sub(&b.dual).expect("shape checked").max_norm();
    diff_s.max(diff_d) / scale
}

/// Deterministic generator seeded from a `u64`.
fn rng_for_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_complex_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Random dual matrix whose standard part has exact rank `rank_s` (built as
/// a product of Gaussian factors) and whose dual part is dense Gaussian.
/// Identical seeds reproduce identical matrices.
///
/// # Errors
///
/// [`Error::InvalidRank`] when `rank_s > min(rows, cols)`.
pub fn random_dual(rows: usize, cols: usize, rank_s: usize, seed: u64) -> Result<DualMatrix> {
    if rank_s > rows.min(cols) {
        return Err(Error::InvalidRank {
            rank: rank_s,
            rows,
            cols,
        });
    }
    let mut rng = rng_for_seed(seed);
    let standard = if rank_s == 0 {
        ComplexMatrix::zeros(rows, cols)
    } else {
        let x = random_complex_matrix(&mut rng, rows, rank_s);
        let y = random_complex_matrix(&mut rng, rank_s, cols);
        x.mul(&y).expect("inner dimensions match")
    };
    let dual = random_complex_matrix(&mut rng, rows, cols);
    Ok(DualMatrix::new(standard, dual))
}

/// Random dual matrix with zero nonessential part: the dual component is
/// `A_s W + Z A_s`, which both projectors of the split annihilate. These are
/// exactly the matrices whose dual Moore-Penrose generalized inverse exists.
///
/// # Errors
///
/// [`Error::InvalidRank`] when `rank_s > min(rows, cols)`.
pub fn random_dual_decomposable(
    rows: usize,
    cols: usize,
    rank_s: usize,
    seed: u64,
) -> Result<DualMatrix> {
    if rank_s > rows.min(cols) {
        return Err(Error::InvalidRank {
            rank: rank_s,
            rows,
            cols,
        });
    }
    let mut rng = rng_for_seed(seed);
    let standard = if rank_s == 0 {
        ComplexMatrix::zeros(rows, cols)
    } else {
        let x = random_complex_matrix(&mut rng, rows, rank_s);
        let y = random_complex_matrix(&mut rng, rank_s, cols);
        x.mul(&y).expect("inner dimensions match")
    };
    let w = random_complex_matrix(&mut rng, cols, cols);
    let z = random_complex_matrix(&mut rng, rows, rows);
    let dual = standard
        .mul(&w)
        .expect("shapes agree")
        .add(&z.mul(&standard).expect("shapes agree"))
        .expect("shapes agree");
    Ok(DualMatrix::new(standard, dual))
}

/// Random dual-unitary matrix `(I + eps * S) U_s` with `U_s` unitary and `S`
/// skew-Hermitian; such products are exactly the dual-unitary matrices.
pub fn random_dual_unitary(n: usize, seed: u64) -> DualMatrix {
    let mut rng = rng_for_seed(seed);
    let g = random_complex_matrix(&mut rng, n, n);
    // Polar unitary factor of a Gaussian matrix.
    let svd = g.svd().expect("Gaussian matrices converge");
    let u_s = svd.u.mul(&svd.v.conj_transpose()).expect("square");
    let w = random_complex_matrix(&mut rng, n, n);
    let skew = w.sub(&w.conj_transpose()).expect("square").scale(0.5.into());
    let u_d = skew.mul(&u_s).expect("square");
    DualMatrix::new(u_s, u_d)
}

/// First `q` columns of a random dual-unitary matrix: a dual matrix with
/// exactly dual-orthonormal columns (`Q^* Q = I_q`).
///
/// # Errors
///
/// [`Error::InvalidRank`] when `q > rows`.
pub fn random_columns_orthonormal(rows: usize, q: usize, seed: u64) -> Result<DualMatrix> {
    if q > rows {
        return Err(Error::InvalidRank {
            rank: q,
            rows,
            cols: rows,
        });
    }
    let full = random_dual_unitary(rows, seed);
    Ok(DualMatrix::new(
        full.standard().block(0, rows, 0, q),
        full.dual().block(0, rows, 0, q),
    ))
}

#[cfg(test)]
pub(crate) mod test_support {
    //! Shared helpers for the crate's unit tests.
    use crate::kernel::ComplexMatrix;
    use rand_chacha::ChaCha8Rng;

    pub fn rng_for(seed: u64) -> ChaCha8Rng {
        super::rng_for_seed(seed)
    }

    pub fn random_complex(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
        super::random_complex_matrix(rng, rows, cols)
    }
}
