//! Hermitian eigendecomposition by classical two-sided Jacobi rotations.

use super::ComplexMatrix;
use crate::error::{Error, Result};
use num_complex::Complex64;

const MAX_SWEEPS: usize = 64;
const CONVERGENCE_TOL: f64 = 1e-15;

/// Eigendecomposition `H = Q * diag(values) * Q^*` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermEig {
    /// Real eigenvalues, sorted nonincreasing.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: ComplexMatrix,
}

impl HermEig {
    /// Rebuilds `Q * diag(values) * Q^*`; used by tests and residual checks.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.vectors.rows();
        let mut scaled = ComplexMatrix::zeros(n, n);
        for (k, &lam) in self.values.iter().enumerate() {
            for i in 0..n {
                scaled[(i, k)] = self.vectors[(i, k)] * lam;
            }
        }
        scaled
            .mul(&self.vectors.conj_transpose())
            .expect("square by construction")
    }
}

impl ComplexMatrix {
    /// Hermitian eigendecomposition with eigenvalues sorted nonincreasing.
    ///
    /// # Errors
    ///
    /// [`Error::NotHermitian`] when `max |H - H*|` exceeds
    /// `tol * (1 + max |H|)`, and [`Error::NoConvergence`] if the Jacobi
    /// sweep budget runs out.
    pub fn herm_eig(&self, tol: f64) -> Result<HermEig> {
        if !self.is_square() {
            return Err(Error::NotHermitian {
                asymmetry: f64::INFINITY,
                tol,
            });
        }
        let asymmetry = self.asymmetry();
        if asymmetry > tol * (1.0 + self.max_norm()) {
            return Err(Error::NotHermitian { asymmetry, tol });
        }

        let n = self.rows();
        // Exact symmetrization removes the sub-tolerance asymmetry so the
        // iteration below preserves Hermitian structure by construction.
        let mut h = self.hermitian_part();
        let mut q = ComplexMatrix::identity(n);

        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            let scale = h.max_norm();
            if scale == 0.0 {
                converged = true;
                break;
            }
            let mut rotated = false;
            for p in 0..n {
                for j in (p + 1)..n {
                    if jacobi_annihilate(&mut h, &mut q, p, j, CONVERGENCE_TOL * scale) {
                        rotated = true;
                    }
                }
            }
            if !rotated {
                converged = true;
                break;
            }
        }
        if !converged && n > 1 {
            return Err(Error::NoConvergence {
                algorithm: "Hermitian Jacobi eigensolver",
                sweeps: MAX_SWEEPS,
            });
        }

        let mut order: Vec<usize> = (0..n).collect();
        let diag: Vec<f64> = (0..n).map(|i| h[(i, i)].re).collect();
        order.sort_by(|&a, &b| diag[b].total_cmp(&diag[a]));
        let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
        let mut vectors = ComplexMatrix::zeros(n, n);
        for (new_j, &old_j) in order.iter().enumerate() {
            for i in 0..n {
                vectors[(i, new_j)] = q[(i, old_j)];
            }
        }
        Ok(HermEig { values, vectors })
    }
}

/// Annihilates `h[(p, j)]` by a unitary congruence, accumulating the rotation
/// into `q`. Returns whether a rotation was applied.
fn jacobi_annihilate(
    h: &mut ComplexMatrix,
    q: &mut ComplexMatrix,
    p: usize,
    j: usize,
    threshold: f64,
) -> bool {
    let gamma = h[(p, j)];
    let off = gamma.norm();
    if off <= threshold || off == 0.0 {
        return false;
    }
    let alpha = h[(p, p)].re;
    let beta = h[(j, j)].re;
    let phase = gamma / off;
    let tau = (beta - alpha) / (2.0 * off);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Column update: X <- X * J with J = [[c, s*phase], [-s*conj(phase), c]].
    let col_update = |mat: &mut ComplexMatrix| {
        for i in 0..mat.rows() {
            let xp = mat[(i, p)];
            let xj = mat[(i, j)];
            mat[(i, p)] = xp * c - xj * phase.conj() * s;
            mat[(i, j)] = xp * phase * s + xj * c;
        }
    };
    col_update(h);
    col_update(q);
    // Row update: H <- J^* H.
    for k in 0..h.cols() {
        let hp = h[(p, k)];
        let hj = h[(j, k)];
        h[(p, k)] = hp * c - hj * phase * s;
        h[(j, k)] = hp * phase.conj() * s + hj * c;
    }
    // Re-pin the now-annihilated pair and the real diagonal to kill roundoff
    // drift that would otherwise accumulate over sweeps.
    h[(p, j)] = Complex64::ZERO;
    h[(j, p)] = Complex64::ZERO;
    h[(p, p)] = Complex64::new(h[(p, p)].re, 0.0);
    h[(j, j)] = Complex64::new(h[(j, j)].re, 0.0);
    true
}
