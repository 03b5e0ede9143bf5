//! Singular value decomposition by one-sided Jacobi rotations.
//!
//! One-sided Jacobi orthogonalizes the columns of the working matrix by
//! unitary plane rotations applied from the right. It is slower than
//! bidiagonalization-based methods but computes small singular values to high
//! relative accuracy, which matters here because downstream rank splits feed
//! perturbation formulas that divide by those values.

use super::ComplexMatrix;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Sweep budget for the cyclic Jacobi iteration. Small dense matrices
/// converge in well under ten sweeps; hitting this limit signals a bug or a
/// pathological input rather than slow progress.
const MAX_SWEEPS: usize = 64;

/// Off-diagonal Gram entries below this multiple of the column-norm product
/// count as annihilated.
const CONVERGENCE_TOL: f64 = 1e-15;

/// Full singular value decomposition `A = U * diag(sigma) * V^*`.
///
/// `u` is `m x m` unitary, `v` is `n x n` unitary, and `sigma` holds the
/// `min(m, n)` singular values sorted in nonincreasing order.
#[derive(Debug, Clone)]
pub struct Svd {
    /// Left singular vectors, one per column.
    pub u: ComplexMatrix,
    /// Singular values, nonincreasing.
    pub sigma: Vec<f64>,
    /// Right singular vectors, one per column.
    pub v: ComplexMatrix,
}

impl Svd {
    /// Rebuilds `U * diag(sigma) * V^*`; used by tests and residual checks.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let (m, _) = self.u.shape();
        let (n, _) = self.v.shape();
        let mut scaled = ComplexMatrix::zeros(m, n);
        for (k, &s) in self.sigma.iter().enumerate() {
            for i in 0..m {
                scaled[(i, k)] = self.u[(i, k)] * s;
            }
        }
        scaled
            .mul(&self.v.conj_transpose())
            .expect("shapes fixed by construction")
    }
}

impl ComplexMatrix {
    /// Full SVD via one-sided Jacobi.
    ///
    /// # Errors
    ///
    /// [`Error::NoConvergence`] if the sweep budget is exhausted.
    pub fn svd(&self) -> Result<Svd> {
        let (m, n) = self.shape();
        if m < n {
            // Work on the conjugate transpose and swap the factors back.
            let t = self.conj_transpose().svd()?;
            return Ok(Svd {
                u: t.v,
                sigma: t.sigma,
                v: t.u,
            });
        }

        let mut work = self.clone();
        let mut v = ComplexMatrix::identity(n);
        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..n {
                for q in (p + 1)..n {
                    if jacobi_orthogonalize(&mut work, &mut v, p, q) {
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
                algorithm: "one-sided Jacobi SVD",
                sweeps: MAX_SWEEPS,
            });
        }

        // Column norms are the singular values; sort them nonincreasing.
        let mut order: Vec<usize> = (0..n).collect();
        let norms: Vec<f64> = (0..n)
            .map(|j| (0..m).map(|i| work[(i, j)].norm_sqr()).sum::<f64>().sqrt())
            .collect();
        order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));
        let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();

        let mut v_sorted = ComplexMatrix::zeros(n, n);
        for (new_j, &old_j) in order.iter().enumerate() {
            for i in 0..n {
                v_sorted[(i, new_j)] = v[(i, old_j)];
            }
        }

        // Left factor: normalized nonzero columns, then an orthonormal
        // completion for zero columns and the trailing m - n slots.
        let normalize_floor = sigma.first().copied().unwrap_or(0.0) * (m as f64) * f64::EPSILON;
        let mut u = ComplexMatrix::zeros(m, m);
        let mut filled = 0usize;
        for (new_j, &old_j) in order.iter().enumerate() {
            if sigma[new_j] > normalize_floor && sigma[new_j] > 0.0 {
                for i in 0..m {
                    u[(i, new_j)] = work[(i, old_j)] / sigma[new_j];
                }
                filled = new_j + 1;
            } else {
                break;
            }
        }
        complete_orthonormal_basis(&mut u, filled)?;

        Ok(Svd {
            u,
            sigma,
            v: v_sorted,
        })
    }
}

/// Applies one Jacobi rotation to columns `p`, `q` of `work` (and `v`),
/// making them orthogonal. Returns whether a rotation was applied.
fn jacobi_orthogonalize(
    work: &mut ComplexMatrix,
    v: &mut ComplexMatrix,
    p: usize,
    q: usize,
) -> bool {
    let m = work.rows();
    let mut gpp = 0.0f64;
    let mut gqq = 0.0f64;
    let mut gpq = Complex64::ZERO;
    for i in 0..m {
        let ap = work[(i, p)];
        let aq = work[(i, q)];
        gpp += ap.norm_sqr();
        gqq += aq.norm_sqr();
        gpq += ap.conj() * aq;
    }
    let off = gpq.norm();
    if off <= CONVERGENCE_TOL * (gpp * gqq).sqrt() || off == 0.0 {
        return false;
    }

    // Factor out the phase of the Gram off-diagonal entry, then solve the
    // real symmetric 2x2 rotation: cot(2 theta) = (gqq - gpp) / (2 |gpq|).
    let phase = gpq / off;
    let tau = (gqq - gpp) / (2.0 * off);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let rotate = |mat: &mut ComplexMatrix| {
        for i in 0..mat.rows() {
            let xp = mat[(i, p)];
            let xq = mat[(i, q)];
            mat[(i, p)] = xp * c - xq * phase.conj() * s;
            mat[(i, q)] = xp * phase * s + xq * c;
        }
    };
    rotate(work);
    rotate(v);
    true
}

/// Fills columns `filled..m` of `u` with an orthonormal completion of the
/// first `filled` (already orthonormal) columns. Candidates are standard
/// basis vectors; each slot takes the candidate with the largest component
/// orthogonal to everything accepted so far, which keeps the choice
/// deterministic and exact for axis-aligned inputs.
fn complete_orthonormal_basis(u: &mut ComplexMatrix, filled: usize) -> Result<()> {
    let m = u.rows();
    let mut used = vec![false; m];
    for slot in filled..m {
        let mut best: Option<(usize, f64, Vec<Complex64>)> = None;
        for cand in 0..m {
            if used[cand] {
                continue;
            }
            let mut vec: Vec<Complex64> = vec![Complex64::ZERO; m];
            vec[cand] = Complex64::ONE;
            // Two rounds of Gram-Schmidt against accepted columns.
            for _ in 0..2 {
                for j in 0..slot {
                    let mut proj = Complex64::ZERO;
                    for i in 0..m {
                        proj += u[(i, j)].conj() * vec[i];
                    }
                    for i in 0..m {
                        let adj = u[(i, j)] * proj;
                        vec[i] -= adj;
                    }
                }
            }
            let norm = vec.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|(_, b, _)| norm > *b) {
                best = Some((cand, norm, vec));
            }
        }
        let (cand, norm, vec) = best.ok_or(Error::NoConvergence {
            algorithm: "orthonormal completion",
            sweeps: 0,
        })?;
        if norm <= 1e-8 {
            return Err(Error::NoConvergence {
                algorithm: "orthonormal completion",
                sweeps: 0,
            });
        }
        used[cand] = true;
        for i in 0..m {
            u[(i, slot)] = vec[i] / norm;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::test_support::{random_complex, rng_for};

    fn assert_unitary(u: &ComplexMatrix, tol: f64) {
        let n = u.rows();
        let gram = u.conj_transpose().mul(u).unwrap();
        assert!(
            gram.rel_residual(&ComplexMatrix::identity(n)) <= tol,
            "unitarity residual {}",
            gram.rel_residual(&ComplexMatrix::identity(n))
        );
    }

    #[test]
    fn identity_decomposes_exactly() {
        let a = ComplexMatrix::identity(4);
        let svd = a.svd().unwrap();
        assert_eq!(svd.sigma, vec![1.0; 4]);
        assert_eq!(svd.u, ComplexMatrix::identity(4));
        assert_eq!(svd.v, ComplexMatrix::identity(4));
    }

    #[test]
    fn diagonal_with_zero_sorts_and_completes() {
        let a = ComplexMatrix::from_real_rows(&[&[3.0, 0.0], &[0.0, 0.0]]).unwrap();
        let svd = a.svd().unwrap();
        assert_eq!(svd.sigma, vec![3.0, 0.0]);
        assert_eq!(svd.u, ComplexMatrix::identity(2));
        assert_eq!(svd.v, ComplexMatrix::identity(2));
    }

    #[test]
    fn tall_and_wide_random_reconstruct() {
        let mut rng = rng_for(7);
        for &(m, n) in &[(5usize, 3usize), (3, 5), (6, 6), (1, 4), (4, 1)] {
            let a = random_complex(&mut rng, m, n);
            let svd = a.svd().unwrap();
            assert!(svd.reconstruct().rel_residual(&a) <= 1e-12);
            assert_unitary(&svd.u, 1e-12);
            assert_unitary(&svd.v, 1e-12);
            for w in svd.sigma.windows(2) {
                assert!(w[0] >= w[1]);
            }
        }
    }

    #[test]
    fn rank_deficient_reconstructs() {
        let mut rng = rng_for(8);
        // rank 2 in a 5x4 matrix
        let x = random_complex(&mut rng, 5, 2);
        let y = random_complex(&mut rng, 2, 4);
        let a = x.mul(&y).unwrap();
        let svd = a.svd().unwrap();
        assert!(svd.reconstruct().rel_residual(&a) <= 1e-12);
        assert!(svd.sigma[2] <= 1e-12 * svd.sigma[0]);
        assert_unitary(&svd.u, 1e-12);
    }

    #[test]
    fn zero_matrix_svd() {
        let a = ComplexMatrix::zeros(3, 2);
        let svd = a.svd().unwrap();
        assert_eq!(svd.sigma, vec![0.0, 0.0]);
        assert_unitary(&svd.u, 1e-15);
        assert_unitary(&svd.v, 1e-15);
    }
}
