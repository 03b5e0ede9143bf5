//! Rank decisions, pseudoinverse, full-rank factorization, and inversion.

use super::ComplexMatrix;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Default relative rank tolerance for an `m x n` matrix: singular values at
/// or below `max(m, n) * eps` times the largest one are treated as zero.
pub fn default_rank_tol(rows: usize, cols: usize) -> f64 {
    rows.max(cols) as f64 * f64::EPSILON
}

impl ComplexMatrix {
    /// Effective cutoff applied to singular values: `tol` relative to the
    /// largest singular value, floored at the machine-level default so a
    /// zero or ultra-tight tolerance never promotes roundoff to rank.
    fn sigma_cutoff(&self, smax: f64, tol: f64) -> f64 {
        let (m, n) = self.shape();
        smax * tol.max(default_rank_tol(m, n))
    }

    /// Numerical rank: the number of singular values above `tol * s_max`
    /// (above `tol` absolute when `s_max = 0`, which only the zero matrix
    /// attains — its rank is 0).
    ///
    /// # Errors
    ///
    /// Propagates [`Error::NoConvergence`] from the SVD.
    pub fn rank(&self, tol: f64) -> Result<usize> {
        let svd = self.svd()?;
        let smax = svd.sigma.first().copied().unwrap_or(0.0);
        let cut = self.sigma_cutoff(smax, tol);
        Ok(svd.sigma.iter().filter(|&&s| s > cut).count())
    }

    /// Moore-Penrose pseudoinverse via the SVD, zeroing singular values at or
    /// below `tol * s_max`.
    ///
    /// # Errors
    ///
    /// Propagates [`Error::NoConvergence`] from the SVD.
    pub fn pinv(&self, tol: f64) -> Result<ComplexMatrix> {
        let (m, n) = self.shape();
        let svd = self.svd()?;
        let smax = svd.sigma.first().copied().unwrap_or(0.0);
        let cut = self.sigma_cutoff(smax, tol);
        // X = V * diag(1/sigma_i) * U^* over the retained singular values.
        let mut x = ComplexMatrix::zeros(n, m);
        for (k, &s) in svd.sigma.iter().enumerate() {
            if s <= cut {
                continue;
            }
            for i in 0..n {
                let vik = svd.v[(i, k)] / s;
                if vik == Complex64::ZERO {
                    continue;
                }
                for j in 0..m {
                    x[(i, j)] += vik * svd.u[(j, k)].conj();
                }
            }
        }
        Ok(x)
    }

    /// Full-rank factorization `A = F * G` with `F` of full column rank
    /// (`m x r`) and `G` of full row rank (`r x n`), taken from the SVD as
    /// `F = U_1 * Sigma_1`, `G = V_1^*`. Rank 0 yields empty factors.
    ///
    /// # Errors
    ///
    /// Propagates [`Error::NoConvergence`] from the SVD.
    pub fn full_rank_factor(&self, tol: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
        let (m, n) = self.shape();
        let svd = self.svd()?;
        let smax = svd.sigma.first().copied().unwrap_or(0.0);
        let cut = self.sigma_cutoff(smax, tol);
        let r = svd.sigma.iter().filter(|&&s| s > cut).count();
        let mut f = ComplexMatrix::zeros(m, r);
        let mut g = ComplexMatrix::zeros(r, n);
        for k in 0..r {
            for i in 0..m {
                f[(i, k)] = svd.u[(i, k)] * svd.sigma[k];
            }
            for j in 0..n {
                g[(k, j)] = svd.v[(j, k)].conj();
            }
        }
        Ok((f, g))
    }

    /// Inverse of a square nonsingular matrix by Gauss-Jordan elimination
    /// with partial pivoting.
    ///
    /// # Errors
    ///
    /// [`Error::NotInvertible`] for non-square or numerically singular input.
    pub fn inv(&self) -> Result<ComplexMatrix> {
        if !self.is_square() {
            let (m, n) = self.shape();
            return Err(Error::NotInvertible {
                detail: format!("matrix is {m}x{n}"),
            });
        }
        let n = self.rows();
        let mut a = self.clone();
        let mut x = ComplexMatrix::identity(n);
        let floor = (n as f64) * f64::EPSILON * self.max_norm();
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&i, &j| a[(i, col)].norm().total_cmp(&a[(j, col)].norm()))
                .expect("nonempty range");
            let pivot = a[(pivot_row, col)];
            if pivot.norm() <= floor {
                return Err(Error::NotInvertible {
                    detail: format!("pivot {:e} in column {col} is below {floor:e}", pivot.norm()),
                });
            }
            if pivot_row != col {
                for j in 0..n {
                    let tmp = a[(col, j)];
                    a[(col, j)] = a[(pivot_row, j)];
                    a[(pivot_row, j)] = tmp;
                    let tmp = x[(col, j)];
                    x[(col, j)] = x[(pivot_row, j)];
                    x[(pivot_row, j)] = tmp;
                }
            }
            let inv_pivot = pivot.inv();
            for j in 0..n {
                a[(col, j)] *= inv_pivot;
                x[(col, j)] *= inv_pivot;
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let factor = a[(i, col)];
                if factor == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    let sub_a = factor * a[(col, j)];
                    a[(i, j)] -= sub_a;
                    let sub_x = factor * x[(col, j)];
                    x[(i, j)] -= sub_x;
                }
            }
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::test_support::{random_complex, rng_for};

    fn penrose_residual(a: &ComplexMatrix, x: &ComplexMatrix) -> f64 {
        let axa = a.mul(x).unwrap().mul(a).unwrap();
        let xax = x.mul(a).unwrap().mul(x).unwrap();
        let ax = a.mul(x).unwrap();
        let xa = x.mul(a).unwrap();
        [
            axa.rel_residual(a),
            xax.rel_residual(x),
            ax.rel_residual(&ax.conj_transpose()),
            xa.rel_residual(&xa.conj_transpose()),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    #[test]
    fn pinv_of_diagonal() {
        let a = ComplexMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 0.0]]).unwrap();
        let x = a.pinv(1e-12).unwrap();
        let expect = ComplexMatrix::from_real_rows(&[&[0.5, 0.0], &[0.0, 0.0]]).unwrap();
        assert_eq!(x, expect);
    }

    #[test]
    fn pinv_penrose_conditions_random() {
        let mut rng = rng_for(21);
        for &(m, n, r) in &[(4usize, 4usize, 4usize), (5, 3, 2), (3, 5, 1), (6, 2, 2)] {
            let a = if r == m.min(n) {
                random_complex(&mut rng, m, n)
            } else {
                let x = random_complex(&mut rng, m, r);
                let y = random_complex(&mut rng, r, n);
                x.mul(&y).unwrap()
            };
            let x = a.pinv(1e-10).unwrap();
            assert!(
                penrose_residual(&a, &x) <= 1e-10,
                "penrose residual {}",
                penrose_residual(&a, &x)
            );
        }
    }

    #[test]
    fn pinv_of_invertible_matches_inverse() {
        let mut rng = rng_for(22);
        let a = random_complex(&mut rng, 4, 4);
        let p = a.pinv(1e-12).unwrap();
        let inv = a.inv().unwrap();
        assert!(p.rel_residual(&inv) <= 1e-11);
        let prod = a.mul(&inv).unwrap();
        assert!(prod.rel_residual(&ComplexMatrix::identity(4)) <= 1e-12);
    }

    #[test]
    fn rank_counts() {
        let mut rng = rng_for(23);
        assert_eq!(ComplexMatrix::zeros(3, 4).rank(1e-9).unwrap(), 0);
        assert_eq!(ComplexMatrix::identity(5).rank(1e-9).unwrap(), 5);
        let x = random_complex(&mut rng, 6, 3);
        let y = random_complex(&mut rng, 3, 5);
        assert_eq!(x.mul(&y).unwrap().rank(1e-9).unwrap(), 3);
    }

    #[test]
    fn full_rank_factor_cases() {
        // Identity factors as I * I.
        let (f, g) = ComplexMatrix::identity(3).full_rank_factor(1e-12).unwrap();
        assert_eq!(f, ComplexMatrix::identity(3));
        assert_eq!(g, ComplexMatrix::identity(3));

        // Rank-1: F proportional to u, G proportional to v^*.
        let u = ComplexMatrix::from_real_rows(&[&[1.0], &[2.0]]).unwrap();
        let v = ComplexMatrix::from_real_rows(&[&[3.0, 0.0, 4.0]]).unwrap();
        let a = u.mul(&v).unwrap();
        let (f, g) = a.full_rank_factor(1e-12).unwrap();
        assert_eq!(f.shape(), (2, 1));
        assert_eq!(g.shape(), (1, 3));
        assert!(f.mul(&g).unwrap().rel_residual(&a) <= 1e-13);

        // Rank 0 gives empty factors.
        let (f, g) = ComplexMatrix::zeros(2, 3).full_rank_factor(1e-12).unwrap();
        assert_eq!(f.shape(), (2, 0));
        assert_eq!(g.shape(), (0, 3));
    }

    #[test]
    fn factor_based_pinv_matches_svd_pinv() {
        let mut rng = rng_for(24);
        let x = random_complex(&mut rng, 5, 2);
        let y = random_complex(&mut rng, 2, 4);
        let a = x.mul(&y).unwrap();
        let (f, g) = a.full_rank_factor(1e-10).unwrap();
        // A^+ = G^* (G G^*)^{-1} (F^* F)^{-1} F^*
        let gg = g.mul(&g.conj_transpose()).unwrap().inv().unwrap();
        let ff = f.conj_transpose().mul(&f).unwrap().inv().unwrap();
        let via_factor = g
            .conj_transpose()
            .mul(&gg)
            .unwrap()
            .mul(&ff)
            .unwrap()
            .mul(&f.conj_transpose())
            .unwrap();
        let via_svd = a.pinv(1e-10).unwrap();
        assert!(via_factor.rel_residual(&via_svd) <= 1e-9);
    }

    #[test]
    fn singular_matrix_rejected_by_inv() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        assert!(matches!(a.inv(), Err(Error::NotInvertible { .. })));
    }
}
