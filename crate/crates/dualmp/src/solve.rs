//! Dual linear systems and the dual rank decomposition.
//!
//! `solve_min_norm` computes `x = A^N b` for a dual system `A x = b`. When
//! the nonessential part of `A` vanishes this is the minimum-norm
//! least-squares solution in the total order on dual reals: no candidate
//! achieves a smaller residual norm, and among residual-norm ties none is
//! shorter. When `A_n != 0` the least-squares notion is *essential*: the
//! standard part of the residual is still minimal, but the infinitesimal
//! part of the residual norm can be lowered indefinitely by moving along
//! the kernel of the standard part, so no total-order minimum exists at
//! all (see `nonessential_systems_have_no_total_order_minimum` in the
//! tests for a two-line witness).
//!
//! `dual_rank_decomposition` factors `A = L R` with `L` of full column
//! rank `r` and `R` of full row rank `r` in their standard parts; such a
//! factorization exists exactly when `A_n = 0` — the same gate as DMPGI
//! existence.

use crate::error::{Error, Result};
use crate::inverse::ndmpi_with_rank;
use crate::matrix::{DualMatrix, rel_residual};
use crate::scalar::DualReal;

/// Outcome of [`solve_min_norm`].
#[derive(Debug, Clone)]
pub struct DualSolveResult {
    /// The solution `A^N b` (`n x 1`).
    pub solution: DualMatrix,
    /// Dual 2-norm of the residual `A x - b`.
    pub residual_norm: DualReal,
    /// Rank of the standard part used when inverting.
    pub rank_used: usize,
}

/// Dual 2-norm of a column vector `u = u_s + u_d eps`: the first-order
/// expansion of the Euclidean norm,
/// `||u_s|| + eps * Re<u_s, u_d> / ||u_s||`, or the purely infinitesimal
/// `0 + eps ||u_d||` when the standard part is exactly zero.
///
/// # Errors
///
/// `Error::Dimension` when the input is not a column vector.
pub fn dual_vector_norm(u: &DualMatrix) -> Result<DualReal> {
    if u.cols() != 1 {
        return Err(Error::Dimension(format!(
            "dual vector norm needs a column vector, got {}x{}",
            u.rows(),
            u.cols()
        )));
    }
    let standard_norm = u.standard().fro_norm();
    if standard_norm == 0.0 {
        return Ok(DualReal::new(0.0, u.dual().fro_norm()));
    }
    let mut inner_re = 0.0;
    for i in 0..u.rows() {
        inner_re += (u.standard()[(i, 0)].conj() * u.dual()[(i, 0)]).re;
    }
    Ok(DualReal::new(standard_norm, inner_re / standard_norm))
}

/// Solves `A x = b` in the least-squares sense through the NDMPI.
///
/// # Errors
///
/// `ShapeMismatch` when `b` is not an `m x 1` vector for `A` of shape
/// `m x n`; kernel errors are propagated.
pub fn solve_min_norm(a: &DualMatrix, b: &DualMatrix, tol: f64) -> Result<DualSolveResult> {
    if b.shape() != (a.rows(), 1) {
        return Err(Error::ShapeMismatch {
            left: format!("{}x{}", a.rows(), a.cols()),
            right: format!("{}x{}", b.rows(), b.cols()),
            op: "solve (right-hand side must be an m x 1 vector)",
        });
    }
    let (inverse, rank_used) = ndmpi_with_rank(a, tol)?;
    let solution = inverse.mul(b)?;
    let residual = a.mul(&solution)?.sub(b)?;
    Ok(DualSolveResult {
        solution,
        residual_norm: dual_vector_norm(&residual)?,
        rank_used,
    })
}

/// A dual `r`-rank decomposition `A = left * right`.
#[derive(Debug, Clone)]
pub struct RankDecomposition {
    /// `m x r`, standard part of full column rank.
    pub left: DualMatrix,
    /// `r x n`, standard part of full row rank.
    pub right: DualMatrix,
}

/// Factors `A = L R` with inner dimension `r = rank(A_s)`. The standard
/// parts come from a full-rank factorization `A_s = F G`; the dual parts
/// solve `A_d = F G_d + F_d G` by projection (`G_d = F^+ A_d`, then
/// `F_d = (A_d - F G_d) G^* (G G^*)^{-1}`). The unmatched remainder of
/// `A_d` is exactly the nonessential part, so the factorization succeeds
/// iff `A_n = 0` — the DMPGI existence gate.
///
/// # Errors
///
/// `NotDecomposable` (carrying the relative reconstruction residual,
/// which equals the relative nonessential norm) when `A_n != 0` at
/// tolerance; kernel errors are propagated.
pub fn dual_rank_decomposition(a: &DualMatrix, tol: f64) -> Result<RankDecomposition> {
    let (m, n) = a.shape();
    let (f, g) = a.standard().full_rank_factor(tol)?;
    let r = f.cols();

    let (left, right) = if r == 0 {
        (DualMatrix::zeros(m, 0), DualMatrix::zeros(0, n))
    } else {
        let g_dual = f.pinv(tol)?.mul(a.dual())?;
        let remainder = a.dual().sub(&f.mul(&g_dual)?)?;
        let gstar = g.conj_transpose();
        let f_dual = remainder.mul(&gstar)?.mul(&g.mul(&gstar)?.inv()?)?;
        (DualMatrix::new(f, f_dual), DualMatrix::new(g, g_dual))
    };

    let residual = rel_residual(&left.mul(&right)?, a);
    if residual > tol {
        return Err(Error::NotDecomposable {
            nonessential_norm: residual,
            tol,
        });
    }
    Ok(RankDecomposition { left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inverse::{dmpgi, ndmpi};
    use crate::matrix::test_support::{random_complex, rng_for};
    use crate::matrix::{random_dual, random_dual_decomposable};

    const TOL: f64 = 1e-9;

    /// Lexicographic `lhs >= rhs` with a float slack on each component.
    fn lex_ge(lhs: DualReal, rhs: DualReal, slack: f64) -> bool {
        if lhs.standard > rhs.standard + slack {
            return true;
        }
        if lhs.standard < rhs.standard - slack {
            return false;
        }
        lhs.dual >= rhs.dual - slack
    }

    #[test]
    fn vector_norm_cases() {
        let u = DualMatrix::from_real_parts(&[&[3.0], &[4.0]], &[&[1.0], &[0.0]]).unwrap();
        assert_eq!(dual_vector_norm(&u).unwrap(), DualReal::new(5.0, 0.6));
        let inf = DualMatrix::from_real_parts(&[&[0.0], &[0.0]], &[&[0.0], &[2.0]]).unwrap();
        assert_eq!(dual_vector_norm(&inf).unwrap(), DualReal::new(0.0, 2.0));
        let not_a_vector = DualMatrix::zeros(2, 2);
        assert!(dual_vector_norm(&not_a_vector).is_err());
    }

    #[test]
    fn identity_and_diagonal_systems() {
        let mut rng = rng_for(70);
        let b = DualMatrix::new(random_complex(&mut rng, 3, 1), random_complex(&mut rng, 3, 1));
        let result = solve_min_norm(&DualMatrix::identity(3), &b, TOL).unwrap();
        assert!(rel_residual(&result.solution, &b) <= 1e-12);
        assert!(result.residual_norm.standard <= 1e-12);
        assert_eq!(result.rank_used, 3);

        // diag(1, eps) with b = (1, 0): solution (1, 0), zero residual.
        let a = DualMatrix::from_real_parts(
            &[&[1.0, 0.0], &[0.0, 0.0]],
            &[&[0.0, 0.0], &[0.0, 1.0]],
        )
        .unwrap();
        let b = DualMatrix::from_real_parts(&[&[1.0], &[0.0]], &[&[0.0], &[0.0]]).unwrap();
        let result = solve_min_norm(&a, &b, TOL).unwrap();
        assert_eq!(result.solution, b);
        assert_eq!(result.residual_norm, DualReal::zero());
        assert_eq!(result.rank_used, 1);
    }

    #[test]
    fn consistent_decomposable_systems_have_tiny_residual() {
        for seed in 0..10u64 {
            let a = random_dual_decomposable(5, 3, 2, 6000 + seed).unwrap();
            let mut rng = rng_for(6100 + seed);
            let y = DualMatrix::new(random_complex(&mut rng, 3, 1), random_complex(&mut rng, 3, 1));
            let b = a.mul(&y).unwrap();
            let result = solve_min_norm(&a, &b, TOL).unwrap();
            assert!(result.residual_norm.standard <= 1e-9, "seed {seed}");
            assert!(result.residual_norm.dual.abs() <= 1e-9, "seed {seed}");
            assert_eq!(result.rank_used, 2);
        }
    }

    #[test]
    fn least_squares_residual_matches_projection() {
        // Inconsistent system: the standard residual equals the distance
        // from b_s to the range of A_s.
        let a = random_dual_decomposable(5, 3, 2, 6200).unwrap();
        let mut rng = rng_for(6201);
        let b = DualMatrix::new(random_complex(&mut rng, 5, 1), random_complex(&mut rng, 5, 1));
        let result = solve_min_norm(&a, &b, TOL).unwrap();
        let p = a.standard().mul(&a.standard().pinv(TOL).unwrap()).unwrap();
        let perp = b
            .standard()
            .sub(&p.mul(b.standard()).unwrap())
            .unwrap()
            .fro_norm();
        assert!((result.residual_norm.standard - perp).abs() <= 1e-10);
        assert!(result.residual_norm.standard > 0.1, "system should be inconsistent");
    }

    #[test]
    fn minimality_over_kernel_perturbations_when_decomposable() {
        for seed in 0..10u64 {
            let a = random_dual_decomposable(4, 3, 2, 6300 + seed).unwrap();
            let mut rng = rng_for(6400 + seed);
            let b = DualMatrix::new(random_complex(&mut rng, 4, 1), random_complex(&mut rng, 4, 1));
            let result = solve_min_norm(&a, &b, TOL).unwrap();
            let n_inv = ndmpi(&a, TOL).unwrap();
            let projector = DualMatrix::identity(3).sub(&n_inv.mul(&a).unwrap()).unwrap();
            for trial in 0..5u64 {
                let mut wrng = rng_for(6500 + 10 * seed + trial);
                let w = DualMatrix::new(
                    random_complex(&mut wrng, 3, 1),
                    random_complex(&mut wrng, 3, 1),
                );
                let shifted = result.solution.add(&projector.mul(&w).unwrap()).unwrap();
                let shifted_residual =
                    dual_vector_norm(&a.mul(&shifted).unwrap().sub(&b).unwrap()).unwrap();
                assert!(
                    lex_ge(shifted_residual, result.residual_norm, 1e-10),
                    "residual decreased (seed {seed}, trial {trial})"
                );
                // Residual norms tie on this family, so the solution norm
                // must not beat the minimum-norm solution either.
                let shifted_norm = dual_vector_norm(&shifted).unwrap();
                let solution_norm = dual_vector_norm(&result.solution).unwrap();
                assert!(
                    lex_ge(shifted_norm, solution_norm, 1e-10),
                    "solution norm decreased (seed {seed}, trial {trial})"
                );
            }
        }
    }

    #[test]
    fn nonessential_systems_have_no_total_order_minimum() {
        // With A = [[0,0],[0,eps]] and b = e2, the NDMPI solution is x = 0
        // with residual norm 1 + 0 eps. Perturbing along the kernel of the
        // standard part lowers the infinitesimal residual component: the
        // essential least-squares property does not extend to a total-order
        // minimum when A_n != 0.
        let a = DualMatrix::from_real_parts(
            &[&[0.0, 0.0], &[0.0, 0.0]],
            &[&[0.0, 0.0], &[0.0, 1.0]],
        )
        .unwrap();
        let b = DualMatrix::from_real_parts(&[&[0.0], &[1.0]], &[&[0.0], &[0.0]]).unwrap();
        let result = solve_min_norm(&a, &b, TOL).unwrap();
        assert_eq!(result.solution, DualMatrix::zeros(2, 1));
        assert_eq!(result.residual_norm, DualReal::new(1.0, 0.0));

        let w = DualMatrix::from_real_parts(&[&[0.0], &[1.0]], &[&[0.0], &[0.0]]).unwrap();
        let shifted_residual =
            dual_vector_norm(&a.mul(&w).unwrap().sub(&b).unwrap()).unwrap();
        assert_eq!(shifted_residual, DualReal::new(1.0, -1.0));
        assert!(shifted_residual.total_cmp(&result.residual_norm).is_lt());
    }

    #[test]
    fn rank_decomposition_families() {
        // Invertible standard part: full-rank decomposition reconstructs.
        let a = random_dual(4, 4, 4, 6600).unwrap();
        let d = dual_rank_decomposition(&a, TOL).unwrap();
        assert_eq!(d.left.shape(), (4, 4));
        assert!(rel_residual(&d.left.mul(&d.right).unwrap(), &a) <= 1e-10);

        for seed in 0..10u64 {
            let a = random_dual_decomposable(5, 4, 2, 6700 + seed).unwrap();
            let d = dual_rank_decomposition(&a, TOL).unwrap();
            assert_eq!(d.left.shape(), (5, 2));
            assert_eq!(d.right.shape(), (2, 4));
            assert!(rel_residual(&d.left.mul(&d.right).unwrap(), &a) <= 1e-9);
            assert_eq!(d.left.standard().rank(TOL).unwrap(), 2);
            assert_eq!(d.right.standard().rank(TOL).unwrap(), 2);
        }
    }

    #[test]
    fn decomposability_matches_dmpgi_gate() {
        // Negative example from the DMPGI side: a purely nonessential
        // matrix is not decomposable.
        let a = DualMatrix::from_real_parts(
            &[&[0.0, 0.0], &[0.0, 0.0]],
            &[&[0.0, 0.0], &[0.0, 1.0]],
        )
        .unwrap();
        match dual_rank_decomposition(&a, TOL) {
            Err(Error::NotDecomposable {
                nonessential_norm, ..
            }) => assert!(nonessential_norm > 0.1),
            other => panic!("expected NotDecomposable, got {other:?}"),
        }

        for seed in 0..8u64 {
            let good = random_dual_decomposable(4, 3, 2, 6800 + seed).unwrap();
            assert!(dual_rank_decomposition(&good, TOL).is_ok());
            assert!(dmpgi(&good, TOL).is_ok());

            let bad = random_dual(4, 3, 2, 6900 + seed).unwrap();
            assert!(dual_rank_decomposition(&bad, TOL).is_err());
            assert!(dmpgi(&bad, TOL).is_err());
        }
    }

    #[test]
    fn zero_matrix_decomposes_trivially() {
        let a = DualMatrix::zeros(3, 2);
        let d = dual_rank_decomposition(&a, TOL).unwrap();
        assert_eq!(d.left.shape(), (3, 0));
        assert_eq!(d.right.shape(), (0, 2));
        assert!(rel_residual(&d.left.mul(&d.right).unwrap(), &a) == 0.0);
    }
}
