//! Generalized inverses of dual complex matrices.
//!
//! The central object is the nonessential dual Moore-Penrose inverse
//! (NDMPI): the unique `X` satisfying the four nonessential Penrose
//! equations
//!
//! 1. `A X A = A_e` (the essential part of `A`),
//! 2. `X A X = X`,
//! 3. `(A X)^* = A X`,
//! 4. `(X A)^* = X A`.
//!
//! Unlike the dual Moore-Penrose generalized inverse (DMPGI), which demands
//! `A X A = A` and exists only when the nonessential part vanishes, the
//! NDMPI exists for every dual matrix. This module also provides the
//! Moore-Penrose dual generalized inverse (MPDGI, a closed formula that may
//! violate some of the equations), the DMPGI with its existence test, the
//! weak dual Moore-Penrose inverse built from the Gram matrix, a residual
//! report for any candidate inverse, and the identity suites that the NDMPI
//! provably satisfies.

use crate::error::{Error, Result};
use crate::kernel::ComplexMatrix;
use crate::matrix::{DualMatrix, rel_residual};
use crate::svd::dual_svd;
use num_complex::Complex64;
use serde::Serialize;

/// Which generalized inverse a routine or report refers to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum InverseKind {
    /// Nonessential dual Moore-Penrose inverse.
    Ndmpi,
    /// Moore-Penrose dual generalized inverse (direct formula).
    Mpdgi,
    /// Dual Moore-Penrose generalized inverse (exists iff `A_n = 0`).
    Dmpgi,
    /// Weak dual Moore-Penrose inverse via the Gram matrix.
    WeaklyDualMp,
    /// A member of the solution set of the listed Penrose equations.
    InnerSet(Vec<u8>),
}

impl InverseKind {
    /// Builds the `{i,j,...}`-inverse tag, validating that the indices form
    /// a nonempty subset of `{1,2,3,4}`.
    ///
    /// # Errors
    ///
    /// `Error::Parse` when the index set is empty or out of range.
    pub fn inner_set(indices: &[u8]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::Parse("inner-inverse index set is empty".into()));
        }
        let mut sorted: Vec<u8> = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.iter().any(|&k| !(1..=4).contains(&k)) {
            return Err(Error::Parse(format!(
                "inner-inverse indices must lie in 1..=4, got {indices:?}"
            )));
        }
        Ok(InverseKind::InnerSet(sorted))
    }
}

impl std::fmt::Display for InverseKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InverseKind::Ndmpi => write!(f, "NDMPI"),
            InverseKind::Mpdgi => write!(f, "MPDGI"),
            InverseKind::Dmpgi => write!(f, "DMPGI"),
            InverseKind::WeaklyDualMp => write!(f, "weak dual MP inverse"),
            InverseKind::InnerSet(ix) => {
                let list: Vec<String> = ix.iter().map(u8::to_string).collect();
                write!(f, "{{{}}}-inverse", list.join(","))
            }
        }
    }
}

/// Residuals of the four nonessential Penrose equations for a candidate
/// inverse, plus the alternative first-equation characterization
/// `A^* A X A A^* = A^* A A^*` (equivalent to equation 1 whenever 3 and 4
/// hold). Equations outside the requested subset carry `None`.
#[derive(Debug, Clone, Serialize)]
pub struct PenroseReport {
    /// Residual of `A X A = A_e`.
    pub residual_eq1: Option<f64>,
    /// Residual of `X A X = X`.
    pub residual_eq2: Option<f64>,
    /// Residual of `(A X)^* = A X`.
    pub residual_eq3: Option<f64>,
    /// Residual of `(X A)^* = X A`.
    pub residual_eq4: Option<f64>,
    /// Residual of the alternative characterization; always evaluated.
    pub residual_alternative: f64,
    /// Tolerance the pass/fail verdicts refer to.
    pub tol: f64,
}

impl PenroseReport {
    fn selected(&self) -> impl Iterator<Item = f64> + '_ {
        [
            self.residual_eq1,
            self.residual_eq2,
            self.residual_eq3,
            self.residual_eq4,
        ]
        .into_iter()
        .flatten()
    }

    /// Residual of equation `k` (1-based); `None` when not selected.
    pub fn residual_eq(&self, k: usize) -> Option<f64> {
        match k {
            1 => self.residual_eq1,
            2 => self.residual_eq2,
            3 => self.residual_eq3,
            4 => self.residual_eq4,
            _ => None,
        }
    }

    /// Pass verdict for equation `k` (1-based); `None` when not selected.
    pub fn passes_eq(&self, k: usize) -> Option<bool> {
        self.residual_eq(k).map(|r| r <= self.tol)
    }

    /// True when every selected equation passes at the stored tolerance.
    pub fn all_pass(&self) -> bool {
        self.selected().all(|r| r <= self.tol)
    }

    /// Largest residual among the selected equations (0 when none selected).
    pub fn max_residual(&self) -> f64 {
        self.selected().fold(0.0, f64::max)
    }

    /// Pass verdict for the alternative characterization.
    pub fn alternative_passes(&self) -> bool {
        self.residual_alternative <= self.tol
    }
}

/// Evaluates the nonessential Penrose equations in `which` (a subset of
/// `{1,2,3,4}`) for the candidate inverse `x` of `a`, along with the
/// alternative characterization of equation 1.
///
/// # Errors
///
/// `ShapeMismatch` when `x` is not `n x m` for `a` of shape `m x n`;
/// `Error::Parse` for equation indices outside `1..=4`.
pub fn penrose_check(
    a: &DualMatrix,
    x: &DualMatrix,
    which: &[usize],
    tol: f64,
) -> Result<PenroseReport> {
    let (m, n) = a.shape();
    if x.shape() != (n, m) {
        return Err(Error::ShapeMismatch {
            left: format!("{m}x{n}"),
            right: format!("{}x{}", x.rows(), x.cols()),
            op: "penrose check (candidate must be the transposed shape)",
        });
    }
    if let Some(&k) = which.iter().find(|&&k| !(1..=4).contains(&k)) {
        return Err(Error::Parse(format!(
            "Penrose equation index {k} is outside 1..=4"
        )));
    }

    let ax = a.mul(x)?;
    let xa = x.mul(a)?;
    let axa = ax.mul(a)?;
    let essential = a.essential_split(tol)?.essential;
    let eq1 = rel_residual(&axa, &essential);
    let eq2 = rel_residual(&xa.mul(x)?, x);
    let eq3 = rel_residual(&ax.conj_transpose(), &ax);
    let eq4 = rel_residual(&xa.conj_transpose(), &xa);

    let astar = a.conj_transpose();
    let alternative = rel_residual(
        &astar.mul(&axa)?.mul(&astar)?,
        &astar.mul(a)?.mul(&astar)?,
    );

    Ok(PenroseReport {
        residual_eq1: which.contains(&1).then_some(eq1),
        residual_eq2: which.contains(&2).then_some(eq2),
        residual_eq3: which.contains(&3).then_some(eq3),
        residual_eq4: which.contains(&4).then_some(eq4),
        residual_alternative: alternative,
        tol,
    })
}

/// The nonessential dual Moore-Penrose inverse, computed through the dual
/// SVD: invert the appreciable singular values, drop the infinitesimal and
/// zero ones, and conjugate back with the dual-unitary factors.
///
/// Always exists; the standard part equals the classical Moore-Penrose
/// inverse of the standard part.
///
/// # Errors
///
/// Propagates kernel convergence failures only.
pub fn ndmpi(a: &DualMatrix, tol: f64) -> Result<DualMatrix> {
    ndmpi_with_rank(a, tol).map(|(x, _)| x)
}

/// [`ndmpi`] plus the rank of the standard part, for callers that need
/// both without a second factorization.
pub(crate) fn ndmpi_with_rank(a: &DualMatrix, tol: f64) -> Result<(DualMatrix, usize)> {
    let (m, n) = a.shape();
    let svd = dual_svd(a, tol)?;
    let mut inv_s = ComplexMatrix::zeros(n, m);
    let mut inv_d = ComplexMatrix::zeros(n, m);
    for (i, s) in svd.sigma.iter().take(svd.r).enumerate() {
        // Appreciable by construction, so the dual inverse exists:
        // 1/(s + d eps) = 1/s - d/s^2 eps.
        inv_s[(i, i)] = Complex64::new(1.0 / s.standard, 0.0);
        inv_d[(i, i)] = Complex64::new(-s.dual / (s.standard * s.standard), 0.0);
    }
    let x = svd
        .v
        .mul(&DualMatrix::new(inv_s, inv_d))?
        .mul(&svd.u.conj_transpose())?;
    Ok((x, svd.r))
}

/// SVD-free closed form of the NDMPI:
///
/// ```text
/// A_s^+  +  eps * ( -A_s^+ A_d A_s^+
///                   + (A_s^* A_s)^+ A_d^* (I - A_s A_s^+)
///                   + (I - A_s^+ A_s) A_d^* (A_s A_s^*)^+ )
/// ```
///
/// The result is validated against the four nonessential Penrose equations
/// before being returned, making this an independent cross-check of the SVD
/// path.
///
/// # Errors
///
/// `OracleMismatch` when the candidate fails its own Penrose validation
/// (which would indicate an implementation defect, not a property of the
/// input); kernel errors are propagated.
pub fn ndmpi_closed_form(a: &DualMatrix, tol: f64) -> Result<DualMatrix> {
    let (m, n) = a.shape();
    let p = a.standard().pinv(tol)?;
    let ad = a.dual();
    let pa = p.mul(a.standard())?; // A_s^+ A_s  (n x n)
    let ap = a.standard().mul(&p)?; // A_s A_s^+  (m x m)
    let ad_star = ad.conj_transpose();

    // (A_s^* A_s)^+ = P P^* and (A_s A_s^*)^+ = P^* P hold exactly for the
    // Moore-Penrose inverse, so no second factorization is needed.
    let gram_left_inv = p.mul(&p.conj_transpose())?; // n x n
    let gram_right_inv = p.conj_transpose().mul(&p)?; // m x m

    let term1 = p.mul(ad)?.mul(&p)?.neg();
    let term2 = gram_left_inv
        .mul(&ad_star)?
        .mul(&ComplexMatrix::identity(m).sub(&ap)?)?;
    let term3 = ComplexMatrix::identity(n)
        .sub(&pa)?
        .mul(&ad_star)?
        .mul(&gram_right_inv)?;

    let candidate = DualMatrix::new(p, term1.add(&term2)?.add(&term3)?);
    let report = penrose_check(a, &candidate, &[1, 2, 3, 4], tol)?;
    if !report.all_pass() {
        return Err(Error::OracleMismatch {
            context: "closed-form NDMPI candidate vs the four Penrose equations",
            residual: report.max_residual(),
            tol,
        });
    }
    Ok(candidate)
}

/// The Moore-Penrose dual generalized inverse
/// `A^P = A_s^+ - A_s^+ A_d A_s^+ eps`.
///
/// Always defined, but it may fail some of the Penrose equations; it agrees
/// with the NDMPI exactly when the extra correction terms of the closed form
/// vanish (for instance when `A_s` is invertible).
///
/// # Errors
///
/// Propagates kernel convergence failures only.
pub fn mpdgi(a: &DualMatrix, tol: f64) -> Result<DualMatrix> {
    let p = a.standard().pinv(tol)?;
    let correction = p.mul(a.dual())?.mul(&p)?.neg();
    Ok(DualMatrix::new(p, correction))
}

/// The dual Moore-Penrose generalized inverse: the unique solution of the
/// classical Penrose equations (`A X A = A`, not `A_e`). It exists iff the
/// nonessential part of `A` vanishes, and then coincides with the NDMPI.
///
/// # Errors
///
/// `DmpgiDoesNotExist` (carrying the relative nonessential norm) when
/// `A_n != 0` at the given tolerance; kernel errors are propagated.
pub fn dmpgi(a: &DualMatrix, tol: f64) -> Result<DualMatrix> {
    let nonessential_norm = a.nonessential_norm(tol)?;
    if nonessential_norm > tol {
        return Err(Error::DmpgiDoesNotExist {
            nonessential_norm,
            tol,
        });
    }
    ndmpi(a, tol)
}

/// The weak dual Moore-Penrose inverse `(A^* A)^- A^*`, where the Gram
/// matrix `A^* A` is inverted with the DMPGI.
///
/// The Gram matrix of any dual matrix has vanishing nonessential part
/// (`(I - P) (A_s^* A_d + A_d^* A_s) (I - Q) = 0` because the outer
/// projectors annihilate `A_s` and `A_s^*`), so the inner DMPGI always
/// exists.
///
/// # Errors
///
/// `InternalExistenceFailure` if the inner DMPGI nevertheless reports
/// nonexistence (never observed; kept as a guard); kernel errors are
/// propagated.
pub fn wdmpgi(a: &DualMatrix, tol: f64) -> Result<DualMatrix> {
    let astar = a.conj_transpose();
    let gram = astar.mul(a)?;
    let gram_inv = dmpgi(&gram, tol).map_err(|e| match e {
        Error::DmpgiDoesNotExist {
            nonessential_norm, ..
        } => Error::InternalExistenceFailure {
            detail: format!(
                "DMPGI of A*A reported nonexistence (relative nonessential norm \
                 {nonessential_norm:.3e}) although the Gram matrix of a dual matrix \
                 always has vanishing nonessential part"
            ),
        },
        other => other,
    })?;
    gram_inv.mul(&astar)
}

/// Residuals of the six NDMPI identities:
///
/// * `A^N = (A^* A)^N A^*` and `A^N = A^* (A A^*)^N`,
/// * `A_e^* = A^* A A^N` and `A_e^* = A^N A A^*`,
/// * `A_e = (A^*)^N A^* A` and `A_e = A A^* (A^*)^N`.
///
/// All six vanish (to rounding) for every dual matrix.
///
/// # Errors
///
/// Propagates kernel convergence failures only.
pub fn identity_suite(a: &DualMatrix, tol: f64) -> Result<Vec<(&'static str, f64)>> {
    let n_inv = ndmpi(a, tol)?;
    let astar = a.conj_transpose();
    let astar_n = ndmpi(&astar, tol)?;
    let gram_left = astar.mul(a)?; // A^* A
    let gram_right = a.mul(&astar)?; // A A^*
    let gram_left_n = ndmpi(&gram_left, tol)?;
    let gram_right_n = ndmpi(&gram_right, tol)?;
    let essential = a.essential_split(tol)?.essential;
    let essential_star = essential.conj_transpose();

    Ok(vec![
        (
            "ndmpi_via_left_gram",
            rel_residual(&gram_left_n.mul(&astar)?, &n_inv),
        ),
        (
            "ndmpi_via_right_gram",
            rel_residual(&astar.mul(&gram_right_n)?, &n_inv),
        ),
        (
            "essential_star_via_left_gram",
            rel_residual(&gram_left.mul(&n_inv)?, &essential_star),
        ),
        (
            "essential_star_via_right_gram",
            rel_residual(&n_inv.mul(&gram_right)?, &essential_star),
        ),
        (
            "essential_via_left_gram",
            rel_residual(&astar_n.mul(&gram_left)?, &essential),
        ),
        (
            "essential_via_right_gram",
            rel_residual(&gram_right.mul(&astar_n)?, &essential),
        ),
    ])
}

/// Residuals of the five absorption identities relating a dual matrix, its
/// essential part, and its NDMPI; the last item needs an invertible square
/// factor `b`:
///
/// 1. `A^* A = A_e^* A = A^* A_e`,
/// 2. `A A^* = A_e A^* = A A_e^*`,
/// 3. `A^N A = A^N A_e`,
/// 4. `A_e A^N = A A^N`,
/// 5. `A^* A B = A^* (A B)_e` and `A_e B = A A^N (A B)_e`.
///
/// Chained equalities report the larger of their residuals.
///
/// # Errors
///
/// `NotInvertible` when `b`'s standard part is singular; `ShapeMismatch`
/// when `b` is not square of the matching size; kernel errors are
/// propagated.
pub fn lemma_identities(
    a: &DualMatrix,
    b: &DualMatrix,
    tol: f64,
) -> Result<Vec<(&'static str, f64)>> {
    let (_, n) = a.shape();
    if b.shape() != (n, n) {
        return Err(Error::ShapeMismatch {
            left: format!("{}x{}", a.rows(), a.cols()),
            right: format!("{}x{}", b.rows(), b.cols()),
            op: "absorption identities (factor must be square of matching size)",
        });
    }
    // Invertibility gate; the inverse itself is not needed.
    b.standard().inv()?;

    let astar = a.conj_transpose();
    let split = a.essential_split(tol)?;
    let essential = &split.essential;
    let essential_star = essential.conj_transpose();
    let n_inv = ndmpi(a, tol)?;

    let gram_left = astar.mul(a)?;
    let gram_right = a.mul(&astar)?;
    let item1 = rel_residual(&essential_star.mul(a)?, &gram_left)
        .max(rel_residual(&astar.mul(essential)?, &gram_left));
    let item2 = rel_residual(&essential.mul(&astar)?, &gram_right)
        .max(rel_residual(&a.mul(&essential_star)?, &gram_right));
    let item3 = rel_residual(&n_inv.mul(essential)?, &n_inv.mul(a)?);
    let item4 = rel_residual(&essential.mul(&n_inv)?, &a.mul(&n_inv)?);

    let ab_essential = a.mul(b)?.essential_split(tol)?.essential;
    let item5 = rel_residual(&gram_left.mul(b)?, &astar.mul(&ab_essential)?).max(rel_residual(
        &essential.mul(b)?,
        &a.mul(&n_inv)?.mul(&ab_essential)?,
    ));

    Ok(vec![
        ("gram_left_absorbs_essential", item1),
        ("gram_right_absorbs_essential", item2),
        ("ndmpi_product_absorbs_essential", item3),
        ("essential_absorbs_into_projector", item4),
        ("invertible_factor_absorption", item5),
    ])
}
