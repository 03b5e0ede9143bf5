//! Reverse- and forward-order laws for the NDMPI.
//!
//! The reverse-order law `(A B)^N = B^N A^N` and the forward-order law
//! `(A B)^N = A^N B^N` fail in general; each checker in this module
//! evaluates one published set of sufficient conditions together with the
//! law it implies and reports every residual. The key invariant is
//! `implication_respected`: whenever all premises hold at tolerance, the
//! conclusion must hold too. A violation on any input indicates a defect in
//! the inverse computation or the checker, never an allowed outcome.
//!
//! The converses are genuinely false: several checkers come with pinned
//! witness pairs whose conclusion holds while a premise fails.

use crate::error::{Error, Result};
use crate::inverse::{ndmpi, penrose_check};
use crate::matrix::{DualMatrix, rel_residual};
use serde::Serialize;

/// Premise/conclusion evaluation of one order-law theorem.
#[derive(Debug, Clone, Serialize)]
pub struct LawReport {
    /// Which law was checked (e.g. `"rol-plain"`).
    pub law_id: &'static str,
    /// Relative residuals of the premises, in theorem order.
    pub premise_residuals: Vec<f64>,
    /// `premise_residuals[k] <= tol`, entry by entry.
    pub premises_hold: Vec<bool>,
    /// Relative residual of the concluded law.
    pub conclusion_residual: f64,
    /// `conclusion_residual <= tol`.
    pub conclusion_holds: bool,
    /// `!premises_hold.all() || conclusion_holds`: false means the theorem
    /// itself was violated numerically.
    pub implication_respected: bool,
    /// Tolerance the verdicts refer to.
    pub tol: f64,
}

impl LawReport {
    fn new(
        law_id: &'static str,
        premise_residuals: Vec<f64>,
        conclusion_residual: f64,
        tol: f64,
    ) -> Self {
        let premises_hold: Vec<bool> = premise_residuals.iter().map(|&r| r <= tol).collect();
        let conclusion_holds = conclusion_residual <= tol;
        let implication_respected = !premises_hold.iter().all(|&p| p) || conclusion_holds;
        LawReport {
            law_id,
            premise_residuals,
            premises_hold,
            conclusion_residual,
            conclusion_holds,
            implication_respected,
            tol,
        }
    }

    /// True when every premise holds (the implication is non-vacuous).
    pub fn premises_all_hold(&self) -> bool {
        self.premises_hold.iter().all(|&p| p)
    }
}

fn ensure_product_shape(a: &DualMatrix, b: &DualMatrix, op: &'static str) -> Result<()> {
    if a.cols() != b.rows() {
        return Err(Error::ShapeMismatch {
            left: format!("{}x{}", a.rows(), a.cols()),
            right: format!("{}x{}", b.rows(), b.cols()),
            op,
        });
    }
    Ok(())
}

fn hermitian_residual(m: &DualMatrix) -> f64 {
    rel_residual(&m.conj_transpose(), m)
}

/// Essential-form reverse-order-law criterion. Premises:
///
/// 1. `A^N A B B^* A^* = B B^* A_e^*`,
/// 2. `B B^N A^* A B = A^* A B_e`;
///
/// conclusion `(A B)^N = B^N A^N`.
///
/// # Errors
///
/// `ShapeMismatch` when the product `A B` is not defined; kernel errors are
/// propagated.
pub fn check_rol_essential(a: &DualMatrix, b: &DualMatrix, tol: f64) -> Result<LawReport> {
    ensure_product_shape(a, b, "reverse-order law (essential form)")?;
    let a_n = ndmpi(a, tol)?;
    let b_n = ndmpi(b, tol)?;
    let astar = a.conj_transpose();
    let bstar = b.conj_transpose();
    let a_essential = a.essential_split(tol)?.essential;
    let b_essential = b.essential_split(tol)?.essential;

    let p1 = rel_residual(
        &a_n.mul(a)?.mul(b)?.mul(&bstar)?.mul(&astar)?,
        &b.mul(&bstar)?.mul(&a_essential.conj_transpose())?,
    );
    let p2 = rel_residual(
        &b.mul(&b_n)?.mul(&astar)?.mul(a)?.mul(b)?,
        &astar.mul(a)?.mul(&b_essential)?,
    );

    let product_n = ndmpi(&a.mul(b)?, tol)?;
    let conclusion = rel_residual(&product_n, &b_n.mul(&a_n)?);
    Ok(LawReport::new("rol-essential", vec![p1, p2], conclusion, tol))
}

/// Plain-form reverse-order-law criterion (essential parts removed from the
/// right-hand sides). Premises:
///
/// 1. `A^N A B B^* A^* = B B^* A^*`,
/// 2. `B B^N A^* A B = A^* A B`;
///
/// conclusion `(A B)^N = B^N A^N`.
///
/// # Errors
///
/// `ShapeMismatch` when the product is not defined; kernel errors are
/// propagated.
pub fn check_rol_plain(a: &DualMatrix, b: &DualMatrix, tol: f64) -> Result<LawReport> {
    ensure_product_shape(a, b, "reverse-order law (plain form)")?;
    let a_n = ndmpi(a, tol)?;
    let b_n = ndmpi(b, tol)?;
    let astar = a.conj_transpose();
    let bstar = b.conj_transpose();

    let p1 = rel_residual(
        &a_n.mul(a)?.mul(b)?.mul(&bstar)?.mul(&astar)?,
        &b.mul(&bstar)?.mul(&astar)?,
    );
    let p2 = rel_residual(
        &b.mul(&b_n)?.mul(&astar)?.mul(a)?.mul(b)?,
        &astar.mul(a)?.mul(b)?,
    );

    let product_n = ndmpi(&a.mul(b)?, tol)?;
    let conclusion = rel_residual(&product_n, &b_n.mul(&a_n)?);
    Ok(LawReport::new("rol-plain", vec![p1, p2], conclusion, tol))
}

/// Single-premise reverse-order-law criterion:
/// `A^N A B B^* A^* A B B^N = B B^* A^* A` implies `(A B)^N = B^N A^N`.
///
/// # Errors
///
/// `ShapeMismatch` when the product is not defined; kernel errors are
/// propagated.
pub fn check_rol_single(a: &DualMatrix, b: &DualMatrix, tol: f64) -> Result<LawReport> {
    ensure_product_shape(a, b, "reverse-order law (single condition)")?;
    let a_n = ndmpi(a, tol)?;
    let b_n = ndmpi(b, tol)?;
    let astar = a.conj_transpose();
    let bstar = b.conj_transpose();

    let lhs = a_n
        .mul(a)?
        .mul(b)?
        .mul(&bstar)?
        .mul(&astar)?
        .mul(a)?
        .mul(b)?
        .mul(&b_n)?;
    let rhs = b.mul(&bstar)?.mul(&astar)?.mul(a)?;
    let p1 = rel_residual(&lhs, &rhs);

    let product_n = ndmpi(&a.mul(b)?, tol)?;
    let conclusion = rel_residual(&product_n, &b_n.mul(&a_n)?);
    Ok(LawReport::new("rol-single", vec![p1], conclusion, tol))
}

/// Criterion tying the reverse-order law to the DMPGI of the product.
/// Premise 0 is the existence gate `(A B)_n = 0`; premises 1 and 2 are
///
/// 1. `A^N A B_e = B (A B)^N A B`,
/// 2. `B B^N A_e^* = A^* A B (A B)^N`;
///
/// the conclusion is the three-way equality
/// `dmpgi(A B) = (A B)^N = B^N A^N`. When the gate fails the DMPGI does not
/// exist: the reported conclusion residual then covers only
/// `(A B)^N = B^N A^N`, and the implication is vacuous.
///
/// # Errors
///
/// `ShapeMismatch` when the product is not defined; kernel errors are
/// propagated.
pub fn check_rol_dmpgi_link(a: &DualMatrix, b: &DualMatrix, tol: f64) -> Result<LawReport> {
    ensure_product_shape(a, b, "reverse-order law (DMPGI link)")?;
    let product = a.mul(b)?;
    let gate = product.nonessential_norm(tol)?;

    let a_n = ndmpi(a, tol)?;
    let b_n = ndmpi(b, tol)?;
    let product_n = ndmpi(&product, tol)?;
    let astar = a.conj_transpose();
    let a_essential = a.essential_split(tol)?.essential;
    let b_essential = b.essential_split(tol)?.essential;

    let p1 = rel_residual(
        &a_n.mul(a)?.mul(&b_essential)?,
        &b.mul(&product_n)?.mul(a)?.mul(b)?,
    );
    let p2 = rel_residual(
        &b.mul(&b_n)?.mul(&a_essential.conj_transpose())?,
        &astar.mul(a)?.mul(b)?.mul(&product_n)?,
    );

    let reverse = b_n.mul(&a_n)?;
    let conclusion = if gate <= tol {
        let product_dmpgi = crate::inverse::dmpgi(&product, tol)?;
        rel_residual(&product_dmpgi, &product_n).max(rel_residual(&product_n, &reverse))
    } else {
        rel_residual(&product_n, &reverse)
    };
    Ok(LawReport::new(
        "rol-dmpgi-link",
        vec![gate, p1, p2],
        conclusion,
        tol,
    ))
}

/// Commutation-style reverse-order-law criterion. Premises:
///
/// 1. `A^N A B B^N = B B^N A^N A`,
/// 2. `A B B^N A^N` is Hermitian,
/// 3. `B^N A^N A B` is Hermitian;
///
/// conclusion `(A B)^N = B^N A^N`.
///
/// # Errors
///
/// `ShapeMismatch` when the product is not defined; kernel errors are
/// propagated.
pub fn check_rol_commuting(a: &DualMatrix, b: &DualMatrix, tol: f64) -> Result<LawReport> {
    ensure_product_shape(a, b, "reverse-order law (commutation form)")?;
    let a_n = ndmpi(a, tol)?;
    let b_n = ndmpi(b, tol)?;
    let an_a = a_n.mul(a)?;
    let b_bn = b.mul(&b_n)?;

    let p1 = rel_residual(&an_a.mul(&b_bn)?, &b_bn.mul(&an_a)?);
    let p2 = hermitian_residual(&a.mul(&b_bn)?.mul(&a_n)?);
    let p3 = hermitian_residual(&b_n.mul(&a_n)?.mul(a)?.mul(b)?);

    let product_n = ndmpi(&a.mul(b)?, tol)?;
    let conclusion = rel_residual(&product_n, &b_n.mul(&a_n)?);
    Ok(LawReport::new(
        "rol-commuting",
        vec![p1, p2, p3],
        conclusion,
        tol,
    ))
}

/// Forward-order-law criterion for square matrices. Premises:
///
/// 1. `A^* A (A B)^N B B^* = A^* B^*`,
/// 2. `B B^N A B = A B`,
/// 3. `A^N A B^* A^* = B^* A^*`;
///
/// conclusion `(A B)^N = A^N B^N` (factors in the original order).
///
/// # Errors
///
/// `ShapeMismatch` unless both inputs are square of the same size; kernel
/// errors are propagated.
pub fn check_fol(a: &DualMatrix, b: &DualMatrix, tol: f64) -> Result<LawReport> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            left: format!("{}x{}", a.rows(), a.cols()),
            right: format!("{}x{}", b.rows(), b.cols()),
            op: "forward-order law (requires square matrices of equal size)",
        });
    }
    let a_n = ndmpi(a, tol)?;
    let b_n = ndmpi(b, tol)?;
    let astar = a.conj_transpose();
    let bstar = b.conj_transpose();
    let product = a.mul(b)?;
    let product_n = ndmpi(&product, tol)?;

    let p1 = rel_residual(
        &astar.mul(a)?.mul(&product_n)?.mul(b)?.mul(&bstar)?,
        &astar.mul(&bstar)?,
    );
    let p2 = rel_residual(&b.mul(&b_n)?.mul(a)?.mul(b)?, &product);
    let p3 = rel_residual(&a_n.mul(a)?.mul(&bstar)?.mul(&astar)?, &bstar.mul(&astar)?);

    let conclusion = rel_residual(&product_n, &a_n.mul(&b_n)?);
    Ok(LawReport::new("fol", vec![p1, p2, p3], conclusion, tol))
}

/// Invertible-factor criterion: for `A` invertible in the dual ring
/// (appreciable determinant), premises
///
/// 1. `B^N (A B) B^* = A B^*`,
/// 2. `B B^N A B = A B`,
/// 3. `A B (A B)^N B = B`
///
/// imply `(A B)^N = A^{-1} B^N`, with
/// `A^{-1} = A_s^{-1} - A_s^{-1} A_d A_s^{-1} eps`.
///
/// # Errors
///
/// `NotInvertible` when the standard part of `A` is singular;
/// `ShapeMismatch` unless both inputs are square of equal size; kernel
/// errors are propagated.
pub fn check_rol_invertible(a: &DualMatrix, b: &DualMatrix, tol: f64) -> Result<LawReport> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            left: format!("{}x{}", a.rows(), a.cols()),
            right: format!("{}x{}", b.rows(), b.cols()),
            op: "invertible-factor law (requires square matrices of equal size)",
        });
    }
    let inv_s = a.standard().inv()?;
    let a_inv = DualMatrix::new(
        inv_s.clone(),
        inv_s.mul(a.dual())?.mul(&inv_s)?.neg(),
    );

    let b_n = ndmpi(b, tol)?;
    let bstar = b.conj_transpose();
    let product = a.mul(b)?;
    let product_n = ndmpi(&product, tol)?;

    let p1 = rel_residual(&b_n.mul(&product)?.mul(&bstar)?, &a.mul(&bstar)?);
    let p2 = rel_residual(&b.mul(&b_n)?.mul(&product)?, &product);
    let p3 = rel_residual(&product.mul(&product_n)?.mul(b)?, b);

    let conclusion = rel_residual(&product_n, &a_inv.mul(&b_n)?);
    Ok(LawReport::new(
        "rol-invertible",
        vec![p1, p2, p3],
        conclusion,
        tol,
    ))
}

/// Consequences of the essential-form premises: when both premises of
/// [`check_rol_essential`] hold, the four commutation identities
///
/// 1. `A^N A B B^* = B B^* A^N A`,
/// 2. `A_e B B^* A^* = A B B^* A_e^*`,
/// 3. `B B^N A^* A = A^* A B B^N`,
/// 4. `B_e^* A^* A B = B^* A^* A B_e`
///
/// follow. The report's conclusion residual is the largest of the four.
///
/// # Errors
///
/// `ShapeMismatch` when the product is not defined; kernel errors are
/// propagated.
pub fn check_commutation_consequences(
    a: &DualMatrix,
    b: &DualMatrix,
    tol: f64,
) -> Result<LawReport> {
    ensure_product_shape(a, b, "commutation consequences")?;
    let a_n = ndmpi(a, tol)?;
    let b_n = ndmpi(b, tol)?;
    let astar = a.conj_transpose();
    let bstar = b.conj_transpose();
    let a_essential = a.essential_split(tol)?.essential;
    let b_essential = b.essential_split(tol)?.essential;

    let p1 = rel_residual(
        &a_n.mul(a)?.mul(b)?.mul(&bstar)?.mul(&astar)?,
        &b.mul(&bstar)?.mul(&a_essential.conj_transpose())?,
    );
    let p2 = rel_residual(
        &b.mul(&b_n)?.mul(&astar)?.mul(a)?.mul(b)?,
        &astar.mul(a)?.mul(&b_essential)?,
    );

    let an_a = a_n.mul(a)?;
    let b_bstar = b.mul(&bstar)?;
    let c1 = rel_residual(&an_a.mul(&b_bstar)?, &b_bstar.mul(&an_a)?);
    let c2 = rel_residual(
        &a_essential.mul(&b_bstar)?.mul(&astar)?,
        &a.mul(&b_bstar)?.mul(&a_essential.conj_transpose())?,
    );
    let b_bn = b.mul(&b_n)?;
    let astar_a = astar.mul(a)?;
    let c3 = rel_residual(&b_bn.mul(&astar_a)?, &astar_a.mul(&b_bn)?);
    let c4 = rel_residual(
        &b_essential.conj_transpose().mul(&astar_a)?.mul(b)?,
        &bstar.mul(&astar_a)?.mul(&b_essential)?,
    );

    let conclusion = c1.max(c2).max(c3).max(c4);
    Ok(LawReport::new("consequences", vec![p1, p2], conclusion, tol))
}

/// Witness-based characterization of the reverse-order law:
/// `(A B)^N = B^N A^N` holds iff some `{1,2,3}`-inverse `X` of `B`
/// satisfies `(A B)^N = B^N B X A^N`. The forward direction is evaluated
/// with the proof's witness `X = B^N`, for which the witness equation and
/// the law are equivalent; the report exposes the witness residual as the
/// single premise.
///
/// # Errors
///
/// `ShapeMismatch` when the product is not defined; kernel errors are
/// propagated.
pub fn check_rol_via_123(a: &DualMatrix, b: &DualMatrix, tol: f64) -> Result<LawReport> {
    ensure_product_shape(a, b, "reverse-order law (witness characterization)")?;
    let a_n = ndmpi(a, tol)?;
    let b_n = ndmpi(b, tol)?;
    let product_n = ndmpi(&a.mul(b)?, tol)?;

    let witness = b_n.mul(b)?.mul(&b_n)?.mul(&a_n)?;
    let premise = rel_residual(&product_n, &witness);
    let conclusion = rel_residual(&product_n, &b_n.mul(&a_n)?);
    Ok(LawReport::new("rol-via-123", vec![premise], conclusion, tol))
}

/// Projector consequence of inner-inverse membership.
#[derive(Debug, Clone, Serialize)]
pub struct InnerInverseReport {
    /// `x` passes the nonessential Penrose equations 1, 2 and 3.
    pub in_123: bool,
    /// `x` passes the nonessential Penrose equations 1, 2 and 4.
    pub in_124: bool,
    /// Residual of `A X = A A^N` (present when `in_123`).
    pub left_projector_residual: Option<f64>,
    /// Residual of `X A = A^N A` (present when `in_124`).
    pub right_projector_residual: Option<f64>,
    /// Tolerance the verdicts refer to.
    pub tol: f64,
}

/// For a `{1,2,3}`-inverse `x` of `a`, verifies `A X = A A^N`; dually, for
/// a `{1,2,4}`-inverse, verifies `X A = A^N A`. Membership is established
/// by the Penrose oracle, not assumed.
///
/// # Errors
///
/// `NotAMember` when `x` belongs to neither class; `ShapeMismatch` for
/// incompatible shapes; kernel errors are propagated.
pub fn inner_inverse_lemma(a: &DualMatrix, x: &DualMatrix, tol: f64) -> Result<InnerInverseReport> {
    let r123 = penrose_check(a, x, &[1, 2, 3], tol)?;
    let r124 = penrose_check(a, x, &[1, 2, 4], tol)?;
    let in_123 = r123.all_pass();
    let in_124 = r124.all_pass();
    if !in_123 && !in_124 {
        return Err(Error::NotAMember {
            class: "{1,2,3} or {1,2,4}",
            residual: r123.max_residual().min(r124.max_residual()),
        });
    }
    let a_n = ndmpi(a, tol)?;
    let left_projector_residual = if in_123 {
        Some(rel_residual(&a.mul(x)?, &a.mul(&a_n)?))
    } else {
        None
    };
    let right_projector_residual = if in_124 {
        Some(rel_residual(&x.mul(a)?, &a_n.mul(a)?))
    } else {
        None
    };
    Ok(InnerInverseReport {
        in_123,
        in_124,
        left_projector_residual,
        right_projector_residual,
        tol,
    })
}
