//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in this crate.
///
/// Nonexistence of a generalized inverse and non-decomposability carry the
/// norm of the nonessential part as a diagnostic, since that norm is exactly
/// the obstruction in both cases.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An operation needed an appreciable dual number (nonzero standard part).
    #[error("dual number with standard part {std_part:e} is not appreciable (tolerance {tol:e})")]
    NotAppreciable { std_part: f64, tol: f64 },

    /// Square root of a dual number that is negative in the total order.
    #[error("dual square root of a negative value (standard part {std_part:e})")]
    Negative { std_part: f64 },

    /// Operands or arguments have incompatible shapes.
    #[error("shape mismatch: {left} vs {right} in {op}")]
    ShapeMismatch {
        left: String,
        right: String,
        op: &'static str,
    },

    /// A requested rank is outside `0..=min(m, n)`.
    #[error("requested rank {rank} exceeds min({rows}, {cols})")]
    InvalidRank {
        rank: usize,
        rows: usize,
        cols: usize,
    },

    /// An iterative kernel exceeded its sweep budget.
    #[error("{algorithm} did not converge within {sweeps} sweeps")]
    NoConvergence {
        algorithm: &'static str,
        sweeps: usize,
    },

    /// The Hermitian eigensolver was fed a matrix that is not Hermitian.
    #[error("matrix is not Hermitian (asymmetry {asymmetry:e} exceeds tolerance {tol:e})")]
    NotHermitian { asymmetry: f64, tol: f64 },

    /// A matrix that had to be invertible is numerically singular.
    #[error("matrix is singular or not square: {detail}")]
    NotInvertible { detail: String },

    /// The dual Moore-Penrose generalized inverse does not exist.
    #[error(
        "dual Moore-Penrose generalized inverse does not exist: \
         nonessential norm {nonessential_norm:e} exceeds tolerance {tol:e}"
    )]
    DmpgiDoesNotExist { nonessential_norm: f64, tol: f64 },

    /// A structurally guaranteed internal inverse failed its existence gate.
    #[error("internal existence failure: {detail}")]
    InternalExistenceFailure { detail: String },

    /// The matrix does not admit a dual r-rank decomposition.
    #[error(
        "no dual rank decomposition: nonessential norm {nonessential_norm:e} \
         exceeds tolerance {tol:e}"
    )]
    NotDecomposable { nonessential_norm: f64, tol: f64 },

    /// A cross-validation between two computation paths disagreed.
    #[error("oracle mismatch in {context}: residual {residual:e} exceeds tolerance {tol:e}")]
    OracleMismatch {
        context: &'static str,
        residual: f64,
        tol: f64,
    },

    /// An exact-arithmetic candidate failed its defining equations.
    #[error("exact candidate rejected: {detail}")]
    CandidateRejected { detail: String },

    /// A candidate matrix is not a member of the required inverse class.
    #[error("candidate is not a member of {class}: worst residual {residual:e}")]
    NotAMember { class: &'static str, residual: f64 },

    /// Input text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// Parsed input has inconsistent dimensions.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A floating-point value could not be converted to exact arithmetic.
    #[error("value {value} at {location} is not representable as an exact rational")]
    NotRepresentable { value: f64, location: String },
}
