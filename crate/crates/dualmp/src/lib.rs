//! Linear algebra over dual complex matrices.
//!
//! A dual complex matrix is `A = A_s + A_d * eps` with `eps^2 = 0`. Because
//! `eps` is nilpotent, singular parts of `A_s` can absorb pieces of `A_d`
//! that no inverse can see; this crate centers on the *nonessential* dual
//! Moore-Penrose inverse (NDMPI), which exists for every dual matrix and
//! reduces to the classical Moore-Penrose inverse on ordinary matrices.
//!
//! The crate provides:
//!
//! - dual scalar and matrix arithmetic ([`scalar`], [`matrix`]),
//! - a self-contained complex SVD / Hermitian eigensolver kernel ([`kernel`]),
//! - the dual SVD with appreciable and infinitesimal singular values ([`svd`]),
//! - the NDMPI and related generalized inverses with Penrose-style
//!   verification ([`inverse`]),
//! - checkers for sufficient conditions under which reverse- and
//!   forward-order laws hold for the NDMPI ([`laws`]),
//! - a minimum-norm least-squares solver and dual rank decomposition
//!   ([`solve`]),
//! - an exact Gaussian-rational oracle for small matrices ([`exact`]),
//! - JSON (de)serialization and the `dualmp` command-line tool ([`io`]),
//! - the full acceptance battery as a library module ([`suite`]).

pub mod error;
pub mod exact;
pub mod inverse;
pub mod io;
pub mod kernel;
pub mod laws;
pub mod matrix;
pub mod scalar;
pub mod solve;
pub mod suite;
pub mod svd;

pub use error::{Error, Result};
pub use exact::{RationalDualMatrix, RationalMatrix, exact_ndmpi, exact_pinv};
pub use inverse::{
    PenroseReport, dmpgi, identity_suite, lemma_identities, mpdgi, ndmpi, ndmpi_closed_form,
    penrose_check, wdmpgi,
};
pub use io::{DualMatrixFile, emit, parse_path, parse_str};
pub use kernel::ComplexMatrix;
pub use laws::{
    InnerInverseReport, LawReport, check_commutation_consequences, check_fol,
    check_rol_commuting, check_rol_dmpgi_link, check_rol_essential, check_rol_invertible,
    check_rol_plain, check_rol_single, check_rol_via_123, inner_inverse_lemma,
};
pub use matrix::{
    DualMatrix, EssentialSplit, random_columns_orthonormal, random_dual, random_dual_decomposable,
    random_dual_unitary, rel_residual,
};
pub use scalar::{DualComplex, DualReal, SignClass};
pub use solve::{
    DualSolveResult, RankDecomposition, dual_rank_decomposition, dual_vector_norm, solve_min_norm,
};
pub use suite::{CriterionResult, SuiteReport, run_acceptance_suite};
pub use svd::{DualSvd, dual_svd, singular_values};

/// Default residual/classification tolerance used by the command-line tool
/// and the acceptance batteries.
pub const DEFAULT_TOL: f64 = 1e-9;

// Compile and run every Rust snippet in the book as a doctest, so the guide
// can never drift out of sync with the API.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(dual_numbers, "../../../book/src/dual-numbers.md");
    chapter!(dual_matrices, "../../../book/src/dual-matrices.md");
    chapter!(dual_svd, "../../../book/src/dual-svd.md");
    chapter!(generalized_inverses, "../../../book/src/generalized-inverses.md");
    chapter!(order_laws, "../../../book/src/order-laws.md");
    chapter!(solving, "../../../book/src/solving.md");
    chapter!(exact_arithmetic, "../../../book/src/exact-arithmetic.md");
}
