//! Property-based tests: exact algebraic identities on small integer-valued
//! dual matrices, bitwise JSON round-trips, order axioms for dual reals, and
//! agreement between the floating-point inverse and the rational oracle.

use dualmp::{
    ComplexMatrix, DualMatrix, DualReal, RationalDualMatrix, emit, exact_ndmpi, ndmpi, parse_str,
    rel_residual,
};
use num_complex::Complex64;
use proptest::prelude::*;
use std::cmp::Ordering;

const MAX_DIM: usize = 3;

/// Gaussian-integer entries small enough that sums of products through three
/// matrix factors stay far below 2^53, so every arithmetic identity below is
/// exact in `f64`.
fn small_entry() -> impl Strategy<Value = Complex64> {
    (-4i32..=4, -4i32..=4).prop_map(|(re, im)| Complex64::new(f64::from(re), f64::from(im)))
}

fn integer_dual_matrix(rows: usize, cols: usize) -> impl Strategy<Value = DualMatrix> {
    let n = rows * cols;
    (
        prop::collection::vec(small_entry(), n),
        prop::collection::vec(small_entry(), n),
    )
        .prop_map(move |(s, d)| {
            DualMatrix::new(
                ComplexMatrix::from_fn(rows, cols, |i, j| s[i * cols + j]),
                ComplexMatrix::from_fn(rows, cols, |i, j| d[i * cols + j]),
            )
        })
}

fn chained_triple() -> impl Strategy<Value = (DualMatrix, DualMatrix, DualMatrix)> {
    (1..=MAX_DIM, 1..=MAX_DIM, 1..=MAX_DIM, 1..=MAX_DIM).prop_flat_map(|(m, k, l, n)| {
        (
            integer_dual_matrix(m, k),
            integer_dual_matrix(k, l),
            integer_dual_matrix(l, n),
        )
    })
}

fn same_shape_triple() -> impl Strategy<Value = (DualMatrix, DualMatrix, DualMatrix)> {
    (1..=MAX_DIM, 1..=MAX_DIM).prop_flat_map(|(m, n)| {
        (
            integer_dual_matrix(m, n),
            integer_dual_matrix(m, n),
            integer_dual_matrix(m, n),
        )
    })
}

/// Entry-by-entry equality of both components, `0.0 == -0.0` allowed.
fn exactly_equal(a: &DualMatrix, b: &DualMatrix) -> bool {
    if a.shape() != b.shape() {
        return false;
    }
    let (rows, cols) = a.shape();
    (0..rows).all(|i| {
        (0..cols).all(|j| {
            a.standard()[(i, j)] == b.standard()[(i, j)] && a.dual()[(i, j)] == b.dual()[(i, j)]
        })
    })
}

fn finite_f64() -> impl Strategy<Value = f64> {
    use prop::num::f64::{NEGATIVE, NORMAL, POSITIVE, SUBNORMAL, ZERO};
    POSITIVE | NEGATIVE | NORMAL | SUBNORMAL | ZERO
}

fn dual_real() -> impl Strategy<Value = DualReal> {
    (finite_f64(), finite_f64()).prop_map(|(s, d)| DualReal::new(s, d))
}

proptest! {
    #[test]
    fn multiplication_is_associative_exactly((a, b, c) in chained_triple()) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(exactly_equal(&left, &right));
    }

    #[test]
    fn multiplication_distributes_exactly(
        (a, b, c) in (1..=MAX_DIM, 1..=MAX_DIM, 1..=MAX_DIM).prop_flat_map(|(m, k, n)| {
            (
                integer_dual_matrix(m, k),
                integer_dual_matrix(k, n),
                integer_dual_matrix(k, n),
            )
        })
    ) {
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(exactly_equal(&left, &right));
    }

    #[test]
    fn addition_is_associative_and_commutative_exactly((a, b, c) in same_shape_triple()) {
        let left = a.add(&b).unwrap().add(&c).unwrap();
        let right = a.add(&b.add(&c).unwrap()).unwrap();
        prop_assert!(exactly_equal(&left, &right));
        prop_assert!(exactly_equal(&a.add(&b).unwrap(), &b.add(&a).unwrap()));
    }

    #[test]
    fn conjugate_transpose_is_an_involution_and_antihomomorphism(
        (a, b, _) in chained_triple()
    ) {
        prop_assert!(exactly_equal(&a.conj_transpose().conj_transpose(), &a));
        let product_star = a.mul(&b).unwrap().conj_transpose();
        let star_product = b.conj_transpose().mul(&a.conj_transpose()).unwrap();
        prop_assert!(exactly_equal(&product_star, &star_product));
    }

    #[test]
    fn epsilon_squared_annihilates((a, b, _) in chained_triple()) {
        // Multiplying two purely infinitesimal matrices gives exactly zero.
        let a_inf = DualMatrix::new(ComplexMatrix::zeros(a.rows(), a.cols()), a.dual().clone());
        let b_inf = DualMatrix::new(ComplexMatrix::zeros(b.rows(), b.cols()), b.dual().clone());
        let product = a_inf.mul(&b_inf).unwrap();
        prop_assert!(exactly_equal(
            &product,
            &DualMatrix::zeros(a.rows(), b.cols())
        ));
    }

    #[test]
    fn json_round_trip_is_bitwise(
        (rows, cols) in (1..=4usize, 1..=4usize),
        entries in prop::collection::vec((finite_f64(), finite_f64(), finite_f64(), finite_f64()), 16)
    ) {
        let matrix = DualMatrix::new(
            ComplexMatrix::from_fn(rows, cols, |i, j| {
                let (re, im, _, _) = entries[i * 4 + j];
                Complex64::new(re, im)
            }),
            ComplexMatrix::from_fn(rows, cols, |i, j| {
                let (_, _, re, im) = entries[i * 4 + j];
                Complex64::new(re, im)
            }),
        );
        let text = emit(&matrix).unwrap();
        let back = parse_str(&text).unwrap();
        prop_assert_eq!(back.shape(), matrix.shape());
        for i in 0..rows {
            for j in 0..cols {
                for (orig, round) in [
                    (matrix.standard()[(i, j)], back.standard()[(i, j)]),
                    (matrix.dual()[(i, j)], back.dual()[(i, j)]),
                ] {
                    prop_assert_eq!(orig.re.to_bits(), round.re.to_bits());
                    prop_assert_eq!(orig.im.to_bits(), round.im.to_bits());
                }
            }
        }
    }

    #[test]
    fn dual_real_order_is_total(a in dual_real(), b in dual_real(), c in dual_real()) {
        prop_assert_eq!(a.total_cmp(&a), Ordering::Equal);
        prop_assert_eq!(a.total_cmp(&b), b.total_cmp(&a).reverse());

        // Transitivity: sorting three values yields a consistent chain.
        let mut sorted = [a, b, c];
        sorted.sort_by(DualReal::total_cmp);
        prop_assert_ne!(sorted[0].total_cmp(&sorted[1]), Ordering::Greater);
        prop_assert_ne!(sorted[1].total_cmp(&sorted[2]), Ordering::Greater);
        prop_assert_ne!(sorted[0].total_cmp(&sorted[2]), Ordering::Greater);
    }

    #[test]
    fn dual_real_order_is_lexicographic(
        s in finite_f64(), lo in finite_f64(), hi in finite_f64(), d in finite_f64()
    ) {
        // An appreciable gap in the standard part dominates any dual part.
        let (lo, hi) = if lo.total_cmp(&hi) == Ordering::Greater { (hi, lo) } else { (lo, hi) };
        prop_assume!(lo < hi);
        prop_assert_eq!(
            DualReal::new(lo, d).total_cmp(&DualReal::new(hi, -d)),
            Ordering::Less
        );
        // Equal standard parts defer to the dual part.
        prop_assert_eq!(
            DualReal::new(s, lo).total_cmp(&DualReal::new(s, hi)),
            Ordering::Less
        );
    }

    #[test]
    fn float_ndmpi_tracks_the_exact_oracle(
        (a, _, _) in chained_triple()
    ) {
        let float_inverse = ndmpi(&a, 1e-9).unwrap();
        let exact_inverse = exact_ndmpi(&RationalDualMatrix::from_float(&a).unwrap()).unwrap();
        let distance = rel_residual(&float_inverse, &exact_inverse.to_float());
        prop_assert!(distance <= 1e-10, "float vs exact NDMPI distance {distance}");
    }
}
