//! Singular value decomposition of dual complex matrices.
//!
//! Every dual matrix factors as `A = U * S * V^*` with `U`, `V` dual-unitary
//! and `S` diagonal carrying dual real singular values: `r` appreciable ones
//! (positive standard part), then `t - r` positive infinitesimal ones, then
//! zeros. The infinitesimal singular values are invisible to the standard
//! part; they measure the nonessential content of the dual part.
//!
//! The construction perturbs the classical SVD of the standard part to first
//! order. Writing `B = U_s^* A_d V_s`, the dual components of the factors are
//! generated by skew-Hermitian `P`, `Q` solving `B = S_d + P S - S Q`
//! entrywise: 2x2 linear systems couple `B_ij` and `conj(B_ji)` across
//! distinct singular values, repeated values are re-rotated so the Hermitian
//! part of their block diagonalizes, and the corner block belonging to the
//! zero singular values gets its own classical SVD, whose values become the
//! infinitesimal spectrum.

use crate::error::Result;
use crate::kernel::{ComplexMatrix, default_rank_tol};
use crate::matrix::DualMatrix;
use crate::scalar::DualReal;
use num_complex::Complex64;

/// Standard-part singular values closer (relative to the largest one) than
/// this are treated as one repeated value; the 2x2 coupling systems across
/// such pairs are too ill-conditioned to solve directly.
pub const CLUSTER_RELATIVE_GAP: f64 = 1e-8;

/// Gaps between distinct clusters within this factor of the clustering
/// threshold raise the degenerate-gap warning.
const GAP_WARNING_FACTOR: f64 = 10.0;

/// Dual singular value decomposition `A = U * S * V^*`.
#[derive(Debug, Clone)]
pub struct DualSvd {
    /// Dual-unitary left factor (`m x m`).
    pub u: DualMatrix,
    /// Positive dual singular values: `r` appreciable followed by `t - r`
    /// infinitesimal ones. Exact zeros are not stored.
    pub sigma: Vec<DualReal>,
    /// Dual-unitary right factor (`n x n`).
    pub v: DualMatrix,
    /// Number of appreciable singular values = rank of the standard part.
    pub r: usize,
    /// Total number of positive singular values (appreciable plus
    /// infinitesimal).
    pub t: usize,
    /// True when two clusters of standard singular values were separated by
    /// a gap close to the clustering threshold; the dual parts of the factors
    /// are then ill-conditioned even though the product remains accurate.
    pub gap_warning: bool,
}

impl DualSvd {
    /// The middle factor as a dual `m x n` matrix with `sigma` on the
    /// diagonal.
    pub fn sigma_matrix(&self) -> DualMatrix {
        let (m, _) = self.u.shape();
        let (n, _) = self.v.shape();
        let mut standard = ComplexMatrix::zeros(m, n);
        let mut dual = ComplexMatrix::zeros(m, n);
        for (i, s) in self.sigma.iter().enumerate() {
            standard[(i, i)] = Complex64::new(s.standard, 0.0);
            dual[(i, i)] = Complex64::new(s.dual, 0.0);
        }
        DualMatrix::new(standard, dual)
    }

    /// Rebuilds `U * S * V^*`; used by residual checks.
    pub fn reconstruct(&self) -> DualMatrix {
        self.u
            .mul(&self.sigma_matrix())
            .and_then(|us| us.mul(&self.v.conj_transpose()))
            .expect("factor shapes are consistent")
    }
}

/// Groups indices `0..r` into clusters of (numerically) repeated standard
/// singular values, and reports whether any boundary gap falls close enough
/// to the threshold to warrant a warning.
fn cluster_indices(sigma: &[f64], r: usize, smax: f64) -> (Vec<Vec<usize>>, bool) {
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut warning = false;
    for i in 0..r {
        let gap = if i == 0 {
            f64::INFINITY
        } else {
            sigma[i - 1] - sigma[i]
        };
        if gap <= CLUSTER_RELATIVE_GAP * smax {
            clusters.last_mut().expect("i > 0").push(i);
        } else {
            if gap <= GAP_WARNING_FACTOR * CLUSTER_RELATIVE_GAP * smax {
                warning = true;
            }
            clusters.push(vec![i]);
        }
    }
    (clusters, warning)
}

/// Computes the dual SVD. `tol` is the relative rank threshold used to
/// separate appreciable from infinitesimal singular values (floored at the
/// machine-level default).
///
/// # Errors
///
/// Propagates kernel convergence failures.
pub fn dual_svd(a: &DualMatrix, tol: f64) -> Result<DualSvd> {
    let (m, n) = a.shape();
    let svd_s = a.standard().svd()?;
    let (mut u, sigma_s, mut v) = (svd_s.u, svd_s.sigma, svd_s.v);
    let smax = sigma_s.first().copied().unwrap_or(0.0);
    let cutoff = smax * tol.max(default_rank_tol(m, n));
    let r = sigma_s.iter().filter(|&&s| s > cutoff).count();

    let (clusters, gap_warning) = cluster_indices(&sigma_s, r, smax);

    // First pass of B = U^* A_d V to read the blocks that drive the basis
    // rotations. Different clusters and the corner touch disjoint rows and
    // columns, so their blocks do not interfere.
    let b0 = u.conj_transpose().mul(a.dual())?.mul(&v)?;

    for cluster in clusters.iter().filter(|c| c.len() > 1) {
        let k = cluster.len();
        let block = ComplexMatrix::from_fn(k, k, |i, j| b0[(cluster[i], cluster[j])]);
        // Re-rotate the repeated subspace so the Hermitian part of the block
        // becomes diagonal; its eigenvalues are then the dual parts of the
        // repeated singular values, sorted nonincreasing.
        let eig = block.hermitian_part().herm_eig(1e-6)?;
        u.rotate_cols(cluster, &eig.vectors);
        v.rotate_cols(cluster, &eig.vectors);
    }

    // The corner block couples the zero singular values; its classical SVD
    // realigns the trailing bases and its singular values become the
    // infinitesimal spectrum.
    let mut corner_sigma: Vec<f64> = Vec::new();
    if m > r && n > r {
        let c = b0.block(r, m, r, n);
        let csvd = c.svd()?;
        let row_idx: Vec<usize> = (r..m).collect();
        let col_idx: Vec<usize> = (r..n).collect();
        u.rotate_cols(&row_idx, &csvd.u);
        v.rotate_cols(&col_idx, &csvd.v);
        corner_sigma = csvd.sigma;
    }
    let s2max = corner_sigma.first().copied().unwrap_or(0.0);
    let dual_cutoff = smax.max(s2max) * tol.max(default_rank_tol(m, n));
    let t = r + corner_sigma.iter().filter(|&&s| s > dual_cutoff).count();

    // Recompute B in the rotated bases and assemble the dual parts.
    let b = u.conj_transpose().mul(a.dual())?.mul(&v)?;

    let mut sigma: Vec<DualReal> = Vec::with_capacity(t);
    for (i, &s) in sigma_s.iter().take(r).enumerate() {
        sigma.push(DualReal::new(s, b[(i, i)].re));
    }
    for &s2 in corner_sigma.iter().take(t - r) {
        sigma.push(DualReal::new(0.0, s2));
    }

    // Cluster lookup: mean standard value per cluster, shared by the gauge
    // formulas so P stays exactly skew-Hermitian.
    let mut cluster_id = vec![usize::MAX; r];
    let mut cluster_mean = vec![0.0f64; clusters.len()];
    for (cid, cluster) in clusters.iter().enumerate() {
        let mean = cluster.iter().map(|&i| sigma_s[i]).sum::<f64>() / cluster.len() as f64;
        cluster_mean[cid] = mean;
        for &i in cluster {
            cluster_id[i] = cid;
        }
    }

    let mut p = ComplexMatrix::zeros(m, m);
    let mut q = ComplexMatrix::zeros(n, n);

    // Diagonal gauge: the imaginary part of B's diagonal goes entirely to
    // the left generator, keeping the singular values real.
    for i in 0..r {
        p[(i, i)] = Complex64::new(0.0, b[(i, i)].im / cluster_mean[cluster_id[i]]);
    }

    for i in 0..r {
        for j in (i + 1)..r {
            if cluster_id[i] == cluster_id[j] {
                // Within a repeated value only the skew part of the block
                // survives (the Hermitian part was diagonalized above).
                let mean = cluster_mean[cluster_id[i]];
                let skew = (b[(i, j)] - b[(j, i)].conj()) * 0.5;
                let pij = skew / mean;
                p[(i, j)] = pij;
                p[(j, i)] = -pij.conj();
            } else {
                // Distinct values: solve the 2x2 system coupling B_ij with
                // conj(B_ji):  s_j P_ij - s_i Q_ij = B_ij,
                //             -s_i P_ij + s_j Q_ij = conj(B_ji).
                let (si, sj) = (sigma_s[i], sigma_s[j]);
                let det = sj * sj - si * si;
                let pij = (b[(i, j)] * sj + b[(j, i)].conj() * si) / det;
                let qij = (b[(i, j)] * si + b[(j, i)].conj() * sj) / det;
                p[(i, j)] = pij;
                p[(j, i)] = -pij.conj();
                q[(i, j)] = qij;
                q[(j, i)] = -qij.conj();
            }
        }
    }

    // Rows/columns pairing an appreciable value with the zero block have one
    // unknown each.
    for i in 0..r {
        for j in r..n {
            let qij = -b[(i, j)] / sigma_s[i];
            q[(i, j)] = qij;
            q[(j, i)] = -qij.conj();
        }
    }
    for i in r..m {
        for j in 0..r {
            let pij = b[(i, j)] / sigma_s[j];
            p[(i, j)] = pij;
            p[(j, i)] = -pij.conj();
        }
    }

    let u_dual = u.mul(&p)?;
    let v_dual = v.mul(&q)?;
    Ok(DualSvd {
        u: DualMatrix::new(u, u_dual),
        sigma,
        v: DualMatrix::new(v, v_dual),
        r,
        t,
        gap_warning,
    })
}

/// The dual singular values of `A`, padded with exact zeros to `min(m, n)`
/// and sorted nonincreasing in the total order.
///
/// # Errors
///
/// Propagates kernel convergence failures.
pub fn singular_values(a: &DualMatrix, tol: f64) -> Result<Vec<DualReal>> {
    let (m, n) = a.shape();
    let svd = dual_svd(a, tol)?;
    let mut out = svd.sigma;
    out.resize(m.min(n), DualReal::zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::test_support::{random_complex, rng_for};
    use crate::matrix::{random_dual, random_dual_unitary, rel_residual};

    const TOL: f64 = 1e-9;

    fn check_factorization(a: &DualMatrix, svd: &DualSvd) {
        let recon = svd.reconstruct();
        let res = rel_residual(&recon, a);
        assert!(res <= 1e-9, "reconstruction residual {res}");
        assert!(svd.u.is_unitary(1e-10), "left factor not dual-unitary");
        assert!(svd.v.is_unitary(1e-10), "right factor not dual-unitary");
        for w in svd.sigma.windows(2) {
            assert!(
                w[0].total_cmp(&w[1]).is_ge(),
                "singular values out of order: {} then {}",
                w[0],
                w[1]
            );
        }
        for (i, s) in svd.sigma.iter().enumerate() {
            if i < svd.r {
                assert!(s.standard > 0.0);
            } else {
                assert!(s.standard == 0.0 && s.dual > 0.0);
            }
        }
    }

    #[test]
    fn diagonal_with_infinitesimal_entry() {
        // A = diag(1, eps): singular values 1 and eps, with exact factors.
        let a = DualMatrix::from_real_parts(&[&[1.0, 0.0], &[0.0, 0.0]], &[&[0.0, 0.0], &[0.0, 1.0]])
            .unwrap();
        let svd = dual_svd(&a, TOL).unwrap();
        assert_eq!(svd.r, 1);
        assert_eq!(svd.t, 2);
        assert_eq!(svd.sigma, vec![DualReal::new(1.0, 0.0), DualReal::new(0.0, 1.0)]);
        assert_eq!(svd.u, DualMatrix::identity(2));
        assert_eq!(svd.v, DualMatrix::identity(2));
        assert!(!svd.gap_warning);
    }

    #[test]
    fn classical_matrix_embeds() {
        let mut rng = rng_for(31);
        let a = DualMatrix::from_standard(random_complex(&mut rng, 4, 3));
        let svd = dual_svd(&a, TOL).unwrap();
        assert_eq!(svd.r, 3);
        assert_eq!(svd.t, 3);
        for s in &svd.sigma {
            assert_eq!(s.dual, 0.0);
        }
        assert_eq!(svd.u.dual().max_norm(), 0.0);
        assert_eq!(svd.v.dual().max_norm(), 0.0);
        check_factorization(&a, &svd);
    }

    #[test]
    fn random_shapes_and_ranks_factor() {
        let mut seed = 4000u64;
        for &(m, n) in &[(4usize, 4usize), (5, 3), (3, 5), (6, 2), (1, 4), (7, 7)] {
            for rank in [0, 1, m.min(n) / 2, m.min(n)] {
                seed += 1;
                let a = random_dual(m, n, rank, seed).unwrap();
                let svd = dual_svd(&a, TOL).unwrap();
                assert_eq!(svd.r, rank, "rank mismatch at {m}x{n} rank {rank}");
                check_factorization(&a, &svd);
            }
        }
    }

    #[test]
    fn repeated_standard_singular_values() {
        // Standard part with exactly repeated singular values (3, 3, 0, 0)
        // in a 5x4 frame, dense dual part: exercises the cluster re-rotation
        // and the corner block simultaneously.
        let mut rng = rng_for(32);
        let gu = random_complex(&mut rng, 5, 5).svd().unwrap().u;
        let gv = random_complex(&mut rng, 4, 4).svd().unwrap().u;
        let mut s = ComplexMatrix::zeros(5, 4);
        s[(0, 0)] = Complex64::new(3.0, 0.0);
        s[(1, 1)] = Complex64::new(3.0, 0.0);
        let standard = gu.mul(&s).unwrap().mul(&gv.conj_transpose()).unwrap();
        let a = DualMatrix::new(standard, random_complex(&mut rng, 5, 4));
        let svd = dual_svd(&a, TOL).unwrap();
        assert_eq!(svd.r, 2);
        check_factorization(&a, &svd);
    }

    #[test]
    fn purely_infinitesimal_matrix() {
        let mut rng = rng_for(33);
        let ad = random_complex(&mut rng, 3, 4);
        let a = DualMatrix::new(ComplexMatrix::zeros(3, 4), ad.clone());
        let svd = dual_svd(&a, TOL).unwrap();
        assert_eq!(svd.r, 0);
        assert_eq!(svd.t, 3);
        let classical = ad.svd().unwrap();
        for (s, c) in svd.sigma.iter().zip(&classical.sigma) {
            assert!(s.standard == 0.0);
            assert!((s.dual - c).abs() <= 1e-12);
        }
        check_factorization(&a, &svd);
    }

    #[test]
    fn zero_matrix_has_empty_spectrum() {
        let a = DualMatrix::zeros(3, 2);
        let svd = dual_svd(&a, TOL).unwrap();
        assert_eq!((svd.r, svd.t), (0, 0));
        assert!(svd.sigma.is_empty());
        assert_eq!(svd.u, DualMatrix::identity(3));
        assert_eq!(svd.v, DualMatrix::identity(2));
        assert_eq!(singular_values(&a, TOL).unwrap(), vec![DualReal::zero(); 2]);
    }

    #[test]
    fn singular_values_invariant_under_dual_unitary_factors() {
        let a = random_dual(4, 4, 3, 34).unwrap();
        let w = random_dual_unitary(4, 35);
        let z = random_dual_unitary(4, 36);
        let product = w.mul(&a).unwrap().mul(&z).unwrap();
        let sa = singular_values(&a, TOL).unwrap();
        let sp = singular_values(&product, TOL).unwrap();
        for (x, y) in sa.iter().zip(&sp) {
            assert!((x.standard - y.standard).abs() <= 1e-9 * (1.0 + x.standard.abs()));
            assert!((x.dual - y.dual).abs() <= 1e-8 * (1.0 + x.dual.abs()));
        }
    }

    #[test]
    fn nonessential_part_matches_projector_formula() {
        // The SVD route to the nonessential part (infinitesimal singular
        // values in the rotated bases) must agree with the projector formula.
        for seed in 0..20u64 {
            let a = random_dual(5, 4, 2, 4100 + seed).unwrap();
            let svd = dual_svd(&a, TOL).unwrap();
            let mut inf_only = ComplexMatrix::zeros(5, 4);
            for i in svd.r..svd.t {
                inf_only[(i, i)] = Complex64::new(svd.sigma[i].dual, 0.0);
            }
            let via_svd = svd
                .u
                .mul(&DualMatrix::new(ComplexMatrix::zeros(5, 4), inf_only))
                .unwrap()
                .mul(&svd.v.conj_transpose())
                .unwrap();
            let split = a.essential_split(TOL).unwrap();
            assert!(rel_residual(&via_svd, &split.nonessential) <= 1e-10);
        }
    }

    #[test]
    fn near_threshold_gap_raises_warning() {
        // Standard singular values 1 and 1 - 5e-8: distinct clusters split
        // by a gap within a decade of the clustering threshold.
        let mut rng = rng_for(37);
        let gu = random_complex(&mut rng, 2, 2).svd().unwrap().u;
        let gv = random_complex(&mut rng, 2, 2).svd().unwrap().u;
        let s = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 1.0 - 5e-8]]).unwrap();
        let standard = gu.mul(&s).unwrap().mul(&gv.conj_transpose()).unwrap();
        let a = DualMatrix::new(standard, random_complex(&mut rng, 2, 2));
        let svd = dual_svd(&a, TOL).unwrap();
        assert!(svd.gap_warning);
        // Exactly repeated values merge into one cluster: no warning.
        let s_eq = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 1.0]]).unwrap();
        let standard_eq = gu.mul(&s_eq).unwrap().mul(&gv.conj_transpose()).unwrap();
        let a_eq = DualMatrix::new(standard_eq, random_complex(&mut rng, 2, 2));
        assert!(!dual_svd(&a_eq, TOL).unwrap().gap_warning);
    }
}
