//! Per-point geometric descriptors: local dimension, kernel density,
//! sphere-fit curvature, and field smoothing.
//!
//! Every descriptor maps a cloud to one real value per point. The
//! per-point computations are independent, so they run in parallel under
//! the `parallel` feature with results identical to sequential execution.

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::par;
use nalgebra::{DMatrix, DVector};

fn check_k(cloud: &PointCloud, k: usize, min: usize) -> Result<()> {
    if k < min {
        return Err(Error::InvalidParameter {
            name: "k",
            reason: format!("neighbourhood size must be at least {min}, got {k}"),
        });
    }
    if k + 1 > cloud.len() {
        return Err(Error::PatchTooLarge {
            requested: k,
            available: cloud.len(),
        });
    }
    Ok(())
}

/// Estimates the intrinsic dimension at every point from the spectrum of
/// its neighbourhood.
///
/// For each point, the `k` nearest neighbours (the point itself excluded)
/// are centred and their covariance eigenvalues λ₁ ≥ … ≥ λ_D are taken in
/// descending order. The estimate is the position of the largest spectral
/// gap: argmax over j ∈ {2, …, D} of |λ_j − λ_{j−1}|, minus one, with ties
/// going to the smallest j. A patch with zero spread yields 0 by
/// convention; a 1-dimensional ambient space yields 1 unless degenerate.
pub fn local_dimension(cloud: &PointCloud, k: usize) -> Result<Vec<f64>> {
    check_k(cloud, k, 2)?;
    let d = cloud.dim();
    let values = par::map_indexed(cloud.len(), |i| {
        let nbrs = cloud.k_nearest(i, k).expect("validated patch size");
        // Centred covariance of the patch.
        let mut mean = vec![0.0f64; d];
        for &j in &nbrs {
            for (m, c) in mean.iter_mut().zip(cloud.point(j)) {
                *m += c;
            }
        }
        for m in &mut mean {
            *m /= k as f64;
        }
        let mut cov = DMatrix::<f64>::zeros(d, d);
        for &j in &nbrs {
            let p = cloud.point(j);
            for a in 0..d {
                let da = p[a] - mean[a];
                for b in a..d {
                    let db = p[b] - mean[b];
                    cov[(a, b)] += da * db;
                }
            }
        }
        for a in 0..d {
            for b in 0..a {
                cov[(a, b)] = cov[(b, a)];
            }
        }
        cov /= k as f64;

        let mut eigen: Vec<f64> = cov.symmetric_eigenvalues().iter().copied().collect();
        eigen.sort_unstable_by(|a, b| b.total_cmp(a));
        if eigen[0] <= 0.0 {
            return 0.0; // all patch points coincide
        }
        if d < 2 {
            return 1.0;
        }
        let mut best_j = 2usize;
        let mut best_gap = f64::NEG_INFINITY;
        for j in 2..=d {
            let gap = (eigen[j - 1] - eigen[j - 2]).abs();
            if gap > best_gap {
                best_gap = gap;
                best_j = j;
            }
        }
        (best_j - 1) as f64
    });
    Ok(values)
}

/// Iteratively replaces each value by the arithmetic mean over the point's
/// `k` nearest neighbours, with the point itself counted as its own
/// nearest neighbour (so the averaging set is the point plus its `k − 1`
/// nearest others). Zero iterations return the field unchanged.
pub fn smooth_field(
    field: &[f64],
    cloud: &PointCloud,
    k: usize,
    iterations: usize,
) -> Result<Vec<f64>> {
    if field.len() != cloud.len() {
        return Err(Error::InvalidParameter {
            name: "field",
            reason: format!(
                "field has {} values for {} points",
                field.len(),
                cloud.len()
            ),
        });
    }
    if k < 2 || k >= cloud.len() {
        return Err(Error::InvalidParameter {
            name: "k",
            reason: format!(
                "averaging set size must be in 2..{}, got {k}",
                cloud.len()
            ),
        });
    }
    let mut current = field.to_vec();
    if iterations == 0 {
        return Ok(current);
    }
    // The neighbourhoods do not change across iterations.
    let neighbours: Vec<Vec<usize>> =
        par::map_indexed(cloud.len(), |i| {
            cloud.k_nearest(i, k - 1).expect("validated patch size")
        });
    for _ in 0..iterations {
        let prev = current;
        current = par::map_indexed(cloud.len(), |i| {
            let sum: f64 = prev[i] + neighbours[i].iter().map(|&j| prev[j]).sum::<f64>();
            sum / k as f64
        });
    }
    Ok(current)
}

/// Truncated Gaussian kernel density: for each point x,
/// f(x) = Σ_{y ≠ x} exp(−dist²(x, y) / (2h)), with terms dropped entirely
/// when dist(x, y) > h.
///
/// The denominator uses the bandwidth linearly (2h). Passing
/// `squared_bandwidth = true` to [`density_with`] switches it to the
/// conventional 2h² form; the truncation radius stays h either way.
pub fn density(cloud: &PointCloud, h: f64) -> Result<Vec<f64>> {
    density_with(cloud, h, false)
}

/// [`density`] with a switchable denominator: `2h` (as documented there)
/// or `2h²` when `squared_bandwidth` is set.
pub fn density_with(cloud: &PointCloud, h: f64, squared_bandwidth: bool) -> Result<Vec<f64>> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidParameter {
            name: "h",
            reason: format!("bandwidth must be a finite positive length, got {h}"),
        });
    }
    let denom = if squared_bandwidth { 2.0 * h * h } else { 2.0 * h };
    let h_sq = h * h;
    let values = par::map_indexed(cloud.len(), |i| {
        let mut sum = 0.0;
        for j in 0..cloud.len() {
            if j == i {
                continue;
            }
            let d2 = cloud.sq_distance(i, j);
            if d2 <= h_sq {
                sum += (-d2 / denom).exp();
            }
        }
        sum
    });
    Ok(values)
}

/// Curvature as the reciprocal radius of the algebraic sphere fitted to
/// each point's neighbourhood (the point itself plus its `k` nearest
/// neighbours).
///
/// The fit minimises the algebraic residual of
/// a₀·|x|² + b·x + c = 0 under the normalisation |b|² − 4a₀c = 1, solved
/// through the SVD of the design matrix with an exact-fit fast path.
/// Numerically flat patches — fitted radius above 10⁶ times the patch
/// diameter, or no sphere at all — report curvature 0.
///
/// Requires `k ≥ dim + 1`, the minimum patch determining a sphere.
pub fn curvature(cloud: &PointCloud, k: usize) -> Result<Vec<f64>> {
    check_k(cloud, k, 1)?;
    let d = cloud.dim();
    if k < d + 1 {
        return Err(Error::UnderdeterminedFit { points: k, dim: d });
    }
    let values = par::map_indexed(cloud.len(), |i| {
        let nbrs = cloud.k_nearest(i, k).expect("validated patch size");
        let mut patch: Vec<&[f64]> = Vec::with_capacity(k + 1);
        patch.push(cloud.point(i));
        patch.extend(nbrs.iter().map(|&j| cloud.point(j)));
        sphere_fit_curvature(&patch, d)
    });
    Ok(values)
}

/// Reciprocal radius of the best-fit sphere through `patch`, or 0 for
/// numerically flat or degenerate patches.
fn sphere_fit_curvature(patch: &[&[f64]], d: usize) -> f64 {
    let n = patch.len();
    let mut diameter_sq = 0.0f64;
    for a in 0..n {
        for b in (a + 1)..n {
            let dist_sq: f64 = patch[a]
                .iter()
                .zip(patch[b])
                .map(|(x, y)| (x - y) * (x - y))
                .sum();
            diameter_sq = diameter_sq.max(dist_sq);
        }
    }
    if diameter_sq == 0.0 {
        return 0.0; // all points coincide
    }
    let diameter = diameter_sq.sqrt();

    // Centre and scale the patch for conditioning; the radius scales back.
    let mut centroid = vec![0.0f64; d];
    for p in patch {
        for (c, x) in centroid.iter_mut().zip(*p) {
            *c += x;
        }
    }
    for c in &mut centroid {
        *c /= n as f64;
    }
    let mut scale_sq = 0.0f64;
    for p in patch {
        scale_sq += p
            .iter()
            .zip(&centroid)
            .map(|(x, c)| (x - c) * (x - c))
            .sum::<f64>();
    }
    let scale = (scale_sq / n as f64).sqrt();
    if scale == 0.0 {
        return 0.0;
    }

    // Design matrix rows (|y|², y₁, …, y_d, 1) over the normalised patch.
    let cols = d + 2;
    let mut z = DMatrix::<f64>::zeros(n, cols);
    for (r, p) in patch.iter().enumerate() {
        let mut norm_sq = 0.0;
        for (a, (x, c)) in p.iter().zip(&centroid).enumerate() {
            let y = (x - c) / scale;
            z[(r, a + 1)] = y;
            norm_sq += y * y;
        }
        z[(r, 0)] = norm_sq;
        z[(r, cols - 1)] = 1.0;
    }

    let svd = z.svd(true, true);
    let v_t = svd.v_t.as_ref().expect("svd with v requested");
    let mut sigma: Vec<(usize, f64)> = svd
        .singular_values
        .iter()
        .copied()
        .enumerate()
        .collect();
    sigma.sort_by(|a, b| b.1.total_cmp(&a.1));
    let (sig_max, sig_min) = (sigma[0].1, sigma[sigma.len() - 1].1);

    let coeffs: DVector<f64> = if sig_min <= 1e-12 * sig_max {
        // Exact (or rank-deficient) fit: the right singular vector of the
        // smallest singular value solves Z·a = 0.
        v_t.row(sigma[sigma.len() - 1].0).transpose()
    } else {
        // Constrained least squares: minimise |Z·a| subject to the sphere
        // normalisation aᵀNa = 1 with N encoding |b|² − 4a₀c. Following
        // the standard reduction, take W = VΣVᵀ and pick the eigenvector
        // of W·N⁻¹·W for its smallest positive eigenvalue, then pull it
        // back through W.
        let v = v_t.transpose();
        let mut w = DMatrix::<f64>::zeros(cols, cols);
        for (idx, s) in &sigma {
            let col = v.column(*idx);
            w += &col * col.transpose() * *s;
        }
        let mut n_inv = DMatrix::<f64>::zeros(cols, cols);
        for a in 1..=d {
            n_inv[(a, a)] = 1.0;
        }
        n_inv[(0, cols - 1)] = -0.5;
        n_inv[(cols - 1, 0)] = -0.5;
        let mut m = &w * n_inv * &w;
        // Symmetrise against roundoff before the symmetric eigensolver.
        let mt = m.transpose();
        m = (&m + mt) * 0.5;
        let eigen = m.symmetric_eigen();
        let mut best: Option<(f64, usize)> = None;
        for (idx, &lambda) in eigen.eigenvalues.iter().enumerate() {
            if lambda > 0.0 && best.map_or(true, |(b, _)| lambda < b) {
                best = Some((lambda, idx));
            }
        }
        let Some((_, idx)) = best else {
            return 0.0;
        };
        let e = eigen.eigenvectors.column(idx).clone_owned();
        // Solve W·a = e through the SVD factors: a = VΣ⁻¹Vᵀe.
        let mut a = DVector::<f64>::zeros(cols);
        for (idx, s) in &sigma {
            let col = v.column(*idx);
            a += &col * (col.dot(&e) / *s);
        }
        a
    };

    let a0 = coeffs[0];
    let c = coeffs[cols - 1];
    let b_sq: f64 = (1..=d).map(|a| coeffs[a] * coeffs[a]).sum();
    let radius_sq = (b_sq - 4.0 * a0 * c) / (4.0 * a0 * a0);
    if !radius_sq.is_finite() || radius_sq <= 0.0 {
        return 0.0;
    }
    let radius = radius_sq.sqrt() * scale;
    if !radius.is_finite() || radius > 1e6 * diameter {
        return 0.0;
    }
    1.0 / radius
}
