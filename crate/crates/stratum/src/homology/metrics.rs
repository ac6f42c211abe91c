//! Distances and summary statistics on persistence diagrams.

use super::diagram::{PersistenceDiagram, PersistencePair};
use crate::error::{Error, Result};

/// Exact minimum-cost perfect matching on a square cost matrix (Hungarian
/// algorithm with potentials, shortest augmenting paths, O(n³)). Intended
/// for desk-scale diagrams; costs must be finite and non-negative.
fn hungarian(cost: &[Vec<f64>]) -> f64 {
    let n = cost.len();
    if n == 0 {
        return 0.0;
    }
    // 1-based arrays; p[j] is the row matched to column j, 0 when free.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        // Unwind the augmenting path.
        while j0 != 0 {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        }
    }
    // Sum the chosen entries directly to avoid accumulated potential drift.
    (1..=n).map(|j| cost[p[j] - 1][j - 1]).sum()
}

/// L∞ ground distance between two diagram points.
fn linf(a: &PersistencePair, b: &PersistencePair) -> f64 {
    (a.birth - b.birth).abs().max((a.death - b.death).abs())
}

/// Cost of sending a finite pair to its diagonal projection under L∞:
/// half the gap between death and birth.
fn diagonal_cost(p: &PersistencePair) -> f64 {
    (p.death - p.birth) / 2.0
}

/// q-Wasserstein distance between two diagrams of the same dimension.
///
/// Finite pairs (of the default view, zero-persistence pairs excluded) are
/// matched exactly: the optimum runs over bijections between each diagram
/// extended by the other's diagonal projections, with L∞ ground cost
/// raised to the q-th power, solved by the Hungarian algorithm. Essential
/// classes only gate the result: if the essential counts differ the
/// distance is `+inf`; otherwise they contribute nothing.
///
/// Errors when `q < 1`.
pub fn wasserstein_distance(
    a: &PersistenceDiagram,
    b: &PersistenceDiagram,
    q: f64,
) -> Result<f64> {
    if !(q >= 1.0) || !q.is_finite() {
        return Err(Error::InvalidParameter {
            name: "q",
            reason: format!("wasserstein order must satisfy q >= 1, got {q}"),
        });
    }
    if a.essential_count() != b.essential_count() {
        return Ok(f64::INFINITY);
    }
    Ok(finite_pair_distance(a, b, q))
}

/// The finite-pair part of the q-Wasserstein distance, ignoring essential
/// classes entirely. Used by [`wasserstein_distance`] and reported
/// separately by diagram comparisons alongside the essential-count
/// difference.
pub fn finite_pair_distance(a: &PersistenceDiagram, b: &PersistenceDiagram, q: f64) -> f64 {
    let pa: Vec<&PersistencePair> = a.finite_pairs().collect();
    let pb: Vec<&PersistencePair> = b.finite_pairs().collect();
    let (n, m) = (pa.len(), pb.len());
    if n + m == 0 {
        return 0.0;
    }
    // Square matrix over a-points plus m diagonal slots versus b-points
    // plus n diagonal slots. Any diagonal slot accepts any point at that
    // point's own projection cost; diagonal-to-diagonal is free.
    let size = n + m;
    let mut cost = vec![vec![0.0f64; size]; size];
    for i in 0..n {
        for j in 0..m {
            cost[i][j] = linf(pa[i], pb[j]).powf(q);
        }
        let d = diagonal_cost(pa[i]).powf(q);
        for j in m..size {
            cost[i][j] = d;
        }
    }
    for i in n..size {
        for j in 0..m {
            cost[i][j] = diagonal_cost(pb[j]).powf(q);
        }
    }
    hungarian(&cost).powf(1.0 / q)
}

/// Total persistence: the sum of (death − birth)^q over the finite pairs
/// of the default view. Essential classes are excluded (their count is
/// reported separately by callers that need it).
pub fn total_persistence(diagram: &PersistenceDiagram, q: f64) -> f64 {
    diagram
        .finite_pairs()
        .map(|p| (p.death - p.birth).powf(q))
        .sum()
}
