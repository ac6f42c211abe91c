//! Shared test support: random fixtures, brute-force linear-algebra
//! oracles, and an exact bottleneck-feasibility checker. Everything here
//! is written straight from definitions, independently of the library's
//! algorithms, so the integration suites can compare the two.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use stratum::{FilteredComplex, Perversity, Simplex, Stratification};

/// A random face-closed complex with at most `max_simplices` simplices of
/// dimension at most `max_dim`, with monotone filtration values drawn on
/// a coarse grid so that ties are common.
pub fn random_complex(
    rng: &mut ChaCha8Rng,
    max_simplices: usize,
    max_dim: usize,
) -> FilteredComplex {
    let nv = rng.gen_range(3..=8u32);
    let mut set: BTreeSet<Simplex> = (0..nv).map(Simplex::vertex).collect();
    for _ in 0..40 {
        let size = rng.gen_range(2..=(max_dim + 1).min(nv as usize));
        let mut ids: Vec<u32> = (0..nv).collect();
        for i in 0..size {
            let j = rng.gen_range(i..ids.len());
            ids.swap(i, j);
        }
        let candidate = Simplex::new(ids[..size].iter().copied());
        let mut fresh: Vec<Simplex> = Vec::new();
        for l in 0..=candidate.dim() {
            for face in candidate.faces_of_dim(l) {
                if !set.contains(&face) {
                    fresh.push(face);
                }
            }
        }
        if set.len() + fresh.len() <= max_simplices {
            set.extend(fresh);
        }
    }

    let mut by_dim: Vec<Simplex> = set.into_iter().collect();
    by_dim.sort_by_key(Simplex::dim);
    let mut value: HashMap<Simplex, f64> = HashMap::new();
    let mut list: Vec<(Simplex, f64)> = Vec::new();
    for s in by_dim {
        let floor = s
            .facets()
            .iter()
            .map(|f| value[f])
            .fold(0.0f64, f64::max);
        let bump = [0.0, 0.0, 0.25, 0.5, 1.0][rng.gen_range(0..5)];
        let v = floor + bump;
        value.insert(s.clone(), v);
        list.push((s, v));
    }
    FilteredComplex::from_simplices(list).expect("random complex must be valid")
}

/// A random valid stratification of `complex` with the given depth: each
/// lower stratum is a random face-closed, dimension-bounded union of
/// simplex closures, and the levels are nested by construction.
pub fn random_stratification(
    rng: &mut ChaCha8Rng,
    complex: &FilteredComplex,
    depth: usize,
) -> Stratification {
    let mut sets: Vec<HashSet<Simplex>> = Vec::with_capacity(depth);
    let mut current: HashSet<Simplex> = HashSet::new();
    for level in 0..depth {
        for i in 0..complex.len() {
            let s = complex.simplex(i);
            if s.dim() <= level && rng.gen_bool(0.2) {
                for l in 0..=s.dim() {
                    for face in s.faces_of_dim(l) {
                        current.insert(face);
                    }
                }
            }
        }
        sets.push(current.clone());
    }
    Stratification::from_lower_strata(complex, sets).expect("random stratification must be valid")
}

/// A random perversity of the given depth with entries drawn from the
/// full legal range −1 ≤ p_k ≤ k − 1.
pub fn random_perversity(rng: &mut ChaCha8Rng, depth: usize) -> Perversity {
    let entries: Vec<i64> = (1..=depth)
        .map(|k| rng.gen_range(-1..=(k as i64 - 1)))
        .collect();
    Perversity::general(entries).expect("entries drawn from the legal range")
}

// ---------------------------------------------------------------------
// Dense Z/2 linear algebra on u128 column masks (fixtures stay ≤ 128
// simplices, so one word of bits per column suffices).
// ---------------------------------------------------------------------

/// Rank of a set of F₂ column vectors by Gaussian elimination: each
/// vector is reduced by the pivot owning its current leading bit until it
/// either vanishes or claims a fresh leading bit.
pub fn f2_rank(columns: Vec<u128>) -> usize {
    let mut pivot_by_bit: Vec<Option<u128>> = vec![None; 128];
    let mut rank = 0;
    for mut v in columns {
        while v != 0 {
            let lead = 127 - v.leading_zeros() as usize;
            match pivot_by_bit[lead] {
                Some(p) => v ^= p,
                None => {
                    pivot_by_bit[lead] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// A basis of the null space of the F₂ matrix whose columns are given:
/// each returned mask selects a combination of input columns summing to
/// zero. Elimination with an identity tail tracking combinations.
pub fn f2_null_space(columns: &[u128]) -> Vec<u128> {
    assert!(columns.len() <= 128, "combination masks are single words");
    let mut pivot_by_bit: Vec<Option<(u128, u128)>> = vec![None; 128];
    let mut basis: Vec<u128> = Vec::new();
    for (j, &c) in columns.iter().enumerate() {
        let mut v = c;
        let mut combo = 1u128 << j;
        loop {
            if v == 0 {
                basis.push(combo);
                break;
            }
            let lead = 127 - v.leading_zeros() as usize;
            match pivot_by_bit[lead] {
                Some((p, pc)) => {
                    v ^= p;
                    combo ^= pc;
                }
                None => {
                    pivot_by_bit[lead] = Some((v, combo));
                    break;
                }
            }
        }
    }
    basis
}

// ---------------------------------------------------------------------
// Brute-force ordinary homology.
// ---------------------------------------------------------------------

/// Boundary matrix of the `p`-simplices among `kept` indices, as column
/// masks over the kept (p−1)-simplices.
fn boundary_columns(complex: &FilteredComplex, kept: &[usize], p: usize) -> Vec<u128> {
    let row_of: HashMap<usize, usize> = kept
        .iter()
        .copied()
        .filter(|&i| complex.simplex(i).dim() + 1 == p)
        .enumerate()
        .map(|(row, i)| (i, row))
        .collect();
    kept.iter()
        .copied()
        .filter(|&i| complex.simplex(i).dim() == p)
        .map(|i| {
            let mut mask = 0u128;
            if p > 0 {
                for f in complex.simplex(i).facets() {
                    let fi = complex.index_of(&f).expect("complexes are face-closed");
                    mask |= 1u128 << row_of[&fi];
                }
            }
            mask
        })
        .collect()
}

/// Betti numbers β_0..β_max_dim of the sublevel complex at filtration
/// value `t`, from scratch: β_p = (#p-simplices − rank ∂_p) − rank ∂_{p+1}.
pub fn brute_force_betti(complex: &FilteredComplex, t: f64, max_dim: usize) -> Vec<usize> {
    let kept: Vec<usize> = (0..complex.len())
        .filter(|&i| complex.value(i) <= t)
        .collect();
    assert!(kept.len() <= 128, "oracle fixtures stay within one word");
    (0..=max_dim)
        .map(|p| {
            let cols_p = boundary_columns(complex, &kept, p);
            let n_p = cols_p.len();
            let rank_p = f2_rank(cols_p);
            let rank_p1 = f2_rank(boundary_columns(complex, &kept, p + 1));
            n_p - rank_p - rank_p1
        })
        .collect()
}

// ---------------------------------------------------------------------
// Brute-force intersection homology.
// ---------------------------------------------------------------------

/// Allowability straight from the definition: for every codimension k,
/// the largest face of `s` lying in the stratum X_{d−k} has dimension at
/// most dim σ − k + p_k (no face at all passes vacuously). Scans every
/// face of every dimension — no skipping, no early exit — so it shares
/// nothing with the library's implementations.
pub fn definition_proper(s: &Simplex, strat: &Stratification, perversity: &Perversity) -> bool {
    let d = strat.depth();
    for k in 1..=d {
        let level = d - k;
        let mut inter_dim: Option<i64> = None;
        for l in 0..=s.dim() {
            for face in s.faces_of_dim(l) {
                if strat.contains(level, &face) {
                    inter_dim = Some(inter_dim.map_or(l as i64, |m| m.max(l as i64)));
                }
            }
        }
        if let Some(m) = inter_dim {
            if m > s.dim() as i64 - k as i64 + perversity.value(k) {
                return false;
            }
        }
    }
    true
}

/// Intersection-homology Betti numbers of the sublevel complex at `t`,
/// by raw linear algebra on the allowable-chain complex
/// IC_p = {ξ supported on proper p-simplices with ∂ξ supported on proper
/// (p−1)-simplices}: β_p = dim(allowable p-cycles) − rank ∂(IC_{p+1}).
pub fn brute_force_ih_betti(
    complex: &FilteredComplex,
    strat: &Stratification,
    perversity: &Perversity,
    t: f64,
    max_dim: usize,
) -> Vec<usize> {
    let kept: Vec<usize> = (0..complex.len())
        .filter(|&i| complex.value(i) <= t)
        .collect();
    assert!(kept.len() <= 128, "oracle fixtures stay within one word");
    let proper: HashSet<usize> = kept
        .iter()
        .copied()
        .filter(|&i| definition_proper(complex.simplex(i), strat, perversity))
        .collect();

    // Per dimension p: full boundary columns of the kept proper
    // p-simplices (rows = all kept (p−1)-simplices), plus the same
    // columns restricted to improper rows.
    let full_and_improper = |p: usize| -> (Vec<u128>, Vec<u128>) {
        let rows: Vec<usize> = kept
            .iter()
            .copied()
            .filter(|&i| complex.simplex(i).dim() + 1 == p)
            .collect();
        let row_of: HashMap<usize, usize> =
            rows.iter().copied().enumerate().map(|(r, i)| (i, r)).collect();
        let improper_rows: u128 = rows
            .iter()
            .enumerate()
            .filter(|(_, i)| !proper.contains(i))
            .fold(0u128, |m, (r, _)| m | 1u128 << r);
        let cols: Vec<u128> = kept
            .iter()
            .copied()
            .filter(|&i| complex.simplex(i).dim() == p && proper.contains(&i))
            .map(|i| {
                let mut mask = 0u128;
                if p > 0 {
                    for f in complex.simplex(i).facets() {
                        let fi = complex.index_of(&f).expect("complexes are face-closed");
                        mask |= 1u128 << row_of[&fi];
                    }
                }
                mask
            })
            .collect();
        let improper = cols.iter().map(|c| c & improper_rows).collect();
        (cols, improper)
    };

    (0..=max_dim)
        .map(|p| {
            // Allowable p-cycles: combinations of proper p-columns with
            // zero full boundary (a zero boundary is trivially allowable).
            let (full_p, _) = full_and_improper(p);
            let cycle_dim = f2_null_space(&full_p).len();

            // Boundaries of IC_{p+1}: combinations of proper
            // (p+1)-columns whose boundary avoids improper rows, mapped
            // through the full boundary.
            let (full_q, improper_q) = full_and_improper(p + 1);
            let allowable_combos = f2_null_space(&improper_q);
            let images: Vec<u128> = allowable_combos
                .iter()
                .map(|&combo| {
                    let mut img = 0u128;
                    for (j, col) in full_q.iter().enumerate() {
                        if combo >> j & 1 == 1 {
                            img ^= col;
                        }
                    }
                    img
                })
                .collect();
            cycle_dim - f2_rank(images)
        })
        .collect()
}

// ---------------------------------------------------------------------
// Textbook persistence reduction (for output-identity comparison).
// ---------------------------------------------------------------------

/// The classical left-to-right column reduction, implemented with no
/// optimizations at all: repeatedly add the unique earlier column sharing
/// the current column's lowest one. Returns `pairs[j] = Some(i)` when
/// column j kills row i.
pub fn textbook_reduction(complex: &FilteredComplex) -> Vec<Option<usize>> {
    let n = complex.len();
    let mut cols: Vec<BTreeSet<usize>> = (0..n)
        .map(|j| {
            complex
                .boundary_indices(j)
                .into_iter()
                .map(|i| i as usize)
                .collect()
        })
        .collect();
    let mut low_owner: HashMap<usize, usize> = HashMap::new();
    let mut kills: Vec<Option<usize>> = vec![None; n];
    for j in 0..n {
        loop {
            let Some(&low) = cols[j].iter().next_back() else {
                break;
            };
            match low_owner.get(&low) {
                Some(&j2) => {
                    let other = cols[j2].clone();
                    for i in other {
                        if !cols[j].remove(&i) {
                            cols[j].insert(i);
                        }
                    }
                }
                None => {
                    low_owner.insert(low, j);
                    kills[j] = Some(low);
                    break;
                }
            }
        }
    }
    kills
}

// ---------------------------------------------------------------------
// Bottleneck feasibility (for the stability smoke test).
// ---------------------------------------------------------------------

/// Whether the bottleneck distance between two diagrams of one dimension
/// is at most `delta`: finite pairs may match each other within L∞ cost
/// `delta` or retire to the diagonal at half their persistence; essential
/// pairs must match essential pairs within `delta` of birth. Decided by
/// maximum bipartite matching over the allowed edges.
pub fn bottleneck_at_most(
    a: &stratum::PersistenceDiagram,
    b: &stratum::PersistenceDiagram,
    delta: f64,
) -> bool {
    let tol = delta + 1e-9;
    let ea: Vec<f64> = a.essential_pairs().map(|p| p.birth).collect();
    let eb: Vec<f64> = b.essential_pairs().map(|p| p.birth).collect();
    if ea.len() != eb.len() {
        return false;
    }
    let essential_edges = |i: usize, j: usize| (ea[i] - eb[j]).abs() <= tol;
    if !perfect_matching(ea.len(), eb.len(), essential_edges) {
        return false;
    }

    let fa: Vec<(f64, f64)> = a.finite_pairs().map(|p| (p.birth, p.death)).collect();
    let fb: Vec<(f64, f64)> = b.finite_pairs().map(|p| (p.birth, p.death)).collect();
    let (n, m) = (fa.len(), fb.len());
    // Pad each side with the other's diagonal projections: slot m+i on
    // the right is "send left i to the diagonal", and vice versa.
    let size = n + m;
    let allowed = |left: usize, right: usize| -> bool {
        match (left < n, right < m) {
            (true, true) => {
                let (b1, d1) = fa[left];
                let (b2, d2) = fb[right];
                (b1 - b2).abs().max((d1 - d2).abs()) <= tol
            }
            (true, false) => {
                right - m == left && (fa[left].1 - fa[left].0) / 2.0 <= tol
            }
            (false, true) => {
                left - n == right && (fb[right].1 - fb[right].0) / 2.0 <= tol
            }
            (false, false) => true,
        }
    };
    perfect_matching(size, size, allowed)
}

/// Kuhn's augmenting-path maximum bipartite matching; true when every
/// left vertex is matched.
fn perfect_matching(n_left: usize, n_right: usize, allowed: impl Fn(usize, usize) -> bool) -> bool {
    if n_left != n_right {
        return false;
    }
    let mut match_right: Vec<Option<usize>> = vec![None; n_right];
    fn augment(
        u: usize,
        n_right: usize,
        allowed: &impl Fn(usize, usize) -> bool,
        seen: &mut [bool],
        match_right: &mut [Option<usize>],
    ) -> bool {
        for v in 0..n_right {
            if allowed(u, v) && !seen[v] {
                seen[v] = true;
                if match_right[v].is_none()
                    || augment(match_right[v].unwrap(), n_right, allowed, seen, match_right)
                {
                    match_right[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    for u in 0..n_left {
        let mut seen = vec![false; n_right];
        if !augment(u, n_right, &allowed, &mut seen, &mut match_right) {
            return false;
        }
    }
    true
}

/// The distinct filtration values of a complex, ascending — the only
/// times at which sublevel Betti numbers can change.
pub fn distinct_values(complex: &FilteredComplex) -> Vec<f64> {
    let mut vals: Vec<f64> = (0..complex.len()).map(|i| complex.value(i)).collect();
    vals.sort_by(f64::total_cmp);
    vals.dedup();
    vals
}
