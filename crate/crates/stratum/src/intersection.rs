//! Persistent intersection homology of stratified filtered complexes.
//!
//! A perversity relaxes or tightens how chains may meet the singular
//! strata; simplices violating the allowability conditions are dropped
//! from the chain module, and persistence is computed on the surviving
//! allowable chains. With all lower strata empty the computation
//! degenerates, pair for pair, to ordinary persistent homology.

use crate::complex::FilteredComplex;
use crate::error::{Error, Result};
use crate::homology::reduction::{self, xor_sorted};
use crate::homology::{PersistenceDiagram, PersistencePair};
use crate::par;
use crate::simplex::Simplex;
use crate::stratify::Stratification;
use std::fmt;

/// A perversity p̄ = (p₁, …, p_d) for stratifications of depth d.
///
/// Stored in general form, where each entry is bounded by
/// −1 ≤ p_k ≤ k − 1. The classical two-parameter family (the
/// Goresky–MacPherson conditions p̄(2) = 0 and
/// p̄(k+1) ∈ {p̄(k), p̄(k)+1}) is accepted through
/// [`Perversity::goresky_macpherson`], which prepends p₁ = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perversity {
    entries: Vec<i64>,
}

impl Perversity {
    /// Builds a perversity from its general form (p₁, …, p_d).
    pub fn general(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidPerversity(
                "a perversity needs at least one entry".into(),
            ));
        }
        for (i, &p) in entries.iter().enumerate() {
            let k = (i + 1) as i64;
            if p < -1 || p > k - 1 {
                return Err(Error::InvalidPerversity(format!(
                    "entry p_{k} = {p} violates -1 <= p_{k} <= {}",
                    k - 1
                )));
            }
        }
        Ok(Perversity { entries })
    }

    /// Builds a perversity from the classical form (p̄(2), …, p̄(d)):
    /// the first entry must be 0 and consecutive entries may grow by at
    /// most 1. The general form gains a leading p₁ = 0.
    pub fn goresky_macpherson(entries: Vec<i64>) -> Result<Self> {
        Perversity::goresky_macpherson_with_first(0, entries)
    }

    /// [`Perversity::goresky_macpherson`] with an explicit choice of the
    /// codimension-1 entry p₁ ∈ {−1, 0}, which the classical form leaves
    /// unspecified. The default convention p₁ = 0 keeps components joined
    /// only at singular points separate.
    pub fn goresky_macpherson_with_first(first: i64, entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidPerversity(
                "the classical form needs at least the k = 2 entry".into(),
            ));
        }
        if entries[0] != 0 {
            return Err(Error::InvalidPerversity(format!(
                "the classical form starts at p(2) = 0, got {}",
                entries[0]
            )));
        }
        for w in entries.windows(2) {
            let step = w[1] - w[0];
            if step != 0 && step != 1 {
                return Err(Error::InvalidPerversity(format!(
                    "consecutive entries may grow by 0 or 1, got step {step} ({} to {})",
                    w[0], w[1]
                )));
            }
        }
        let mut general = Vec::with_capacity(entries.len() + 1);
        general.push(first);
        general.extend(entries);
        Perversity::general(general)
    }

    /// Parses either form: `gm:0,1,1` for the classical form, or a
    /// comma-separated general form like `-1` or `-1,0,1`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (gm, list) = match text.strip_prefix("gm:") {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        if list.trim().is_empty() {
            return Err(Error::InvalidPerversity(format!(
                "no perversity entries in {text:?}"
            )));
        }
        let entries = list
            .split(',')
            .map(|tok| {
                tok.trim().parse::<i64>().map_err(|_| {
                    Error::InvalidPerversity(format!("invalid entry {:?}", tok.trim()))
                })
            })
            .collect::<Result<Vec<i64>>>()?;
        if gm {
            Perversity::goresky_macpherson(entries)
        } else {
            Perversity::general(entries)
        }
    }

    /// The stratification depth d this perversity applies to.
    pub fn depth(&self) -> usize {
        self.entries.len()
    }

    /// The entry p_k for codimension k ∈ {1, …, d}.
    pub fn value(&self, k: usize) -> i64 {
        self.entries[k - 1]
    }

    /// The general-form entries (p₁, …, p_d).
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }
}

impl fmt::Display for Perversity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

fn check_depth(strat: &Stratification, perversity: &Perversity) -> Result<()> {
    if perversity.depth() != strat.depth() {
        return Err(Error::PerversityLengthMismatch {
            depth: strat.depth(),
            len: perversity.depth(),
        });
    }
    Ok(())
}

/// Whether `simplex` satisfies every allowability condition: for each
/// codimension k ∈ {1, …, d},
/// dim(σ ∩ X_{d−k}) ≤ dim σ − k + p_k,
/// where the dimension of an empty intersection is −∞ and always passes.
///
/// The search exploits two facts rather than enumerating all faces: a
/// condition whose threshold reaches the largest possible intersection
/// dimension cannot fail, and the stratum X_{d−k} contains no simplex of
/// dimension above d − k, so only face dimensions between threshold + 1
/// and min(dim σ, d − k) can decide. Faces are probed largest dimension
/// first, in reverse lexicographic order, stopping at the first hit.
pub fn is_proper(simplex: &Simplex, strat: &Stratification, perversity: &Perversity) -> bool {
    debug_assert_eq!(strat.depth(), perversity.depth());
    let d = strat.depth();
    let s_dim = simplex.dim();
    for k in 1..=d {
        let level = d - k;
        let threshold = s_dim as i64 - k as i64 + perversity.value(k);
        let l_max = s_dim.min(level);
        if threshold >= l_max as i64 {
            continue;
        }
        let lo = (threshold + 1).max(0) as usize;
        for l in (lo..=l_max).rev() {
            for face in simplex.faces_of_dim(l) {
                if strat.contains(level, &face) {
                    return false;
                }
            }
        }
    }
    true
}

/// Per-simplex allowability of the whole complex: `mask[i]` is whether
/// simplex `i` is proper. Runs per simplex in parallel under the
/// `parallel` feature.
pub fn allowability_mask_fast(
    complex: &FilteredComplex,
    strat: &Stratification,
    perversity: &Perversity,
) -> Result<Vec<bool>> {
    check_depth(strat, perversity)?;
    Ok(par::map_indexed(complex.len(), |i| {
        is_proper(complex.simplex(i), strat, perversity)
    }))
}

/// Reference implementation of [`allowability_mask_fast`] straight from the
/// definition: for every condition, the dimension of σ ∩ X_{d−k} is found
/// by scanning *all* faces of σ and recording the largest one inside the
/// stratum, with no early exit and no use of the strata's dimension
/// bounds. Kept as the correctness oracle and the baseline the optimised
/// mask is benchmarked against.
pub fn allowability_mask_naive(
    complex: &FilteredComplex,
    strat: &Stratification,
    perversity: &Perversity,
) -> Result<Vec<bool>> {
    check_depth(strat, perversity)?;
    let d = strat.depth();
    Ok(par::map_indexed(complex.len(), |i| {
        let simplex = complex.simplex(i);
        let mut proper = true;
        for k in 1..=d {
            let level = d - k;
            let mut inter_dim: Option<usize> = None;
            for l in 0..=simplex.dim() {
                for face in simplex.faces_of_dim(l) {
                    if strat.contains(level, &face) {
                        inter_dim = Some(l);
                    }
                }
            }
            let bound = simplex.dim() as i64 - k as i64 + perversity.value(k);
            if let Some(m) = inter_dim {
                if m as i64 > bound {
                    proper = false;
                }
            }
        }
        proper
    }))
}

/// One element of the filtration-compatible basis of allowable chains:
/// a Z/2 chain of proper `dim`-simplices whose boundary is supported on
/// proper simplices. Its degree — the largest filtration index in its
/// support — is unique across the whole basis.
struct BasisChain {
    dim: usize,
    degree: u32,
    /// Ascending filtration indices of the simplices in the chain.
    support: Vec<u32>,
}

/// Stage 1 of the intersection-persistence computation: per dimension
/// through `top_dim`, a filtration-compatible basis of the allowable
/// chains. Proper simplices enter in filtration order as columns holding
/// the non-allowable part of their boundary; combinations are tracked, and
/// every column reduced to zero contributes the combined chain as a basis
/// element. Degrees (largest support index) are unique across the basis,
/// so any filtration prefix of the basis spans the allowable chains of
/// that prefix.
fn allowable_chain_basis(
    complex: &FilteredComplex,
    proper: &[bool],
    top_dim: usize,
) -> Vec<BasisChain> {
    let n = complex.len();
    let mut basis: Vec<BasisChain> = Vec::new();
    for p in 0..=top_dim {
        let mut pivot_owner: Vec<u32> = vec![u32::MAX; n];
        let mut cols: Vec<Vec<u32>> = Vec::new();
        let mut combos: Vec<Vec<u32>> = Vec::new();
        for g in 0..n {
            if complex.simplex(g).dim() != p || !proper[g] {
                continue;
            }
            let mut col: Vec<u32> = complex
                .boundary_indices(g)
                .into_iter()
                .filter(|&r| !proper[r as usize])
                .collect();
            let mut combo: Vec<u32> = vec![g as u32];
            while let Some(&low) = col.last() {
                let owner = pivot_owner[low as usize];
                if owner == u32::MAX {
                    break;
                }
                col = xor_sorted(&col, &cols[owner as usize]);
                combo = xor_sorted(&combo, &combos[owner as usize]);
            }
            let pos = cols.len() as u32;
            match col.last() {
                Some(&low) => pivot_owner[low as usize] = pos,
                None => basis.push(BasisChain {
                    dim: p,
                    degree: g as u32,
                    support: combo.clone(),
                }),
            }
            cols.push(col);
            combos.push(combo);
        }
    }
    basis
}

/// Computes persistent intersection homology diagrams in dimensions
/// `0..=max_dim` for the given stratification and perversity.
///
/// The computation runs in two stages. First, per dimension, a basis of
/// the allowable chains compatible with the filtration: proper simplices
/// enter in filtration order as columns holding the non-allowable part of
/// their boundary, and every column that reduces to zero contributes the
/// chain formed by the columns combined into it. Tracking combinations
/// makes each basis chain's largest simplex index — its degree — unique,
/// so truncating the basis at any filtration prefix yields a basis of the
/// allowable chains of that prefix. Second, the boundary of each basis
/// chain is expressed in the one-lower basis by repeatedly eliminating
/// its largest simplex index against the unique basis chain of that
/// degree, and the resulting matrix, with rows and columns ordered by
/// degree, is reduced by the same lowest-one pairing as ordinary
/// persistence. Bases are built through dimension `max_dim + 1` so that
/// deaths of `max_dim`-dimensional classes are seen.
///
/// Essential classes get death `+inf`; zero-persistence pairs are kept in
/// the diagrams and hidden by their default views.
pub fn compute_intersection_persistence(
    complex: &FilteredComplex,
    strat: &Stratification,
    perversity: &Perversity,
    max_dim: usize,
) -> Result<Vec<PersistenceDiagram>> {
    check_depth(strat, perversity)?;
    let proper = allowability_mask_fast(complex, strat, perversity)?;
    let n = complex.len();
    let top_dim = (max_dim + 1).min(complex.dim());
    let mut basis = allowable_chain_basis(complex, &proper, top_dim);

    // Stage 2: boundaries of basis chains in basis coordinates, ordered
    // by degree, reduced with the standard lowest-one pairing.
    basis.sort_unstable_by_key(|b| b.degree);
    let m = basis.len();
    let mut pos_by_degree: Vec<u32> = vec![u32::MAX; n];
    for (i, b) in basis.iter().enumerate() {
        pos_by_degree[b.degree as usize] = i as u32;
    }
    let columns: Vec<Option<Vec<u32>>> = basis
        .iter()
        .map(|b| {
            if b.dim == 0 {
                return Some(Vec::new());
            }
            let mut chain: Vec<u32> = Vec::new();
            for &g in &b.support {
                chain = xor_sorted(&chain, &complex.boundary_indices(g as usize));
            }
            // The boundary of an allowable chain is supported on proper
            // simplices, so peeling its largest index always finds the
            // basis chain of exactly that degree.
            let mut rows: Vec<u32> = Vec::new();
            while let Some(&top) = chain.last() {
                let pos = pos_by_degree[top as usize];
                debug_assert_ne!(pos, u32::MAX, "boundary peel must land on a basis degree");
                let u = &basis[pos as usize];
                debug_assert_eq!(u.dim + 1, b.dim);
                chain = xor_sorted(&chain, &u.support);
                rows.push(pos);
            }
            rows.sort_unstable();
            Some(rows)
        })
        .collect();
    let kills = reduction::reduce_columns(columns);

    let mut killed = vec![false; m];
    for k in kills.iter().flatten() {
        killed[*k as usize] = true;
    }
    let mut per_dim: Vec<Vec<PersistencePair>> = vec![Vec::new(); max_dim + 1];
    for (j, kill) in kills.iter().enumerate() {
        if let Some(i) = kill {
            let creator = &basis[*i as usize];
            if creator.dim <= max_dim {
                per_dim[creator.dim].push(PersistencePair {
                    dimension: creator.dim,
                    birth: complex.value(creator.degree as usize),
                    death: complex.value(basis[j].degree as usize),
                    birth_index: creator.degree as usize,
                    death_index: Some(basis[j].degree as usize),
                });
            }
        }
    }
    for (i, b) in basis.iter().enumerate() {
        if b.dim <= max_dim && kills[i].is_none() && !killed[i] {
            per_dim[b.dim].push(PersistencePair {
                dimension: b.dim,
                birth: complex.value(b.degree as usize),
                death: f64::INFINITY,
                birth_index: b.degree as usize,
                death_index: None,
            });
        }
    }
    Ok(per_dim
        .into_iter()
        .enumerate()
        .map(|(dim, pairs)| PersistenceDiagram::new(dim, pairs))
        .collect())
}
