//! Persistent homology over Z/2 by boundary-matrix reduction.

mod diagram;
mod metrics;
pub(crate) mod reduction;

pub use diagram::{
    betti_numbers, read_diagram, write_barcode, write_diagram, PersistenceDiagram,
    PersistencePair,
};
pub use metrics::{finite_pair_distance, total_persistence, wasserstein_distance};

use crate::complex::FilteredComplex;
use crate::error::Result;

/// Computes the persistence diagrams of a filtered complex in dimensions
/// `0..=max_dim`.
///
/// The boundary matrix in filtration order is reduced left to right with
/// the lowest-one pairing; a negative simplex kills the class created by
/// its pivot, and positive simplices of dimension ≤ `max_dim` that are
/// never killed become essential classes with death `+inf`. Only columns
/// of dimension ≤ `max_dim + 1` participate (higher ones cannot affect the
/// reported dimensions). Zero-persistence pairs are retained inside the
/// diagrams; the diagrams' default views hide them.
pub fn compute_persistence(
    complex: &FilteredComplex,
    max_dim: usize,
) -> Result<Vec<PersistenceDiagram>> {
    let n = complex.len();
    let columns: Vec<Option<Vec<u32>>> = (0..n)
        .map(|j| {
            if complex.simplex(j).dim() <= max_dim + 1 {
                Some(complex.boundary_indices(j))
            } else {
                None
            }
        })
        .collect();
    let kills = reduction::reduce_columns(columns);

    let mut killed = vec![false; n];
    for k in kills.iter().flatten() {
        killed[*k as usize] = true;
    }

    let mut per_dim: Vec<Vec<PersistencePair>> = vec![Vec::new(); max_dim + 1];
    for (j, kill) in kills.iter().enumerate() {
        if let Some(i) = kill {
            let i = *i as usize;
            let dim = complex.simplex(i).dim();
            if dim <= max_dim {
                per_dim[dim].push(PersistencePair {
                    dimension: dim,
                    birth: complex.value(i),
                    death: complex.value(j),
                    birth_index: i,
                    death_index: Some(j),
                });
            }
        }
    }
    for i in 0..n {
        let dim = complex.simplex(i).dim();
        if dim <= max_dim && kills[i].is_none() && !killed[i] {
            per_dim[dim].push(PersistencePair {
                dimension: dim,
                birth: complex.value(i),
                death: f64::INFINITY,
                birth_index: i,
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
