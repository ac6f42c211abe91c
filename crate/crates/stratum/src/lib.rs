//! Persistent homology and persistent intersection homology for filtered
//! simplicial complexes.
//!
//! The crate covers the full pipeline from a raw point cloud to persistence
//! diagrams:
//!
//! 1. [`cloud`] — point-cloud I/O and exact nearest-neighbour queries.
//! 2. [`complex`] — filtered simplicial complexes, Vietoris–Rips
//!    construction, barycentric subdivision.
//! 3. [`stratify`] — per-point geometric descriptors (local dimension,
//!    density, curvature), outlier-based detection of singular points, and
//!    stratifications of a complex.
//! 4. [`homology`] — persistence by boundary-matrix reduction over Z/2,
//!    Betti numbers, diagram/barcode serialisation, Wasserstein distances.
//! 5. [`intersection`] — perversities, the allowability test against a
//!    stratification, and persistent intersection homology via a two-stage
//!    reduction restricted to allowable chains.
//! 6. [`datasets`] — deterministic generators for the example spaces used
//!    throughout the test suite (wedges of circles and spheres, a pinched
//!    torus, and small explicit complexes).
//!
//! All homology is computed with Z/2 coefficients. Filtration values are
//! `f64` and every complex keeps its simplices in a fixed total order:
//! non-decreasing value, then dimension, then lexicographic vertex order,
//! so that faces always precede cofaces.

pub mod cloud;
pub mod complex;
pub mod datasets;
pub mod error;
pub mod homology;
pub mod intersection;
mod par;
pub mod simplex;
pub mod stratify;

pub use cloud::PointCloud;
pub use complex::FilteredComplex;
pub use error::Error;
pub use homology::{PersistenceDiagram, PersistencePair};
pub use intersection::Perversity;
pub use simplex::Simplex;
pub use stratify::Stratification;
