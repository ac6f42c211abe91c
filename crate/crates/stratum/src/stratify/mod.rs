//! Singular-point detection: per-point descriptors, robust outlier
//! selection on the descriptor field, and the stratification type that
//! carries the detected singular set into intersection homology.

mod descriptors;
mod outliers;
mod stratification;

pub use descriptors::{curvature, density, density_with, local_dimension, smooth_field};
pub use outliers::{detect_outliers, Direction};
pub use stratification::{read_stratification, write_stratification, Stratification};
