//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by complex construction, descriptor computation,
/// stratification checks, and persistence computations.
#[derive(Debug, Error)]
pub enum Error {
    /// An operation received an empty input where at least one element is
    /// required (empty cloud, empty patch, ...).
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    /// A parameter is outside its documented range.
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A neighbourhood query asked for more points than the cloud holds.
    #[error("patch larger than cloud: requested {requested} neighbours from {available} points")]
    PatchTooLarge { requested: usize, available: usize },

    /// A sphere fit needs at least dimension + 1 sample points.
    #[error("underdetermined sphere fit: {points} points in dimension {dim}")]
    UnderdeterminedFit { points: usize, dim: usize },

    /// Point clouds must have one fixed dimension and finite coordinates.
    #[error("malformed cloud: {0}")]
    MalformedCloud(String),

    /// A simplex listed a vertex that the complex does not contain, or an
    /// operation referenced an unknown simplex.
    #[error("unknown vertex id {0}")]
    UnknownVertex(u32),

    /// The simplex set violates a complex invariant (missing face,
    /// non-monotone filtration value, duplicate simplex, ...).
    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    /// A stratification violates nesting, closure, or dimension bounds, or
    /// does not consist of subcomplexes of the complex it is paired with.
    #[error("invalid stratification: {0}")]
    InvalidStratification(String),

    /// A perversity string or vector violates its growth constraints.
    #[error("invalid perversity: {0}")]
    InvalidPerversity(String),

    /// Perversity length does not match the stratification depth.
    #[error("dimension/perversity length mismatch: depth {depth}, perversity covers k = 1..={len}")]
    PerversityLengthMismatch { depth: usize, len: usize },

    /// A text file fails to parse as the expected format.
    #[error("parse error in {what} at line {line}: {reason}")]
    Parse {
        what: &'static str,
        line: usize,
        reason: String,
    },

    /// Underlying I/O failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Convenient alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
