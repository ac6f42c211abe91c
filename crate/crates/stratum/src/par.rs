//! Internal helper that runs data-parallel loops under the `parallel`
//! feature and falls back to plain iteration without it.
//!
//! Every call site is order-independent: the closure writes into an output
//! vector indexed by input position, so the result is identical whichever
//! path is compiled in. Under the `parallel` feature the loop runs on the
//! current rayon thread pool, so callers (and benchmarks) can pin a
//! one-thread pool to force sequential execution at runtime.

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}
