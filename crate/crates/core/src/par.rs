//! Execution-mode switch for the data-parallel inner loops.
//!
//! With the `parallel` feature (default) the hot loops fan out over rayon;
//! without it, or with [`Parallelism::Sequential`], they run on the calling
//! thread. Outputs are canonicalized after every fan-out, so the two modes
//! return identical results.

/// Requested execution mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parallelism {
    /// Single-threaded.
    Sequential,
    /// Rayon work-stealing when the `parallel` feature is on; silently
    /// equivalent to `Sequential` otherwise.
    Rayon,
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Rayon
        } else {
            Parallelism::Sequential
        }
    }
}

impl Parallelism {
    pub(crate) fn is_parallel(self) -> bool {
        match self {
            Parallelism::Sequential => false,
            Parallelism::Rayon => cfg!(feature = "parallel"),
        }
    }
}

/// Flat-maps `f` over `items`, honoring the execution mode. Collection
/// order is not guaranteed in parallel mode; callers must canonicalize.
pub(crate) fn flat_map_collect<T, U, F>(mode: Parallelism, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> Vec<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return items.into_par_iter().flat_map_iter(|t| f(t)).collect();
    }
    let _ = mode;
    items.into_iter().flat_map(|t| f(t)).collect()
}

/// Maps `f` over index chunks of `0..len`, preserving order of chunks.
pub(crate) fn map_ranges<U, F>(
    mode: Parallelism,
    len: usize,
    chunk: usize,
    f: F,
) -> Vec<U>
where
    U: Send,
    F: Fn(std::ops::Range<usize>) -> U + Sync + Send,
{
    let ranges: Vec<std::ops::Range<usize>> = (0..len)
        .step_by(chunk.max(1))
        .map(|s| s..(s + chunk).min(len))
        .collect();
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return ranges.into_par_iter().map(f).collect();
    }
    let _ = mode;
    ranges.into_iter().map(f).collect()
}
