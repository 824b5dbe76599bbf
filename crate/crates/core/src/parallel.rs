//! Data-parallel dispatch for entrywise matrix kernels.
//!
//! Results are deterministic regardless of thread count: each output entry
//! is computed by one closure call with a fixed internal evaluation order,
//! and the parallel path only distributes whole entries across threads.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Error;

/// Work threshold (output entries times inner length) below which the
/// parallel path is not worth the scheduling overhead.
pub(crate) const MIN_PAR_WORK: usize = 4096;

#[cfg(feature = "parallel")]
pub(crate) fn map_entries<T, F>(n: usize, parallel: bool, f: F) -> Result<Vec<T>, Error>
where
    T: Send,
    F: Fn(usize) -> Result<T, Error> + Send + Sync,
{
    if parallel {
        (0..n).into_par_iter().map(f).collect()
    } else {
        (0..n).map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_entries<T, F>(n: usize, _parallel: bool, f: F) -> Result<Vec<T>, Error>
where
    T: Send,
    F: Fn(usize) -> Result<T, Error> + Send + Sync,
{
    (0..n).map(f).collect()
}
