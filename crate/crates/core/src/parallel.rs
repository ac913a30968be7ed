//! Order-preserving map over an index range, parallel when the `parallel`
//! feature is on.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to every index in `0..n` with a per-worker scratch value
/// built by `init`, returning results in index order.
#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<S, R, I, F>(n: usize, init: I, f: F) -> Vec<R>
where
    R: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize) -> R + Sync + Send,
{
    (0..n).into_par_iter().map_init(init, f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<S, R, I, F>(n: usize, init: I, f: F) -> Vec<R>
where
    I: Fn() -> S,
    F: Fn(&mut S, usize) -> R,
{
    let mut scratch = init();
    (0..n).map(|i| f(&mut scratch, i)).collect()
}
