//! Data-parallel helpers. With the `parallel` feature (default) these run on
//! rayon; without it they fall back to sequential iteration with identical
//! results, since every caller collects positionally or reduces
//! associatively.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over the slice, preserving order.
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Always-sequential twin of [`par_map`], kept for benchmark comparisons.
pub fn seq_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// First Some(_) produced by `f`; under rayon this is `find_map_any`, so the
/// winner may differ between runs when several candidates succeed, but every
/// caller treats all successes as equivalent.
pub fn par_find_map<T, U, F>(items: &[T], f: F) -> Option<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().find_map_any(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().find_map(f)
    }
}

/// Count of indices in 0..n for which `pred` holds.
pub fn par_count<F>(n: u64, pred: F) -> u64
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().filter(|&i| pred(i)).count() as u64
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).filter(|&i| pred(i)).count() as u64
    }
}

/// Always-sequential twin of [`par_count`], kept for benchmark comparisons.
pub fn seq_count<F>(n: u64, pred: F) -> u64
where
    F: Fn(u64) -> bool,
{
    (0..n).filter(|&i| pred(i)).count() as u64
}
