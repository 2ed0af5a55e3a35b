//! Data-parallel driver for the enumeration and quadrature inner loops.
//!
//! With the `parallel` feature (on by default) work is split across rayon;
//! without it the same closures run sequentially. All folds used here are
//! associative and commutative over exact values, so results are identical
//! either way — the benches in `benches/parallel.rs` compare the two paths.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use std::sync::atomic::{AtomicBool, Ordering};

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Force the sequential path even when the `parallel` feature is on. The
/// benches use this to compare both paths in one binary; results are
/// identical either way.
pub fn force_sequential(on: bool) {
    FORCE_SEQUENTIAL.store(on, Ordering::SeqCst);
}

/// Fold `f` over `0..n` and combine partial results with `merge`.
pub fn fold_range<T, F, M>(n: u64, identity: impl Fn() -> T + Sync, f: F, merge: M) -> T
where
    T: Send,
    F: Fn(T, u64) -> T + Sync,
    M: Fn(T, T) -> T + Sync + Send,
{
    if cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.load(Ordering::Relaxed) {
        fold_range_parallel(n, &identity, &f, &merge)
    } else {
        fold_range_sequential(n, &identity, &f, &merge)
    }
}

/// Sequential fold, always available (used directly by the benches).
pub fn fold_range_sequential<T, F, M>(
    n: u64,
    identity: &(impl Fn() -> T + Sync),
    f: &F,
    _merge: &M,
) -> T
where
    F: Fn(T, u64) -> T + Sync,
    M: Fn(T, T) -> T + Sync,
{
    (0..n).fold(identity(), |acc, i| f(acc, i))
}

#[cfg(feature = "parallel")]
pub fn fold_range_parallel<T, F, M>(
    n: u64,
    identity: &(impl Fn() -> T + Sync),
    f: &F,
    merge: &M,
) -> T
where
    T: Send,
    F: Fn(T, u64) -> T + Sync,
    M: Fn(T, T) -> T + Sync + Send,
{
    // Chunk the index range so each task amortizes the fold setup.
    let chunk = ((n / 256).max(1024)).min(n.max(1));
    (0..n.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let lo = c * chunk;
            let hi = ((c + 1) * chunk).min(n);
            (lo..hi).fold(identity(), |acc, i| f(acc, i))
        })
        .reduce(identity, merge)
}

#[cfg(not(feature = "parallel"))]
pub fn fold_range_parallel<T, F, M>(
    n: u64,
    identity: &(impl Fn() -> T + Sync),
    f: &F,
    merge: &M,
) -> T
where
    T: Send,
    F: Fn(T, u64) -> T + Sync,
    M: Fn(T, T) -> T + Sync + Send,
{
    fold_range_sequential(n, identity, f, merge)
}

/// Map `f` over `0..n` collecting results in index order.
pub fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if !FORCE_SEQUENTIAL.load(Ordering::Relaxed) {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fold_matches_sequential() {
        let f = |acc: u64, i: u64| acc + i * i;
        let m = |a: u64, b: u64| a + b;
        let id = || 0u64;
        assert_eq!(
            fold_range(100_000, id, f, m),
            fold_range_sequential(100_000, &id, &f, &m)
        );
    }
}
