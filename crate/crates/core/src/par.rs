//! Data-parallel helpers. With the `parallel` feature these run on the rayon pool,
//! without it they are plain sequential iterators. Results are always returned in
//! input order, so output never depends on the schedule.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map_range<T, F>(range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<T, F>(range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    range.map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_slice<I, T, F>(items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_slice<I, T, F>(items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Applies `f` to every item and hands the results to `emit` in input order, as soon
/// as each prefix is complete. With the `parallel` feature the items are computed
/// concurrently.
#[cfg(feature = "parallel")]
pub fn for_each_ordered<I, T, F, E>(items: &[I], f: F, mut emit: E)
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
    E: FnMut(T),
{
    use std::collections::BTreeMap;
    use std::sync::mpsc;

    let (tx, rx) = mpsc::channel();
    std::thread::scope(|s| {
        s.spawn(move || {
            items
                .par_iter()
                .enumerate()
                .for_each_with(tx, |tx, (i, x)| {
                    let _ = tx.send((i, f(x)));
                });
        });
        let mut pending = BTreeMap::new();
        let mut next = 0;
        for (i, t) in rx {
            pending.insert(i, t);
            while let Some(t) = pending.remove(&next) {
                emit(t);
                next += 1;
            }
        }
    });
}

#[cfg(not(feature = "parallel"))]
pub fn for_each_ordered<I, T, F, E>(items: &[I], f: F, mut emit: E)
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
    E: FnMut(T),
{
    for x in items {
        emit(f(x));
    }
}

/// Caps the global pool. A no-op without the `parallel` feature or if the pool
/// was already initialised.
pub fn init_threads(threads: Option<usize>) {
    #[cfg(feature = "parallel")]
    if let Some(t) = threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}

/// Runs `f` with at most one worker thread, whatever the feature set.
pub fn single_threaded<T: Send, F: FnOnce() -> T + Send>(f: F) -> T {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .expect("single-thread pool")
            .install(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        f()
    }
}
