//! Deterministic fan-out over scoped threads.
//!
//! Work items are claimed through an atomic cursor and results carry their
//! input index, so the returned vector is always in input order no matter
//! how the scheduler interleaves workers — parallelism never changes
//! output bytes, only wall time.

use std::sync::atomic::{AtomicUsize, Ordering};

/// Map `f` over `items` on up to `jobs` worker threads, preserving order.
pub(crate) fn parallel_map<I, O, F>(items: &[I], jobs: usize, f: F) -> Vec<O>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> O + Sync,
{
    let jobs = jobs.max(1).min(items.len().max(1));
    if jobs == 1 {
        return items.iter().map(f).collect();
    }
    let cursor = AtomicUsize::new(0);
    let mut indexed: Vec<(usize, O)> = std::thread::scope(|scope| {
        let workers: Vec<_> = (0..jobs)
            .map(|_| {
                scope.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let idx = cursor.fetch_add(1, Ordering::Relaxed);
                        if idx >= items.len() {
                            break;
                        }
                        local.push((idx, f(&items[idx])));
                    }
                    local
                })
            })
            .collect();
        workers
            .into_iter()
            .flat_map(|w| w.join().expect("worker thread panicked"))
            .collect()
    });
    indexed.sort_by_key(|&(i, _)| i);
    indexed.into_iter().map(|(_, o)| o).collect()
}
