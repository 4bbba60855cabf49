//! Sharded table enumeration on scoped threads.

use std::num::NonZeroUsize;
use std::thread;

use dualfunc_core::census::enumerate::for_each_table_shard;
use dualfunc_core::census::{SearchSpace, TableSet};
use dualfunc_core::Result;

/// Environment variable capping the number of worker threads.
pub const THREADS_VAR: &str = "DUALFUNC_THREADS";

/// Worker count: `DUALFUNC_THREADS` if it is a positive integer, otherwise
/// the available parallelism.
pub fn threads() -> usize {
    let available = thread::available_parallelism().map_or(1, NonZeroUsize::get);
    match std::env::var(THREADS_VAR).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        Some(n) if n > 0 => n,
        _ => available,
    }
}

/// Distinct tables of `space`, split over `workers` threads. The result
/// does not depend on `workers`.
pub fn enumerate_tables_parallel(space: &SearchSpace, max_space: u128, workers: usize) -> Result<TableSet> {
    let workers = workers.max(1);
    if workers == 1 {
        return dualfunc_core::census::enumerate_tables(space, max_space);
    }
    let parts: Vec<Result<TableSet>> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|shard| {
                s.spawn(move || {
                    let mut set = TableSet::new();
                    for_each_table_shard(space, max_space, shard, workers, &mut |t| {
                        set.insert(t);
                    })?;
                    Ok(set)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut merged = TableSet::new();
    for part in parts {
        merged.extend(part?);
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dualfunc_core::census::DEFAULT_MAX_SPACE;
    use dualfunc_core::Ring;

    #[test]
    fn matches_single_threaded() {
        let space = SearchSpace::new(Ring::Dual(4), 4, 2).unwrap();
        let one = enumerate_tables_parallel(&space, DEFAULT_MAX_SPACE, 1).unwrap();
        for w in [2, 3, 8] {
            assert_eq!(enumerate_tables_parallel(&space, DEFAULT_MAX_SPACE, w).unwrap(), one);
        }
    }

    #[test]
    fn guard_propagates() {
        let space = SearchSpace::default_for(Ring::Dual(9)).unwrap();
        assert!(enumerate_tables_parallel(&space, DEFAULT_MAX_SPACE, 4).is_err());
    }
}
