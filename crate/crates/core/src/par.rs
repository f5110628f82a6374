//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the helpers run on the rayon pool unless the
//! process-wide mode has been switched to [`Execution::Sequential`]. Without
//! the feature everything runs on the calling thread. Results are always
//! returned in input order, so output does not depend on the schedule.

use std::sync::atomic::{AtomicBool, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

static SEQUENTIAL: AtomicBool = AtomicBool::new(false);

pub fn set_execution(mode: Execution) {
    SEQUENTIAL.store(mode == Execution::Sequential, Ordering::Relaxed);
}

/// Mode actually in effect, taking the compiled features into account.
pub fn execution() -> Execution {
    if cfg!(feature = "parallel") && !SEQUENTIAL.load(Ordering::Relaxed) {
        Execution::Parallel
    } else {
        Execution::Sequential
    }
}

/// `(0..n).map(f).collect()`, possibly in parallel.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if execution() == Execution::Parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// `items.iter().map(f).collect()`, possibly in parallel.
pub fn map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if execution() == Execution::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}
