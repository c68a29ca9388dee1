//! Data-parallel helpers. With the `parallel` feature these fan out over the
//! rayon pool; without it (or with `Execution::Sequential`) they are plain
//! loops. Both paths produce identical results in identical order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Fallible `map` over a slice; the first error in index order wins.
pub(crate) fn try_map<I, T, E, F>(exec: Execution, items: &[I], f: F) -> Result<Vec<T>, E>
where
    I: Sync,
    T: Send,
    E: Send,
    F: Fn(&I) -> Result<T, E> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        let results: Vec<Result<T, E>> = items.par_iter().map(f).collect();
        return results.into_iter().collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Runs two closures, concurrently when allowed.
pub(crate) fn join<A, B, RA, RB>(exec: Execution, a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return rayon::join(a, b);
    }
    let _ = exec;
    (a(), b())
}
