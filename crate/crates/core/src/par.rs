//! Data-parallel helpers. With the `parallel` feature the work is spread
//! over the rayon pool; without it every mode runs on the calling thread.
//! Results never depend on the mode: maps keep input order and reductions
//! are over integers.

/// Whether a batch of independent work items may run on the thread pool.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
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
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Maps every item and folds the results with an associative `combine`.
pub fn map_reduce<T, A, M, C>(exec: Execution, items: &[T], identity: A, map: M, combine: C) -> A
where
    T: Sync,
    A: Send + Sync + Clone,
    M: Fn(&T) -> A + Sync + Send,
    C: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(map).reduce(|| identity.clone(), combine);
    }
    let _ = exec;
    items.iter().map(map).fold(identity, combine)
}

/// Sum and maximum of `f` over `items`.
pub fn fold_sum_max<T, F>(exec: Execution, items: &[T], f: F) -> (u64, u64)
where
    T: Sync,
    F: Fn(&T) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items
            .par_iter()
            .map(|x| {
                let v = f(x);
                (v, v)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1.max(b.1)));
    }
    let _ = exec;
    items.iter().map(f).fold((0, 0), |(s, m), v| (s + v, m.max(v)))
}
