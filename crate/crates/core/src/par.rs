//! Data-parallel helpers over sentence pairs.
//!
//! With the `parallel` feature, work is spread over the ambient rayon pool;
//! without it every call runs sequentially. Reductions used by the pipeline
//! are commutative and associative, so results do not depend on the number
//! of workers.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How corpus-level loops are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses the current rayon pool. Falls back to sequential execution when
    /// the crate is built without the `parallel` feature.
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

pub(crate) fn try_fold_reduce<'a, T, A, E, Id, F, R>(
    items: &'a [T],
    exec: Execution,
    identity: Id,
    fold: F,
    reduce: R,
) -> Result<A, E>
where
    T: Sync,
    A: Send,
    E: Send,
    Id: Fn() -> A + Sync + Send,
    F: Fn(A, &'a T) -> Result<A, E> + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items
            .par_iter()
            .try_fold(&identity, &fold)
            .try_reduce(&identity, |x, y| Ok(reduce(x, y))),
        _ => {
            // Sequential folding never merges partial results.
            let _ = reduce;
            items.iter().try_fold(identity(), fold)
        }
    }
}

pub(crate) fn fold_reduce<'a, T, A, Id, F, R>(
    items: &'a [T],
    exec: Execution,
    identity: Id,
    fold: F,
    reduce: R,
) -> A
where
    T: Sync,
    A: Send,
    Id: Fn() -> A + Sync + Send,
    F: Fn(A, &'a T) -> A + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    let result: Result<A, std::convert::Infallible> =
        try_fold_reduce(items, exec, identity, |a, t| Ok(fold(a, t)), reduce);
    match result {
        Ok(a) => a,
        Err(never) => match never {},
    }
}

/// Order-preserving map.
pub(crate) fn map<'a, T, U, F>(items: &'a [T], exec: Execution, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&'a T) -> U + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}
