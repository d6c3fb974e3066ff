//! Data-parallel batch evaluation.
//!
//! With the `parallel` feature (default) batches run on the rayon global
//! pool; without it, or with [`Execution::Sequential`], they run on the
//! calling thread. Results are returned in input order either way.

use crate::error::Result;
use crate::oracle::davenport::davenport_solve;
use crate::quat::Quaternion;
use crate::solver::{solve_two_obs, ObservationPair, WahbaFamily};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

pub fn map<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

pub fn map_range<R, F>(n: usize, exec: Execution, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Reduces `f(0..n)` with an associative, commutative `pick`.
pub(crate) fn min_by_index<K, F, P>(n: usize, exec: Execution, f: F, pick: P) -> Option<K>
where
    K: Send + Copy,
    F: Fn(usize) -> K + Sync + Send,
    P: Fn(K, K) -> K + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().map(f).reduce_with(pick);
    }
    let _ = exec;
    (0..n).map(f).reduce(pick)
}

pub fn solve_batch(pairs: &[ObservationPair], tol: f64, exec: Execution) -> Vec<Result<WahbaFamily>> {
    map(pairs, exec, |p| solve_two_obs(p, tol))
}

pub fn davenport_batch(pairs: &[ObservationPair], exec: Execution) -> Vec<Result<Quaternion>> {
    map(pairs, exec, |p| davenport_solve(&p.pairs()))
}
