//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) these fan out over a rayon
//! pool; without it they run sequentially with identical results. Callers
//! must pass pure closures; outputs are collected in input order, so
//! reports do not depend on scheduling. The `*_seq` variants are always
//! sequential and exist so benchmarks can compare both paths.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

pub fn map_collect_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Exact sum of per-item results; addition of exact values is associative,
/// so the parallel reduction is deterministic.
#[cfg(feature = "parallel")]
pub fn sum_over<T, U, F>(items: Vec<T>, zero: U, f: F) -> U
where
    T: Send,
    U: Send + Sync + Clone + std::ops::Add<Output = U>,
    F: Fn(T) -> U + Sync + Send,
{
    items
        .into_par_iter()
        .map(f)
        .reduce(|| zero.clone(), |a, b| a + b)
}

#[cfg(not(feature = "parallel"))]
pub fn sum_over<T, U, F>(items: Vec<T>, zero: U, f: F) -> U
where
    U: Clone + std::ops::Add<Output = U>,
    F: Fn(T) -> U,
{
    items.into_iter().map(f).fold(zero, |a, b| a + b)
}

pub fn sum_over_seq<T, U, F>(items: Vec<T>, zero: U, f: F) -> U
where
    U: Clone + std::ops::Add<Output = U>,
    F: Fn(T) -> U,
{
    items.into_iter().map(f).fold(zero, |a, b| a + b)
}
