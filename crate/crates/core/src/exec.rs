//! Sequential / data-parallel execution switch.
//!
//! Every hot loop in the crate goes through [`map_reduce`], which either
//! runs on the rayon pool or as a plain iterator. Results are combined by
//! exact addition, so both paths return identical values.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

pub fn map_reduce<I, T, M, Z, R>(exec: Exec, items: &[I], map: M, zero: Z, reduce: R) -> T
where
    I: Sync,
    T: Send,
    M: Fn(&I) -> T + Sync + Send,
    Z: Fn() -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    match exec {
        Exec::Sequential => items.iter().map(map).fold(zero(), reduce),
        #[cfg(feature = "parallel")]
        Exec::Parallel => items.par_iter().map(map).reduce(zero, reduce),
    }
}

pub fn map_collect<I, T, M>(exec: Exec, items: &[I], map: M) -> Vec<T>
where
    I: Sync,
    T: Send,
    M: Fn(&I) -> T + Sync + Send,
{
    match exec {
        Exec::Sequential => items.iter().map(map).collect(),
        #[cfg(feature = "parallel")]
        Exec::Parallel => items.par_iter().map(map).collect(),
    }
}
