//! Sharded sampling over independent uniform streams.
//!
//! Shard `i` draws from `UniformSource::with_stream(seed, i)`, so results depend on the
//! seed and shard count only, never on thread scheduling. With the `parallel` feature
//! shards run on the rayon pool; without it they run in order on the calling thread.
//! A single shard reproduces [`crate::sampler::sample_many`] with `UniformSource::new(seed)`.

use crate::error::{domain, Result};
use crate::math::Algorithm;
use crate::params::BecParams;
use crate::sampler::{DrawStats, SamplePair, Sampler};
use crate::uniform::UniformSource;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Splits `n` draws into `shards` contiguous counts, earlier shards taking the remainder.
pub fn shard_sizes(n: usize, shards: usize) -> Vec<usize> {
    let shards = shards.max(1);
    let base = n / shards;
    let extra = n % shards;
    (0..shards).map(|i| base + usize::from(i < extra)).collect()
}

fn run_shard(
    sampler: &Sampler,
    seed: u64,
    index: usize,
    count: usize,
) -> Result<(Vec<SamplePair>, DrawStats)> {
    let mut source = UniformSource::with_stream(seed, index as u64);
    sampler.sample_many(count, &mut source)
}

fn concat(parts: Vec<Result<(Vec<SamplePair>, DrawStats)>>) -> Result<(Vec<SamplePair>, DrawStats)> {
    let mut pairs = Vec::new();
    let mut stats = DrawStats::default();
    for part in parts {
        let (p, s) = part?;
        pairs.extend(p);
        stats.merge(s);
    }
    Ok((pairs, stats))
}

fn prepare(params: &BecParams, n: usize, algorithm: Algorithm, shards: usize) -> Result<(Sampler, Vec<usize>)> {
    if n == 0 {
        return Err(domain("n", 0.0, "must be >= 1"));
    }
    if shards == 0 {
        return Err(domain("shards", 0.0, "must be >= 1"));
    }
    Ok((Sampler::new(*params, algorithm)?, shard_sizes(n, shards)))
}

/// Runs every shard on the calling thread.
pub fn sample_sharded_sequential(
    params: &BecParams,
    n: usize,
    algorithm: Algorithm,
    seed: u64,
    shards: usize,
) -> Result<(Vec<SamplePair>, DrawStats)> {
    let (sampler, sizes) = prepare(params, n, algorithm, shards)?;
    let parts = sizes
        .iter()
        .enumerate()
        .map(|(i, &count)| run_shard(&sampler, seed, i, count))
        .collect();
    concat(parts)
}

/// Runs shards on the rayon pool. Output is identical to [`sample_sharded_sequential`].
#[cfg(feature = "parallel")]
pub fn sample_sharded_parallel(
    params: &BecParams,
    n: usize,
    algorithm: Algorithm,
    seed: u64,
    shards: usize,
) -> Result<(Vec<SamplePair>, DrawStats)> {
    let (sampler, sizes) = prepare(params, n, algorithm, shards)?;
    let parts = sizes
        .par_iter()
        .enumerate()
        .map(|(i, &count)| run_shard(&sampler, seed, i, count))
        .collect();
    concat(parts)
}

/// Parallel when the `parallel` feature is enabled, sequential otherwise.
pub fn sample_sharded(
    params: &BecParams,
    n: usize,
    algorithm: Algorithm,
    seed: u64,
    shards: usize,
) -> Result<(Vec<SamplePair>, DrawStats)> {
    #[cfg(feature = "parallel")]
    {
        sample_sharded_parallel(params, n, algorithm, seed, shards)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sample_sharded_sequential(params, n, algorithm, seed, shards)
    }
}

/// Counts accepted proposals over `n_proposals` trials split across shards.
pub fn count_acceptances_sharded(
    sampler: &Sampler,
    n_proposals: u64,
    seed: u64,
    shards: usize,
) -> u64 {
    let shards = shards.max(1);
    let base = n_proposals / shards as u64;
    let extra = n_proposals % shards as u64;
    let shard = |i: usize| {
        let count = base + u64::from((i as u64) < extra);
        let mut source = UniformSource::with_stream(seed, i as u64);
        (0..count)
            .filter(|_| sampler.propose(&mut source).is_some())
            .count() as u64
    };
    #[cfg(feature = "parallel")]
    {
        (0..shards).into_par_iter().map(shard).sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..shards).map(shard).sum()
    }
}

/// Maps `f` over `items`, in parallel when the feature is enabled.
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}
