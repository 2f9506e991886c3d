//! Worker pool and partitioned sweeps. Partitions are merged in index order,
//! so results do not depend on the worker count.

use mawc_core::dm::{sweep_range, ChainGrid, GridSpec};
use mawc_core::gaussian::{sweep_gaussian_range, GaussianBound, GaussianScenario};
use mawc_core::geometry::{RateRegion, RegionBuilder, Retention};
use mawc_core::info::{ChainClass, DiscreteChannel};
use mawc_core::sim::{
    ensemble_seed, generate_codebook, run_trials, summarize_ensemble, CodeConfig, RunSummary,
};
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::error::{CliError, CliResult};

pub const THREADS_ENV: &str = "SECRECY_REGIONS_THREADS";

/// Worker count from [`THREADS_ENV`], or the machine's parallelism.
pub fn thread_count() -> CliResult<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Invalid(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

pub fn pool() -> CliResult<ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count()?)
        .build()?)
}

fn union(parts: Vec<RateRegion>, retention: Retention) -> Option<RateRegion> {
    let kind = parts.first()?.kind();
    let mut builder = RegionBuilder::new(kind, retention);
    for p in parts {
        builder.absorb(p);
    }
    Some(builder.finish())
}

/// Gaussian sweep split by `beta1` grid index.
pub fn gaussian_region(
    pool: &ThreadPool,
    s: &GaussianScenario,
    bound: GaussianBound,
    resolution: usize,
) -> CliResult<RateRegion> {
    let parts = pool.install(|| {
        (0..resolution.max(1))
            .into_par_iter()
            .map(|i| sweep_gaussian_range(s, bound, resolution, i..i + 1))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(union(parts, Retention::All).expect("at least one partition"))
}

/// Discrete sweep split into contiguous chain-index ranges.
pub fn dm_region(
    pool: &ThreadPool,
    ch: &DiscreteChannel,
    class: ChainClass,
    spec: GridSpec,
) -> CliResult<RateRegion> {
    let grid = ChainGrid::new(ch.shape(), class, spec)?;
    let len = grid.len() as u64;
    let chunks = (pool.current_num_threads() as u64 * 16).clamp(1, len.max(1));
    let step = len.div_ceil(chunks);
    let ranges: Vec<_> = (0..chunks)
        .map(|k| (k * step).min(len)..((k + 1) * step).min(len))
        .filter(|r| !r.is_empty())
        .collect();
    if ranges.is_empty() {
        return Ok(sweep_range(ch, &grid, 0..0)?);
    }
    let parts = pool.install(|| {
        ranges
            .into_par_iter()
            .map(|r| sweep_range(ch, &grid, r))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(union(parts, Retention::FrontierOnly).expect("at least one partition"))
}

const TRIAL_CHUNK: u64 = 16;

/// `codebooks` independent codebooks with `trials` trials each, pooled in
/// codebook order.
pub fn ensemble(
    pool: &ThreadPool,
    cfg: &CodeConfig,
    ch: &DiscreteChannel,
    codebooks: u64,
    trials: u64,
) -> CliResult<RunSummary> {
    pool.install(|| {
        let books = (0..codebooks)
            .into_par_iter()
            .map(|k| {
                let mut c = cfg.clone();
                c.seed = ensemble_seed(cfg, k);
                generate_codebook(&c)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let jobs: Vec<(usize, u64)> = (0..books.len())
            .flat_map(|b| (0..trials.div_ceil(TRIAL_CHUNK)).map(move |c| (b, c * TRIAL_CHUNK)))
            .collect();
        let runs = jobs
            .into_par_iter()
            .map(|(b, start)| run_trials(&books[b], ch, start..(start + TRIAL_CHUNK).min(trials)))
            .collect::<Result<Vec<_>, _>>()?;
        let mut per_book = vec![Vec::new(); books.len()];
        let per_chunk = trials.div_ceil(TRIAL_CHUNK) as usize;
        for (j, r) in runs.into_iter().enumerate() {
            per_book[j / per_chunk.max(1)].extend(r);
        }
        let parts: Vec<_> = books.iter().zip(&per_book).map(|(b, r)| (b, r.as_slice())).collect();
        Ok(summarize_ensemble(&parts))
    })
}
