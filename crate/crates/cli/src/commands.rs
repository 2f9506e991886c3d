use std::path::{Path, PathBuf};

use mawc_core::dm::{fm_check, ChainInformation};
use mawc_core::gaussian::{GaussianBound, GaussianScenario, DEFAULT_RESOLUTION, OUTER_R0_CROSS_FACTOR};
use mawc_core::geometry::RateRegion;
use mawc_core::info::random::{random_degraded_channel, random_inner_chain, ChainShape};
use mawc_core::info::{ChainClass, ChannelShape};
use mawc_core::sim::stats::{mean_increase_z, proportion_increase_z, significant_increase};
use mawc_core::sim::RunSummary;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::ThreadPool;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::output::{
    json_text, projected_rows, provenance_json, region_csv, region_summary, rows_of, sim_csv,
    triple_json, write_file, RegionRow,
};
use crate::parallel;
use crate::scenario::{
    DmBoundName, DmSpec, FmCheckSpec, GaussianSpec, Scenario, ScenarioFile, SimSpec,
};

/// Files written by one command.
pub type Written = Vec<PathBuf>;

pub fn run_scenario(file: &ScenarioFile) -> CliResult<Written> {
    let pool = parallel::pool()?;
    let dir = &file.output.dir;
    match &file.scenario {
        Scenario::Gaussian(s) => run_gaussian(&pool, s, dir),
        Scenario::Dm(s) => run_dm(&pool, s, dir),
        Scenario::Simulate(s) => run_simulate(&pool, s, dir),
        Scenario::FmCheck(s) => run_fm_check(s, dir),
    }
}

fn nonempty<T>(what: &str, items: &[T]) -> CliResult<()> {
    if items.is_empty() {
        return Err(CliError::Invalid(format!("{what} must not be empty")));
    }
    Ok(())
}

pub fn gaussian_regions(pool: &ThreadPool, spec: &GaussianSpec) -> CliResult<Vec<RateRegion>> {
    nonempty("bounds", &spec.bounds)?;
    let s = spec.scenario()?;
    spec.bounds
        .iter()
        .map(|b| parallel::gaussian_region(pool, &s, spec.bound(*b), spec.resolution))
        .collect()
}

pub fn run_gaussian(pool: &ThreadPool, spec: &GaussianSpec, dir: &Path) -> CliResult<Written> {
    let regions = gaussian_regions(pool, spec)?;
    let rows: Vec<RegionRow> = regions.iter().flat_map(rows_of).collect();
    let summary = json!({
        "scenario": scenario_json(&spec.scenario()?),
        "resolution": spec.resolution,
        "cross_factor": spec.cross_factor,
        "regions": regions.iter().map(region_summary).collect::<Vec<_>>(),
    });
    Ok(vec![
        write_file(dir, "gaussian_regions.csv", &region_csv(&rows))?,
        write_file(dir, "gaussian_summary.json", &json_text(summary))?,
    ])
}

pub fn dm_regions(pool: &ThreadPool, spec: &DmSpec) -> CliResult<Vec<RateRegion>> {
    nonempty("bounds", &spec.bounds)?;
    let ch = spec.channel.build()?;
    spec.bounds
        .iter()
        .map(|b| {
            let class = match b {
                DmBoundName::Inner => ChainClass::Inner,
                DmBoundName::Outer => ChainClass::Outer,
            };
            parallel::dm_region(pool, &ch, class, spec.grid())
        })
        .collect()
}

pub fn run_dm(pool: &ThreadPool, spec: &DmSpec, dir: &Path) -> CliResult<Written> {
    let regions = dm_regions(pool, spec)?;
    let rows: Vec<RegionRow> = regions.iter().flat_map(rows_of).collect();
    let summary = json!({
        "grid": {
            "u": spec.u, "v1": spec.v1, "v2": spec.v2,
            "resolution": spec.resolution,
        },
        "regions": regions.iter().map(region_summary).collect::<Vec<_>>(),
    });
    Ok(vec![
        write_file(dir, "dm_regions.csv", &region_csv(&rows))?,
        write_file(dir, "dm_summary.json", &json_text(summary))?,
    ])
}

/// One pooled run per blocklength, in the order given.
pub fn simulate(pool: &ThreadPool, spec: &SimSpec) -> CliResult<Vec<RunSummary>> {
    nonempty("blocklengths", &spec.blocklengths)?;
    if spec.trials == 0 || spec.codebooks == 0 {
        return Err(CliError::Invalid("trials and codebooks must be positive".into()));
    }
    let ch = spec.channel.build()?;
    let aux = spec.chain.build()?;
    spec.blocklengths
        .iter()
        .map(|&n| {
            let cfg = spec.config(n, &aux, &ch)?;
            parallel::ensemble(pool, &cfg, &ch, spec.codebooks, spec.trials)
        })
        .collect()
}

/// One-sided z statistics for an increase between consecutive runs.
pub fn trend_statistics(runs: &[RunSummary]) -> Vec<Value> {
    runs.windows(2)
        .map(|w| {
            let (a, b) = (&w[0], &w[1]);
            let z1 = proportion_increase_z(a.errors1, a.trials, b.errors1, b.trials);
            let z2 = proportion_increase_z(a.errors2, a.trials, b.errors2, b.trials);
            let zg = mean_increase_z(a.secrecy_gap, a.equivocation_std_error, b.secrecy_gap, b.equivocation_std_error);
            json!({
                "from_n": a.n,
                "to_n": b.n,
                "pe1_increase_z": z1,
                "pe2_increase_z": z2,
                "secrecy_gap_increase_z": zg,
                "significant_increase": significant_increase(z1) || significant_increase(z2) || significant_increase(zg),
            })
        })
        .collect()
}

pub fn run_simulate(pool: &ThreadPool, spec: &SimSpec, dir: &Path) -> CliResult<Written> {
    let runs = simulate(pool, spec)?;
    let aux = spec.chain.build()?;
    let ch = spec.channel.build()?;
    let rates = spec.rates(&aux, &ch)?;
    let info = ChainInformation::evaluate(&aux, &ch)?;
    let summary = json!({
        "rates": {
            "r0": rates.r0, "r1": rates.r1, "r2": rates.r2,
            "r1p": rates.r1p, "r2p": rates.r2p,
        },
        "eavesdropper_leakage": info.v12_y2_u,
        "typicality_eps": spec.typicality_eps,
        "codebooks": spec.codebooks,
        "trials_per_codebook": spec.trials,
        "seed": spec.seed,
        "runs": runs.iter().map(|s| json!({
            "n": s.n,
            "trials": s.trials,
            "errors1": s.errors1,
            "errors2": s.errors2,
            "pe1": s.pe1,
            "pe2": s.pe2,
            "private_rate": s.private_rate,
            "equivocation_bits_per_use": s.equivocation_bits_per_use,
            "equivocation_std_error": s.equivocation_std_error,
            "secrecy_gap": s.secrecy_gap,
        })).collect::<Vec<_>>(),
        "trend": trend_statistics(&runs),
    });
    Ok(vec![
        write_file(dir, "simulation.csv", &sim_csv(&runs))?,
        write_file(dir, "simulation_summary.json", &json_text(summary))?,
    ])
}

/// Projection check for each chain, in order.
pub fn fm_reports(spec: &FmCheckSpec) -> CliResult<Vec<Value>> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let fixed = spec.channel.as_ref().map(|c| c.build()).transpose()?;
    let mut out = Vec::with_capacity(spec.chains);
    for index in 0..spec.chains {
        let ch = match &fixed {
            Some(c) => c.clone(),
            None => random_degraded_channel(&mut rng, ChannelShape::new(2, 2, 2, 2))?,
        };
        let shape = ChainShape {
            x1: ch.shape().x1,
            x2: ch.shape().x2,
            ..ChainShape::BINARY
        };
        let aux = random_inner_chain(&mut rng, shape)?;
        let cmp = fm_check(&aux, &ch)?;
        out.push(json!({
            "index": index,
            "equal": cmp.equal,
            "direct_vertices": cmp.direct_vertices.iter().map(triple_json).collect::<Vec<_>>(),
            "projected_vertices": cmp.projected_vertices.iter().map(triple_json).collect::<Vec<_>>(),
        }));
    }
    Ok(out)
}

pub fn run_fm_check(spec: &FmCheckSpec, dir: &Path) -> CliResult<Written> {
    let results = fm_reports(spec)?;
    let all_equal = results.iter().all(|r| r["equal"] == json!(true));
    let report = json!({
        "chains": spec.chains,
        "seed": spec.seed,
        "all_equal": all_equal,
        "results": results,
    });
    Ok(vec![write_file(dir, "fm_check.json", &json_text(report))?])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig2,
    Fig3,
    Fig4,
}

impl Figure {
    pub fn name(&self) -> &'static str {
        match self {
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
        }
    }

    /// `P1 = P2 = 1`, `sigma1^2 = 0.1`, and `sigma2^2` of 0.3 or 0.6.
    pub fn scenario(&self) -> GaussianScenario {
        let sigma2_sq = match self {
            Figure::Fig2 | Figure::Fig3 => 0.3,
            Figure::Fig4 => 0.6,
        };
        GaussianScenario::new(1.0, 1.0, 0.1, sigma2_sq).expect("positive parameters")
    }
}

fn scenario_json(s: &GaussianScenario) -> Value {
    json!({ "p1": s.p1, "p2": s.p2, "sigma1_sq": s.sigma1_sq, "sigma2_sq": s.sigma2_sq })
}

fn sum_rate(r: &RateRegion) -> f64 {
    r.max_of(|p| p.r1 + p.r2)
}

fn sum_rate_json(r: &RateRegion) -> Value {
    match r.argmax(|p| p.r1 + p.r2) {
        Some((p, s)) => json!({ "value": p.r1 + p.r2, "point": triple_json(&p), "at": provenance_json(&s) }),
        None => Value::Null,
    }
}

pub fn run_figure(pool: &ThreadPool, fig: Figure, dir: &Path, resolution: Option<usize>) -> CliResult<Written> {
    let s = fig.scenario();
    let res = resolution.unwrap_or(DEFAULT_RESOLUTION);
    let sweep = |b: GaussianBound| parallel::gaussian_region(pool, &s, b, res);
    let inner = sweep(GaussianBound::Inner)?;
    let (regions, rows, comparison): (Vec<RateRegion>, Vec<RegionRow>, Value) = match fig {
        Figure::Fig2 => {
            let outer = sweep(GaussianBound::OUTER)?;
            let rows = rows_of(&inner).into_iter().chain(rows_of(&outer)).collect();
            (vec![inner, outer], rows, Value::Null)
        }
        Figure::Fig3 | Figure::Fig4 => {
            let cmac = sweep(GaussianBound::Cmac)?;
            let cmp = json!({
                "inner_max_r1_plus_r2": sum_rate_json(&inner),
                "cmac_max_r1_plus_r2": sum_rate_json(&cmac),
                "inner_exceeds_cmac": sum_rate(&inner) > sum_rate(&cmac),
            });
            if fig == Figure::Fig3 {
                let outer = sweep(GaussianBound::OUTER)?;
                let rows = [&inner, &outer, &cmac].into_iter().flat_map(projected_rows).collect();
                (vec![inner, outer, cmac], rows, cmp)
            } else {
                let rows = rows_of(&inner).into_iter().chain(rows_of(&cmac)).collect();
                (vec![inner, cmac], rows, cmp)
            }
        }
    };
    let mut summary = json!({
        "figure": fig.name(),
        "scenario": scenario_json(&s),
        "resolution": res,
        "outer_cross_factor": OUTER_R0_CROSS_FACTOR,
        "projected_onto_r1_r2": fig == Figure::Fig3,
        "regions": regions.iter().map(region_summary).collect::<Vec<_>>(),
    });
    if let (Value::Object(m), Value::Object(c)) = (&mut summary, comparison) {
        m.extend(c);
    }
    let name = fig.name();
    Ok(vec![
        write_file(dir, &format!("{name}_regions.csv"), &region_csv(&rows))?,
        write_file(dir, &format!("{name}_summary.json"), &json_text(summary))?,
    ])
}
