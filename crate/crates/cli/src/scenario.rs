//! Scenario files: one TOML document with a `[scenario]` table tagged by
//! `kind` and an `[output]` table. Unknown keys are rejected.

use std::path::{Path, PathBuf};

use mawc_core::dm::{GridSpec, InputMaps, DEFAULT_CHAIN_CAP};
use mawc_core::gaussian::{GaussianBound, GaussianScenario, DEFAULT_RESOLUTION, OUTER_R0_CROSS_FACTOR};
use mawc_core::info::{AuxiliaryChain, ChannelShape, ConditionalTable, DiscreteChannel, FiniteDistribution};
use mawc_core::sim::{
    adder_wiretap_channel, binary_test_channel, proportional_bin_rates, CodeConfig, SimRates,
    DEFAULT_ENUMERATION_CAP, DEFAULT_MEMORY_CAP, DEFAULT_TYPICALITY_EPS,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub scenario: Scenario,
    pub output: OutputSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Directory receiving the CSV and JSON files; created if missing.
    pub dir: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Scenario {
    Gaussian(GaussianSpec),
    Dm(DmSpec),
    Simulate(SimSpec),
    FmCheck(FmCheckSpec),
}

impl Scenario {
    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::Gaussian(_) => "gaussian",
            Scenario::Dm(_) => "dm",
            Scenario::Simulate(_) => "simulate",
            Scenario::FmCheck(_) => "fm-check",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GaussianBoundName {
    Inner,
    Outer,
    Cmac,
}

fn default_gaussian_resolution() -> usize {
    DEFAULT_RESOLUTION
}

fn default_cross_factor() -> f64 {
    OUTER_R0_CROSS_FACTOR
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianSpec {
    pub p1: f64,
    pub p2: f64,
    pub sigma1_sq: f64,
    pub sigma2_sq: f64,
    pub bounds: Vec<GaussianBoundName>,
    #[serde(default = "default_gaussian_resolution")]
    pub resolution: usize,
    /// Coefficient of the correlated-power term in the outer common-rate bound.
    #[serde(default = "default_cross_factor")]
    pub cross_factor: f64,
}

impl GaussianSpec {
    pub fn scenario(&self) -> CliResult<GaussianScenario> {
        Ok(GaussianScenario::new(self.p1, self.p2, self.sigma1_sq, self.sigma2_sq)?)
    }

    pub fn bound(&self, name: GaussianBoundName) -> GaussianBound {
        match name {
            GaussianBoundName::Inner => GaussianBound::Inner,
            GaussianBoundName::Outer => GaussianBound::Outer {
                cross_factor: self.cross_factor,
            },
            GaussianBoundName::Cmac => GaussianBound::Cmac,
        }
    }
}

/// A channel given by a named construction or by its full transition table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ChannelSpec {
    /// Receiver 1 sees `2 x1 + x2` exactly; receiver 2 sees a fair coin.
    ClearMainNoiseEve,
    BinaryTest { main_flip: f64, eve_flip: f64 },
    AdderWiretap { eve_error: f64 },
    /// One row per input pair (`x1` slowest), each row over `(y1, y2)` with
    /// `y2` fastest.
    Table {
        x1: usize,
        x2: usize,
        y1: usize,
        y2: usize,
        rows: Vec<Vec<f64>>,
    },
}

pub fn clear_main_noise_eve() -> CliResult<DiscreteChannel> {
    Ok(DiscreteChannel::from_marginals(
        ChannelShape::new(2, 2, 4, 2),
        |x1, x2, y1| f64::from(u8::from(y1 == 2 * x1 + x2)),
        |_, _, _| 0.5,
    )?)
}

impl ChannelSpec {
    pub fn build(&self) -> CliResult<DiscreteChannel> {
        match self {
            ChannelSpec::ClearMainNoiseEve => clear_main_noise_eve(),
            ChannelSpec::BinaryTest {
                main_flip,
                eve_flip,
            } => Ok(binary_test_channel(*main_flip, *eve_flip)?),
            ChannelSpec::AdderWiretap { eve_error } => Ok(adder_wiretap_channel(*eve_error)?),
            ChannelSpec::Table {
                x1,
                x2,
                y1,
                y2,
                rows,
            } => {
                let shape = ChannelShape::new(*x1, *x2, *y1, *y2);
                let table = flatten("channel rows", rows, x1 * x2, y1 * y2)?;
                Ok(DiscreteChannel::new(shape, table)?)
            }
        }
    }
}

fn flatten(what: &str, rows: &[Vec<f64>], count: usize, width: usize) -> CliResult<Vec<f64>> {
    if rows.len() != count {
        return Err(CliError::Invalid(format!(
            "{what}: expected {count} rows, found {}",
            rows.len()
        )));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != width) {
        return Err(CliError::Invalid(format!(
            "{what}: row {i} has {} entries, expected {width}",
            r.len()
        )));
    }
    Ok(rows.concat())
}

fn table(what: &str, rows: &[Vec<f64>]) -> CliResult<ConditionalTable> {
    let width = rows.first().map_or(0, Vec::len);
    Ok(ConditionalTable::new(rows.len(), width, flatten(what, rows, rows.len(), width)?)?)
}

/// An inner-class chain `p(u) p(v1|u) p(v2|u) p(x1|v1) p(x2|v2)`; absent
/// input maps are identities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSpec {
    pub p_u: Vec<f64>,
    pub v1_given_u: Vec<Vec<f64>>,
    pub v2_given_u: Vec<Vec<f64>>,
    pub x1_given_v1: Option<Vec<Vec<f64>>>,
    pub x2_given_v2: Option<Vec<Vec<f64>>>,
}

impl ChainSpec {
    pub fn build(&self) -> CliResult<AuxiliaryChain> {
        let v1 = table("v1_given_u", &self.v1_given_u)?;
        let v2 = table("v2_given_u", &self.v2_given_u)?;
        let map = |what, rows: &Option<Vec<Vec<f64>>>, size| match rows {
            Some(r) => table(what, r),
            None => Ok(ConditionalTable::identity(size)?),
        };
        let x1 = map("x1_given_v1", &self.x1_given_v1, v1.cols())?;
        let x2 = map("x2_given_v2", &self.x2_given_v2, v2.cols())?;
        Ok(AuxiliaryChain::inner(
            FiniteDistribution::new(self.p_u.clone())?,
            v1,
            v2,
            x1,
            x2,
        )?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DmBoundName {
    Inner,
    Outer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputMapsName {
    Swept,
    Identity,
}

fn two() -> usize {
    2
}

fn three() -> usize {
    3
}

fn default_chain_cap() -> u64 {
    DEFAULT_CHAIN_CAP as u64
}

fn swept() -> InputMapsName {
    InputMapsName::Swept
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DmSpec {
    pub channel: ChannelSpec,
    pub bounds: Vec<DmBoundName>,
    #[serde(default = "two")]
    pub u: usize,
    #[serde(default = "two")]
    pub v1: usize,
    #[serde(default = "two")]
    pub v2: usize,
    #[serde(default = "three")]
    pub resolution: usize,
    #[serde(default = "swept")]
    pub input_maps: InputMapsName,
    #[serde(default = "default_chain_cap")]
    pub chain_cap: u64,
}

impl DmSpec {
    pub fn grid(&self) -> GridSpec {
        GridSpec {
            u: self.u,
            v1: self.v1,
            v2: self.v2,
            resolution: self.resolution,
            input_maps: match self.input_maps {
                InputMapsName::Swept => InputMaps::Swept,
                InputMapsName::Identity => InputMaps::Identity,
            },
            chain_cap: self.chain_cap as u128,
        }
    }
}

/// Message rates; bin rates left out are split from the eavesdropper's
/// leakage by [`proportional_bin_rates`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RateSpec {
    pub r0: f64,
    pub r1: f64,
    pub r2: f64,
    pub r1p: Option<f64>,
    pub r2p: Option<f64>,
}

fn one() -> u64 {
    1
}

fn default_eps() -> f64 {
    DEFAULT_TYPICALITY_EPS
}

fn default_memory_cap() -> u64 {
    DEFAULT_MEMORY_CAP as u64
}

fn default_enumeration_cap() -> u64 {
    DEFAULT_ENUMERATION_CAP as u64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimSpec {
    pub channel: ChannelSpec,
    pub chain: ChainSpec,
    pub rates: RateSpec,
    pub blocklengths: Vec<usize>,
    /// Trials per codebook.
    pub trials: u64,
    /// Independent codebooks per blocklength, seeded `seed, seed + 1, ...`.
    #[serde(default = "one")]
    pub codebooks: u64,
    #[serde(default = "default_eps")]
    pub typicality_eps: f64,
    pub seed: u64,
    #[serde(default = "default_memory_cap")]
    pub memory_cap: u64,
    #[serde(default = "default_enumeration_cap")]
    pub enumeration_cap: u64,
}

impl SimSpec {
    /// The trend configuration: binary clouds with skewed satellites over
    /// the adder eavesdropper, 20 codebooks of 50 trials per blocklength.
    pub fn reference() -> Self {
        SimSpec {
            channel: ChannelSpec::AdderWiretap { eve_error: 0.11 },
            chain: ChainSpec {
                p_u: vec![0.5, 0.5],
                v1_given_u: vec![vec![0.07, 0.93], vec![0.68, 0.32]],
                v2_given_u: vec![vec![0.12, 0.88], vec![0.9, 0.1]],
                x1_given_v1: None,
                x2_given_v2: None,
            },
            rates: RateSpec {
                r0: 0.25,
                r1: 0.25,
                r2: 0.25,
                r1p: None,
                r2p: None,
            },
            blocklengths: vec![4, 8, 12],
            trials: 50,
            codebooks: 20,
            typicality_eps: 0.15,
            seed: 1000,
            memory_cap: default_memory_cap(),
            enumeration_cap: default_enumeration_cap(),
        }
    }

    pub fn rates(&self, aux: &AuxiliaryChain, ch: &DiscreteChannel) -> CliResult<SimRates> {
        let r = self.rates;
        let (r1p, r2p) = match (r.r1p, r.r2p) {
            (Some(a), Some(b)) => (a, b),
            (None, None) => proportional_bin_rates(aux, ch)?,
            _ => {
                return Err(CliError::Invalid(
                    "give both r1p and r2p or neither".to_string(),
                ))
            }
        };
        Ok(SimRates {
            r0: r.r0,
            r1: r.r1,
            r2: r.r2,
            r1p,
            r2p,
        })
    }

    pub fn config(&self, n: usize, aux: &AuxiliaryChain, ch: &DiscreteChannel) -> CliResult<CodeConfig> {
        let mut cfg = CodeConfig::new(n, self.rates(aux, ch)?, aux.clone(), self.seed);
        cfg.typicality_eps = self.typicality_eps;
        cfg.memory_cap = self.memory_cap as u128;
        cfg.enumeration_cap = self.enumeration_cap as u128;
        Ok(cfg)
    }
}

fn fifty() -> usize {
    50
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FmCheckSpec {
    #[serde(default = "fifty")]
    pub chains: usize,
    #[serde(default)]
    pub seed: u64,
    /// Fixed channel for every chain; absent means a fresh random degraded
    /// binary channel per chain.
    pub channel: Option<ChannelSpec>,
}

pub fn parse_scenario(text: &str, origin: &Path) -> CliResult<ScenarioFile> {
    toml::from_str(text).map_err(|e| CliError::Parse {
        path: origin.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn load_scenario(path: &Path) -> CliResult<ScenarioFile> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_scenario(&text, path)
}

pub fn to_toml(file: &ScenarioFile) -> CliResult<String> {
    toml::to_string(file).map_err(|e| CliError::Invalid(e.to_string()))
}
