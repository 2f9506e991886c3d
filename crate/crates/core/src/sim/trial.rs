use alloc::vec::Vec;
use core::ops::Range;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use super::codebook::{generate_codebook, stream_rng, Codebook};
use super::config::CodeConfig;
use super::decode::{decode_rx1, decode_rx2, posterior, ReceiverLaws, Rx1Estimate};
use crate::error::Result;
use crate::info::{DiscreteChannel, FiniteDistribution};
use crate::math::sqrt;

/// Stream carrying messages, bin choices and input maps of trial `t`.
pub fn encoding_stream(trial: u64) -> u64 {
    2 * trial + 1
}

/// Stream carrying the channel noise of trial `t`.
pub fn noise_stream(trial: u64) -> u64 {
    2 * trial + 2
}

/// One use of the channel per input pair.
pub fn transmit<R: Rng + ?Sized>(ch: &DiscreteChannel, x1: &[u8], x2: &[u8], rng: &mut R) -> (Vec<u8>, Vec<u8>) {
    let ny2 = ch.shape().y2;
    let mut y1 = Vec::with_capacity(x1.len());
    let mut y2 = Vec::with_capacity(x1.len());
    for (&a, &b) in x1.iter().zip(x2) {
        let law = WeightedIndex::new(ch.output_law(a as usize, b as usize)).expect("validated channel row");
        let k = law.sample(rng);
        y1.push((k / ny2) as u8);
        y2.push((k % ny2) as u8);
    }
    (y1, y2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub trial: u64,
    pub sent: Rx1Estimate,
    pub rx1: Option<Rx1Estimate>,
    pub rx2: Option<usize>,
    pub error1: bool,
    pub error2: bool,
    /// `P(w1, w2 | y2)`, `w2` fastest
    pub posterior: FiniteDistribution,
}

impl TrialOutcome {
    /// `H(W1, W2 | y2)` of this trial in bits.
    pub fn posterior_entropy(&self) -> f64 {
        self.posterior.entropy()
    }
}

fn draw_messages<R: Rng + ?Sized>(cb: &Codebook, rng: &mut R) -> Rx1Estimate {
    let s = cb.sizes();
    Rx1Estimate {
        w0: rng.gen_range(0..s.w0),
        w1: rng.gen_range(0..s.w1),
        w2: rng.gen_range(0..s.w2),
    }
}

fn observe(cb: &Codebook, ch: &DiscreteChannel, seed: u64, trial: u64) -> Result<(Rx1Estimate, Vec<u8>, Vec<u8>)> {
    let mut enc = stream_rng(seed, encoding_stream(trial));
    let sent = draw_messages(cb, &mut enc);
    let x = cb.encode(sent.w0, sent.w1, sent.w2, &mut enc)?;
    let mut noise = stream_rng(seed, noise_stream(trial));
    let (y1, y2) = transmit(ch, &x.x1, &x.x2, &mut noise);
    Ok((sent, y1, y2))
}

/// Runs trial `trial` of the code: uniform messages, stochastic encoding,
/// channel, both decoders and the exact eavesdropper posterior.
pub fn run_trial(cb: &Codebook, laws: &ReceiverLaws, ch: &DiscreteChannel, trial: u64) -> Result<TrialOutcome> {
    let (sent, y1, y2) = observe(cb, ch, cb.config().seed, trial)?;
    let eps = cb.config().typicality_eps;
    let rx1 = decode_rx1(cb, laws, &y1, eps)?;
    let rx2 = decode_rx2(cb, laws, &y2, eps)?;
    Ok(TrialOutcome {
        trial,
        sent,
        rx1,
        rx2,
        error1: rx1 != Some(sent),
        error2: rx2 != Some(sent.w0),
        posterior: posterior(cb, laws, &y2)?,
    })
}

/// Runs the trials with indices in `range`, in order.
pub fn run_trials(cb: &Codebook, ch: &DiscreteChannel, range: Range<u64>) -> Result<Vec<TrialOutcome>> {
    let laws = ReceiverLaws::new(cb, ch)?;
    range.map(|t| run_trial(cb, &laws, ch, t)).collect()
}

/// `(1/n)` times the trial average of `H(W1, W2 | y2)` over trials
/// `0..trials` drawn from the streams of `seed`.
pub fn equivocation_exact(cb: &Codebook, ch: &DiscreteChannel, trials: u64, seed: u64) -> Result<f64> {
    let laws = ReceiverLaws::new(cb, ch)?;
    let mut total = 0.0;
    for t in 0..trials {
        let (_, _, y2) = observe(cb, ch, seed, t)?;
        total += posterior(cb, &laws, &y2)?.entropy();
    }
    Ok(total / trials.max(1) as f64 / cb.n() as f64)
}

/// Aggregate of one simulation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSummary {
    pub n: usize,
    pub trials: u64,
    pub errors1: u64,
    pub errors2: u64,
    pub pe1: f64,
    pub pe2: f64,
    /// `(1/n) H(W1, W2 | Y2^n)` averaged over trials
    pub equivocation_bits_per_use: f64,
    /// `log2(|W1| |W2|) / n`
    pub private_rate: f64,
    /// `private_rate - equivocation_bits_per_use`
    pub secrecy_gap: f64,
    /// standard error of the equivocation estimate
    pub equivocation_std_error: f64,
}

/// Summarizes outcomes; sums run in trial-index order so that any
/// partition of the trials gives the same bits.
pub fn summarize(cb: &Codebook, outcomes: &[TrialOutcome]) -> RunSummary {
    summarize_ensemble(&[(cb, outcomes)])
}

/// Pools the outcomes of several codebooks of the same blocklength and
/// message sizes, in the given codebook order and trial-index order within
/// each codebook.
pub fn summarize_ensemble(parts: &[(&Codebook, &[TrialOutcome])]) -> RunSummary {
    let n = parts.first().map_or(1, |(cb, _)| cb.n());
    let private_rate = parts.first().map_or(0.0, |(cb, _)| cb.sizes().private_rate(n));
    let (mut errors1, mut errors2) = (0u64, 0u64);
    let mut per_use = Vec::new();
    for (_, outcomes) in parts {
        let mut sorted: Vec<&TrialOutcome> = outcomes.iter().collect();
        sorted.sort_by_key(|o| o.trial);
        for o in sorted {
            errors1 += u64::from(o.error1);
            errors2 += u64::from(o.error2);
            per_use.push(o.posterior_entropy() / n as f64);
        }
    }
    let trials = per_use.len() as u64;
    let denom = trials.max(1) as f64;
    let mean = per_use.iter().sum::<f64>() / denom;
    let var = if trials > 1 {
        per_use.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>() / (denom - 1.0)
    } else {
        0.0
    };
    RunSummary {
        n,
        trials,
        errors1,
        errors2,
        pe1: errors1 as f64 / denom,
        pe2: errors2 as f64 / denom,
        equivocation_bits_per_use: mean,
        private_rate,
        secrecy_gap: private_rate - mean,
        equivocation_std_error: sqrt(var / denom),
    }
}

/// Seed of codebook `k` of an ensemble built from `cfg`.
pub fn ensemble_seed(cfg: &CodeConfig, k: u64) -> u64 {
    cfg.seed.wrapping_add(k)
}

/// Averages over the random code ensemble: `codebooks` independent
/// codebooks seeded by [`ensemble_seed`], each used for
/// `trials_per_codebook` trials.
pub fn run_ensemble(
    cfg: &CodeConfig,
    ch: &DiscreteChannel,
    codebooks: u64,
    trials_per_codebook: u64,
) -> Result<RunSummary> {
    let mut books = Vec::new();
    let mut runs = Vec::new();
    for k in 0..codebooks {
        let mut c = cfg.clone();
        c.seed = ensemble_seed(cfg, k);
        let cb = generate_codebook(&c)?;
        runs.push(run_trials(&cb, ch, 0..trials_per_codebook)?);
        books.push(cb);
    }
    let parts: Vec<(&Codebook, &[TrialOutcome])> =
        books.iter().zip(&runs).map(|(b, r)| (b, r.as_slice())).collect();
    Ok(summarize_ensemble(&parts))
}
