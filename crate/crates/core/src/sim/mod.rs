//! Small-blocklength random binning simulator.
//!
//! A code is a superposition codebook: `u` cloud centers carry the common
//! message, and each user's satellite codewords are split into bins, one bin
//! per private message. Receiver 1 decodes everything by strong joint
//! typicality, receiver 2 only the common message, and the eavesdropper's
//! uncertainty about the private pair is computed exactly from the posterior
//! over all codewords.

mod codebook;
mod config;
mod decode;
pub mod stats;
mod trial;

pub use codebook::{encode, generate_codebook, stream_rng, Codebook, Encoded, CODEBOOK_STREAM};
pub use config::{
    message_count, CodeConfig, MessageSizes, SimRates, DEFAULT_ENUMERATION_CAP, DEFAULT_MEMORY_CAP,
    DEFAULT_TYPICALITY_EPS, MAX_BLOCKLENGTH,
};
pub use decode::{
    decode_rx1, decode_rx2, is_strongly_typical, posterior, ReceiverLaws, Rx1Estimate,
};
pub use trial::{
    encoding_stream, ensemble_seed, equivocation_exact, noise_stream, run_ensemble, run_trial,
    run_trials, summarize, summarize_ensemble, transmit, RunSummary, TrialOutcome,
};

use crate::dm::ChainInformation;
use crate::error::Result;
use crate::info::{AuxiliaryChain, ChannelShape, ConditionalTable, DiscreteChannel, FiniteDistribution};

/// Two binary inputs seen through independent bit flips: receiver 1 gets
/// both bits flipped with probability `main_flip` each, the eavesdropper
/// with `eve_flip` each. Outputs are 4-ary, `2 b1 + b2`.
pub fn binary_test_channel(main_flip: f64, eve_flip: f64) -> Result<DiscreteChannel> {
    let pair = |flip: f64, x1: usize, x2: usize, y: usize| {
        let bit = |x: usize, b: usize| if x == b { 1.0 - flip } else { flip };
        bit(x1, y >> 1) * bit(x2, y & 1)
    };
    DiscreteChannel::from_marginals(
        ChannelShape::new(2, 2, 4, 4),
        |x1, x2, y| pair(main_flip, x1, x2, y),
        |x1, x2, y| pair(eve_flip, x1, x2, y),
    )
}

/// Receiver 1 sees `(X1, X2)` noiselessly as `2 x1 + x2`; the eavesdropper
/// sees the integer sum `X1 + X2` moved to a neighboring value with
/// probability `eve_error` (split evenly when the sum is 1).
pub fn adder_wiretap_channel(eve_error: f64) -> Result<DiscreteChannel> {
    DiscreteChannel::from_marginals(
        ChannelShape::new(2, 2, 4, 3),
        |x1, x2, y| f64::from(u8::from(y == 2 * x1 + x2)),
        |x1, x2, y| {
            let sum = x1 + x2;
            match (sum, y) {
                _ if y == sum => 1.0 - eve_error,
                (1, _) => eve_error / 2.0,
                _ if y.abs_diff(sum) == 1 => eve_error,
                _ => 0.0,
            }
        },
    )
}

/// `U` uniform binary, `V_k = U xor Bern(mix)`, `X_k = V_k`.
pub fn binary_test_chain(mix: f64) -> Result<AuxiliaryChain> {
    let row = ConditionalTable::new(2, 2, alloc::vec![1.0 - mix, mix, mix, 1.0 - mix])?;
    AuxiliaryChain::inner(
        FiniteDistribution::uniform(2)?,
        row.clone(),
        row,
        ConditionalTable::identity(2)?,
        ConditionalTable::identity(2)?,
    )
}

/// Bin rates `(R1p, R2p)` whose sum is the eavesdropper's total leakage
/// `I(V1V2;Y2|U)`, split in proportion to the single-user leakages
/// `I(V1;Y2|V2U)` and `I(V2;Y2|V1U)`.
pub fn proportional_bin_rates(aux: &AuxiliaryChain, ch: &DiscreteChannel) -> Result<(f64, f64)> {
    let info = ChainInformation::evaluate(aux, ch)?;
    let (l1, l2) = (info.v1_y2_v2u, info.v2_y2_v1u);
    let total = info.v12_y2_u;
    if l1 + l2 <= 0.0 {
        return Ok((0.0, 0.0));
    }
    let r1p = total * l1 / (l1 + l2);
    Ok((r1p, total - r1p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::info::ChainClass;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn uniform_bits_chain() -> AuxiliaryChain {
        let half = ConditionalTable::new(1, 2, alloc::vec![0.5, 0.5]).unwrap();
        AuxiliaryChain::inner(
            FiniteDistribution::uniform(1).unwrap(),
            half.clone(),
            half,
            ConditionalTable::identity(2).unwrap(),
            ConditionalTable::identity(2).unwrap(),
        )
        .unwrap()
    }

    /// Y1 = (X1, X2) noiselessly; Y2 is either pure noise or also (X1, X2).
    fn noiseless_main(eve_sees_inputs: bool) -> DiscreteChannel {
        DiscreteChannel::from_marginals(
            ChannelShape::new(2, 2, 4, 4),
            |x1, x2, y| f64::from(u8::from(y == 2 * x1 + x2)),
            move |x1, x2, y| {
                if eve_sees_inputs {
                    f64::from(u8::from(y == 2 * x1 + x2))
                } else {
                    0.25
                }
            },
        )
        .unwrap()
    }

    fn rates(r0: f64, r1: f64, r2: f64, r1p: f64, r2p: f64) -> SimRates {
        SimRates { r0, r1, r2, r1p, r2p }
    }

    fn distinct(words: &[&[u8]]) -> bool {
        (0..words.len()).all(|i| (0..i).all(|j| words[i] != words[j]))
    }

    /// First seed from 0 whose satellite codewords are pairwise distinct.
    fn distinct_codebook(mut cfg: CodeConfig) -> Codebook {
        for seed in 0.. {
            cfg.seed = seed;
            let cb = generate_codebook(&cfg).unwrap();
            let s = *cb.sizes();
            let v1: Vec<&[u8]> = (0..s.w1).map(|w| cb.v1_word(0, w, 0)).collect();
            let v2: Vec<&[u8]> = (0..s.w2).map(|w| cb.v2_word(0, w, 0)).collect();
            if distinct(&v1) && distinct(&v2) {
                return cb;
            }
        }
        unreachable!()
    }

    fn trend_setup(n: usize, r: SimRates) -> (Codebook, DiscreteChannel) {
        let cfg = CodeConfig::new(n, r, binary_test_chain(0.1).unwrap(), 2024);
        (generate_codebook(&cfg).unwrap(), binary_test_channel(0.01, 0.2).unwrap())
    }

    #[test]
    fn message_counts_round_down() {
        assert_eq!(message_count(4, 0.25), 2);
        assert_eq!(message_count(12, 0.25), 8);
        assert_eq!(message_count(4, 0.1), 1);
        assert_eq!(message_count(4, 0.0), 1);
        assert_eq!(message_count(10, 0.3), 8);
        assert_eq!(message_count(16, 200.0), u128::MAX);
    }

    #[test]
    fn invalid_configurations_rejected() {
        let aux = uniform_bits_chain();
        let mut cfg = CodeConfig::new(17, SimRates::default(), aux.clone(), 0);
        assert!(matches!(cfg.sizes(), Err(Error::InvalidParameter { name: "blocklength", .. })));
        cfg.n = 4;
        cfg.typicality_eps = 0.0;
        assert!(matches!(cfg.sizes(), Err(Error::InvalidParameter { name: "typicality_eps", .. })));
        cfg.typicality_eps = 0.1;
        cfg.rates.r1 = -0.1;
        assert!(cfg.sizes().is_err());
        cfg.rates.r1 = 4.0;
        cfg.memory_cap = 1000;
        assert!(matches!(generate_codebook(&cfg), Err(Error::MemoryCapExceeded { needed: 65_537, cap: 1000 })));
        cfg.aux = aux.to_outer();
        assert_eq!(cfg.aux.class(), ChainClass::Outer);
        cfg.rates.r1 = 0.5;
        assert!(matches!(cfg.sizes(), Err(Error::OuterChainForInnerBound)));
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let mut cfg = CodeConfig::new(8, rates(0.0, 0.5, 0.5, 0.0, 0.0), uniform_bits_chain(), 1);
        cfg.enumeration_cap = 255;
        let cb = generate_codebook(&cfg).unwrap();
        let ch = noiseless_main(false);
        let laws = ReceiverLaws::new(&cb, &ch).unwrap();
        let y = [0u8; 8];
        assert!(matches!(
            posterior(&cb, &laws, &y),
            Err(Error::EnumerationCapExceeded { needed: 256, cap: 255 })
        ));
        assert!(decode_rx1(&cb, &laws, &y, 0.1).is_err());
        assert!(equivocation_exact(&cb, &ch, 1, 0).is_err());
    }

    #[test]
    fn degenerate_cloud_alphabet_repeats_the_center() {
        let cfg = CodeConfig::new(6, rates(0.5, 0.0, 0.0, 0.0, 0.0), uniform_bits_chain(), 3);
        let cb = generate_codebook(&cfg).unwrap();
        assert_eq!(cb.sizes().w0, 8);
        for w0 in 0..8 {
            assert_eq!(cb.u_word(w0), &[0u8; 6]);
        }
    }

    #[test]
    fn codebooks_are_reproducible() {
        let cfg = CodeConfig::new(8, rates(0.25, 0.25, 0.25, 0.125, 0.125), binary_test_chain(0.1).unwrap(), 99);
        let a = generate_codebook(&cfg).unwrap();
        assert_eq!(a, generate_codebook(&cfg).unwrap());
        let mut other = cfg.clone();
        other.seed = 100;
        assert_ne!(a, generate_codebook(&other).unwrap());
    }

    #[test]
    fn satellite_symbols_follow_the_conditional_law() {
        // 2 clouds x 320 satellites x 16 symbols = 10240 draws
        let r1 = libm::log2(320.0) / 16.0;
        let cfg = CodeConfig::new(16, rates(1.0 / 16.0, r1, 0.0, 0.0, 0.0), binary_test_chain(0.3).unwrap(), 5);
        let cb = generate_codebook(&cfg).unwrap();
        assert_eq!((cb.sizes().w0, cb.sizes().w1), (2, 320));
        let mut ones = [0u64; 2];
        let mut total = [0u64; 2];
        for w0 in 0..2 {
            let u = cb.u_word(w0);
            for w1 in 0..320 {
                for (&c, &v) in u.iter().zip(cb.v1_word(w0, w1, 0)) {
                    total[c as usize] += 1;
                    ones[c as usize] += u64::from(v);
                }
            }
        }
        for u in 0..2 {
            let p = if u == 0 { 0.3 } else { 0.7 };
            let n = total[u] as f64;
            let sigma = (n * p * (1.0 - p)).sqrt();
            assert!(n > 0.0);
            assert!((ones[u] as f64 - n * p).abs() <= 3.0 * sigma, "u={u}: {} of {n}", ones[u]);
        }
    }

    #[test]
    fn encoder_selects_and_maps_codewords() {
        let cfg = CodeConfig::new(4, rates(0.0, 0.5, 0.5, 0.0, 0.0), uniform_bits_chain(), 8);
        let cb = generate_codebook(&cfg).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for w1 in 0..4 {
            let e = cb.encode(0, w1, 3 - w1, &mut rng).unwrap();
            assert_eq!((e.q1, e.q2), (0, 0));
            assert_eq!(e.x1, cb.v1_word(0, w1, 0));
            assert_eq!(e.x2, cb.v2_word(0, 3 - w1, 0));
        }
        assert!(matches!(
            encode(&cb, 0, 4, 0, &mut rng),
            Err(Error::MessageOutOfRange { which: "w1", index: 4, count: 4 })
        ));
        assert!(matches!(
            cb.encode(1, 0, 0, &mut rng),
            Err(Error::MessageOutOfRange { which: "w0", .. })
        ));
    }

    #[test]
    fn bin_choices_are_uniform() {
        let cfg = CodeConfig::new(4, rates(0.0, 0.0, 0.0, 0.5, 0.5), uniform_bits_chain(), 8);
        let cb = generate_codebook(&cfg).unwrap();
        assert_eq!(cb.sizes().q1, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut counts = [[0u32; 4]; 2];
        let draws = 10_000;
        for _ in 0..draws {
            let e = cb.encode(0, 0, 0, &mut rng).unwrap();
            counts[0][e.q1] += 1;
            counts[1][e.q2] += 1;
        }
        let sigma = (draws as f64 * 0.25 * 0.75).sqrt();
        for c in counts.iter().flatten() {
            assert!((*c as f64 - 2500.0).abs() <= 3.0 * sigma, "{counts:?}");
        }
    }

    #[test]
    fn noiseless_main_channel_decodes_every_trial() {
        let mut cfg = CodeConfig::new(4, rates(0.0, 0.5, 0.5, 0.0, 0.0), uniform_bits_chain(), 0);
        cfg.typicality_eps = 1.0;
        let cb = distinct_codebook(cfg);
        let ch = noiseless_main(false);
        let outcomes = run_trials(&cb, &ch, 0..1000).unwrap();
        let s = summarize(&cb, &outcomes);
        assert_eq!((s.errors1, s.errors2), (0, 0));
        // the eavesdropper learns nothing: the posterior stays uniform
        assert!((s.private_rate - 1.0).abs() < 1e-15);
        assert!((s.equivocation_bits_per_use - 1.0).abs() < 1e-12);
        assert!(s.secrecy_gap.abs() < 1e-12);
    }

    #[test]
    fn revealing_eavesdropper_has_no_equivocation() {
        let cfg = CodeConfig::new(4, rates(0.0, 0.5, 0.5, 0.0, 0.0), uniform_bits_chain(), 0);
        let cb = distinct_codebook(cfg);
        let ch = noiseless_main(true);
        let e = equivocation_exact(&cb, &ch, 200, 42).unwrap();
        assert!(e.abs() < 1e-12, "{e}");
    }

    #[test]
    fn zero_slack_rejects_noisy_observations() {
        let (cb, ch) = trend_setup(12, rates(0.25, 0.25, 0.25, 0.1, 0.1));
        let laws = ReceiverLaws::new(&cb, &ch).unwrap();
        let mut failures = 0;
        for t in 0..200 {
            let mut enc = stream_rng(1, encoding_stream(t));
            let e = cb.encode(0, 0, 0, &mut enc).unwrap();
            let (y1, _) = transmit(&ch, &e.x1, &e.x2, &mut stream_rng(1, noise_stream(t)));
            if decode_rx1(&cb, &laws, &y1, 0.0).unwrap().is_none() {
                failures += 1;
            }
        }
        assert!(failures >= 190, "{failures}");
    }

    #[test]
    fn single_common_message_is_always_decoded() {
        let (cb, ch) = trend_setup(8, rates(0.0, 0.25, 0.25, 0.1, 0.1));
        assert_eq!(cb.sizes().w0, 1);
        let s = summarize(&cb, &run_trials(&cb, &ch, 0..100).unwrap());
        assert_eq!(s.errors2, 0);
    }

    #[test]
    fn overloaded_common_rate_fails_at_the_eavesdropper() {
        let (cb, ch) = trend_setup(12, rates(1.0, 0.0, 0.0, 0.0, 0.0));
        assert_eq!(cb.sizes().w0, 4096);
        let laws = ReceiverLaws::new(&cb, &ch).unwrap();
        let mut errors = 0;
        for t in 0..200 {
            let o = run_trial(&cb, &laws, &ch, t).unwrap();
            errors += u32::from(o.error2);
        }
        assert!(errors >= 180, "{errors}");
    }

    #[test]
    fn posteriors_are_normalized_and_bounded() {
        let (cb, ch) = trend_setup(8, rates(0.25, 0.25, 0.25, 0.125, 0.125));
        let outcomes = run_trials(&cb, &ch, 0..50).unwrap();
        for o in &outcomes {
            let sum: f64 = o.posterior.probs().iter().sum();
            assert!((sum - 1.0).abs() < 1e-9);
            assert_eq!(o.posterior.len(), cb.sizes().w1 * cb.sizes().w2);
        }
        let s = summarize(&cb, &outcomes);
        assert!(s.equivocation_bits_per_use >= 0.0);
        assert!(s.equivocation_bits_per_use <= s.private_rate + 1e-9);
    }

    #[test]
    fn runs_are_deterministic_and_partition_invariant() {
        let (cb, ch) = trend_setup(8, rates(0.25, 0.25, 0.25, 0.125, 0.125));
        let whole = summarize(&cb, &run_trials(&cb, &ch, 0..60).unwrap());
        let again = summarize(&cb, &run_trials(&cb, &ch, 0..60).unwrap());
        assert_eq!(whole, again);
        let mut parts = run_trials(&cb, &ch, 30..60).unwrap();
        parts.extend(run_trials(&cb, &ch, 0..30).unwrap());
        let split = summarize(&cb, &parts);
        assert_eq!(whole.equivocation_bits_per_use.to_bits(), split.equivocation_bits_per_use.to_bits());
        assert_eq!(whole, split);
    }

    #[test]
    fn adder_eavesdropper_law() {
        let ch = adder_wiretap_channel(0.1).unwrap();
        assert!((ch.eve_marginal(0, 0, 0) - 0.9).abs() < 1e-15);
        assert!((ch.eve_marginal(0, 0, 1) - 0.1).abs() < 1e-15);
        assert_eq!(ch.eve_marginal(0, 0, 2), 0.0);
        assert!((ch.eve_marginal(1, 0, 0) - 0.05).abs() < 1e-15);
        assert!((ch.eve_marginal(0, 1, 2) - 0.05).abs() < 1e-15);
        assert!((ch.eve_marginal(1, 1, 1) - 0.1).abs() < 1e-15);
        assert_eq!(ch.main_marginal(1, 0, 2), 1.0);
    }

    #[test]
    fn ensemble_pools_codebooks_in_order() {
        let cfg = CodeConfig::new(4, rates(0.25, 0.25, 0.25, 0.25, 0.25), binary_test_chain(0.2).unwrap(), 40);
        let ch = adder_wiretap_channel(0.1).unwrap();
        let pooled = run_ensemble(&cfg, &ch, 3, 20).unwrap();
        assert_eq!(pooled.trials, 60);
        let mut errors = 0;
        let mut entropy = 0.0;
        for k in 0..3 {
            let mut c = cfg.clone();
            c.seed = 40 + k;
            let cb = generate_codebook(&c).unwrap();
            let s = summarize(&cb, &run_trials(&cb, &ch, 0..20).unwrap());
            errors += s.errors1;
            entropy += s.equivocation_bits_per_use * 20.0;
        }
        assert_eq!(pooled.errors1, errors);
        assert!((pooled.equivocation_bits_per_use - entropy / 60.0).abs() < 1e-12);
    }

    #[test]
    fn proportion_tests() {
        use stats::*;
        assert_eq!(proportion_increase_z(0, 100, 0, 100), 0.0);
        assert!(significant_increase(proportion_increase_z(10, 1000, 60, 1000)));
        assert!(!significant_increase(proportion_increase_z(60, 1000, 10, 1000)));
        assert!(!significant_increase(proportion_increase_z(50, 1000, 55, 1000)));
        assert!(significant_increase(mean_increase_z(0.1, 0.01, 0.2, 0.01)));
        assert_eq!(mean_increase_z(0.1, 0.0, 0.1, 0.0), 0.0);
    }

    #[test]
    fn bin_rates_split_the_eavesdropper_leakage() {
        let aux = binary_test_chain(0.2).unwrap();
        let ch = adder_wiretap_channel(0.11).unwrap();
        let (r1p, r2p) = proportional_bin_rates(&aux, &ch).unwrap();
        let info = ChainInformation::evaluate(&aux, &ch).unwrap();
        assert!((r1p + r2p - info.v12_y2_u).abs() < 1e-12);
        // symmetric chain on a symmetric eavesdropper
        assert!((r1p - r2p).abs() < 1e-12);
        let blind = binary_test_channel(0.0, 0.5).unwrap();
        let (b1, b2) = proportional_bin_rates(&aux, &blind).unwrap();
        assert!(b1.abs() < 1e-12 && b2.abs() < 1e-12);
    }
}
