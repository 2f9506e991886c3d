//! Finite distributions, channels and exact information measures.
//!
//! Everything is dense: alphabets never exceed [`MAX_ALPHABET`] symbols, so
//! a full joint over seven variables has at most `4^7` cells.

mod chain;
mod channel;
mod distribution;
mod joint;
pub mod random;

pub use chain::{
    assemble_joint, AuxiliaryChain, ChainClass, FULL_VARS, MAX_AUX_ALPHABET, OUTPUT_VARS,
};
pub use channel::{ChannelShape, DiscreteChannel};
pub use distribution::{
    entropy, ConditionalTable, FiniteDistribution, MAX_ALPHABET, NORMALIZATION_TOL,
};
pub use joint::{
    mutual_information, InfoEvaluator, JointDistribution, TableLayout, VarMask, MI_CLAMP_TOL,
    NEGLIGIBLE_EVENT,
};

#[cfg(test)]
mod tests {
    use super::random::{random_channel, random_inner_chain, ChainShape};
    use super::*;
    use crate::error::Error;
    use rand::rngs::SmallRng;
    use rand::SeedableRng;

    fn unit() -> ConditionalTable {
        ConditionalTable::identity(1).unwrap()
    }

    #[test]
    fn degenerate_alphabets_give_point_mass() {
        let ch = DiscreteChannel::new(ChannelShape::new(1, 1, 1, 1), vec![1.0]).unwrap();
        let aux = AuxiliaryChain::inner(
            FiniteDistribution::point_mass(1, 0).unwrap(),
            unit(),
            unit(),
            unit(),
            unit(),
        )
        .unwrap();
        let j = assemble_joint(&aux, &ch).unwrap();
        assert_eq!(j.mass(), &[1.0]);
        assert_eq!(j.names().len(), 7);
    }

    #[test]
    fn noiseless_chain_transfers_entropy() {
        // Y1 = X1, Y2 = X2, V = X.
        let shape = ChannelShape::new(2, 2, 2, 2);
        let ch = DiscreteChannel::from_fn(shape, |x1, x2, y1, y2| {
            f64::from(u8::from(x1 == y1 && x2 == y2))
        })
        .unwrap();
        let aux = AuxiliaryChain::inner(
            FiniteDistribution::uniform(1).unwrap(),
            ConditionalTable::new(1, 2, vec![0.3, 0.7]).unwrap(),
            ConditionalTable::new(1, 2, vec![0.5, 0.5]).unwrap(),
            ConditionalTable::identity(2).unwrap(),
            ConditionalTable::identity(2).unwrap(),
        )
        .unwrap();
        let j = assemble_joint(&aux, &ch).unwrap();
        let i = j.mutual_information(&["V1"], &["Y1"], &[]).unwrap();
        let h = j.entropy(&["X1"]).unwrap();
        assert!((i - h).abs() < 1e-14);
    }

    #[test]
    fn input_marginal_matches_brute_force() {
        let mut rng = SmallRng::seed_from_u64(7);
        let ch = random_channel(&mut rng, ChannelShape::new(2, 2, 2, 2)).unwrap();
        let aux = random_inner_chain(&mut rng, ChainShape::BINARY).unwrap();
        let j = assemble_joint(&aux, &ch).unwrap();
        let m = j.marginal(&["X1", "X2", "Y1", "Y2"]).unwrap();
        // brute force over all 2^7 outcomes
        let mut expected = [0.0f64; 16];
        for outcome in 0..128usize {
            let bit = |k: usize| (outcome >> (6 - k)) & 1;
            let (u, v1, v2, x1, x2, y1, y2) = (bit(0), bit(1), bit(2), bit(3), bit(4), bit(5), bit(6));
            let p = aux.p_u().probs()[u]
                * aux.v1_given_u().unwrap().get(u, v1)
                * aux.v2_given_u().unwrap().get(u, v2)
                * aux.x1_given_v1().get(v1, x1)
                * aux.x2_given_v2().get(v2, x2)
                * ch.prob(x1, x2, y1, y2);
            expected[((x1 * 2 + x2) * 2 + y1) * 2 + y2] += p;
        }
        for (a, b) in m.mass().iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn chain_marginal_reproduces_auxiliary_law() {
        let mut rng = SmallRng::seed_from_u64(11);
        let ch = random_channel(&mut rng, ChannelShape::new(2, 3, 2, 2)).unwrap();
        let shape = ChainShape {
            u: 3,
            v1: 2,
            v2: 3,
            x1: 2,
            x2: 3,
        };
        let aux = random_inner_chain(&mut rng, shape).unwrap();
        let j = assemble_joint(&aux, &ch).unwrap();
        let m = j.marginal(&["U", "V1", "V2"]).unwrap();
        let mut k = 0;
        for u in 0..3 {
            for v1 in 0..2 {
                for v2 in 0..3 {
                    let p = aux.p_u().probs()[u] * aux.p_v_given_u(u, v1, v2);
                    assert!((m.mass()[k] - p).abs() < 1e-12);
                    k += 1;
                }
            }
        }
    }

    #[test]
    fn output_joint_matches_full_marginal() {
        let mut rng = SmallRng::seed_from_u64(3);
        let ch = random_channel(&mut rng, ChannelShape::new(2, 2, 3, 2)).unwrap();
        let aux = random_inner_chain(&mut rng, ChainShape::BINARY).unwrap().to_outer();
        let full = aux.assemble_joint(&ch).unwrap();
        let reduced = aux.output_joint(&ch).unwrap();
        let m = full.marginal(&OUTPUT_VARS).unwrap();
        for (a, b) in m.mass().iter().zip(reduced.mass()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let ch = DiscreteChannel::new(ChannelShape::new(2, 1, 1, 1), vec![1.0, 1.0]).unwrap();
        let aux = AuxiliaryChain::inner(
            FiniteDistribution::uniform(1).unwrap(),
            unit(),
            unit(),
            unit(),
            unit(),
        )
        .unwrap();
        assert!(matches!(
            assemble_joint(&aux, &ch),
            Err(Error::DimensionMismatch { .. })
        ));
        let too_big = AuxiliaryChain::inner(
            FiniteDistribution::uniform(4).unwrap(),
            ConditionalTable::identity(4).unwrap(),
            ConditionalTable::identity(4).unwrap(),
            ConditionalTable::identity(4).unwrap(),
            ConditionalTable::identity(4).unwrap(),
        );
        assert!(matches!(too_big, Err(Error::AlphabetTooLarge { max: 3, .. })));
    }
}
