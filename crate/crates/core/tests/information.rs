use mawc_core::dm::ChainInformation;
use mawc_core::info::random::{
    random_channel, random_inner_chain, random_outer_chain, ChainShape,
};
use mawc_core::info::{assemble_joint, ChannelShape, JointDistribution};
use proptest::prelude::*;
use rand::rngs::SmallRng;
use rand::SeedableRng;

const NAMES: [&str; 4] = ["A", "B", "C", "D"];

fn joint(weights: &[f64]) -> JointDistribution {
    let total: f64 = weights.iter().sum();
    let mass = weights.iter().map(|w| w / total).collect();
    let vars: Vec<(&str, usize)> = NAMES.iter().map(|n| (*n, 2)).collect();
    JointDistribution::new(&vars, mass).unwrap()
}

/// Non-empty disjoint groups `(a, b, c)` drawn from the four variables.
fn groups(assign: &[u8]) -> Option<(Vec<&'static str>, Vec<&'static str>, Vec<&'static str>)> {
    let pick = |k: u8| -> Vec<&'static str> {
        NAMES.iter().zip(assign).filter(|(_, g)| **g == k).map(|(n, _)| *n).collect()
    };
    let (a, b, c) = (pick(0), pick(1), pick(2));
    (!a.is_empty() && !b.is_empty() && !c.is_empty()).then_some((a, b, c))
}

fn shape_strategy() -> impl Strategy<Value = ChainShape> {
    (1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3)
        .prop_map(|(u, v1, v2, x1, x2)| ChainShape { u, v1, v2, x1, x2 })
}

proptest! {
    #[test]
    fn chain_rule_holds_on_binary_joints(
        weights in prop::collection::vec(0.0f64..1.0, 16),
        assign in prop::collection::vec(0u8..4, 4),
    ) {
        prop_assume!(weights.iter().sum::<f64>() > 1e-3);
        let j = joint(&weights);
        if let Some((a, b, c)) = groups(&assign) {
            let ab: Vec<&str> = a.iter().chain(&b).copied().collect();
            let lhs = j.mutual_information_raw(&ab, &c, &[]).unwrap();
            let rhs = j.mutual_information_raw(&a, &c, &[]).unwrap()
                + j.mutual_information_raw(&b, &c, &a).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-9, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn raw_mutual_information_is_not_negative(
        weights in prop::collection::vec(0.0f64..1.0, 16),
        assign in prop::collection::vec(0u8..4, 4),
    ) {
        prop_assume!(weights.iter().sum::<f64>() > 1e-3);
        let j = joint(&weights);
        let pick = |k: u8| -> Vec<&str> {
            NAMES.iter().zip(&assign).filter(|(_, g)| **g == k).map(|(n, _)| *n).collect()
        };
        let (a, b, c) = (pick(0), pick(1), pick(2));
        prop_assume!(!a.is_empty() && !b.is_empty());
        prop_assert!(j.mutual_information_raw(&a, &b, &c).unwrap() >= -1e-12);
    }

    #[test]
    fn processing_cannot_add_information(seed in any::<u64>(), outer in any::<bool>()) {
        let mut rng = SmallRng::seed_from_u64(seed);
        let shape = ChainShape::BINARY;
        let ch = random_channel(&mut rng, ChannelShape::new(2, 2, 3, 2)).unwrap();
        let aux = if outer {
            random_outer_chain(&mut rng, shape).unwrap()
        } else {
            random_inner_chain(&mut rng, shape).unwrap()
        };
        let info = ChainInformation::evaluate(&aux, &ch).unwrap();
        prop_assert!(info.u_y1 <= info.v12_y1 + 1e-9);
        let j = assemble_joint(&aux, &ch).unwrap();
        let direct = j.mutual_information(&["U"], &["Y1"], &[]).unwrap();
        let through = j.mutual_information(&["V1", "V2"], &["Y1"], &[]).unwrap();
        prop_assert!(direct <= through + 1e-9);
        prop_assert!((direct - info.u_y1).abs() <= 1e-12);
    }

    #[test]
    fn assembled_joint_reproduces_auxiliary_law(seed in any::<u64>(), shape in shape_strategy()) {
        let mut rng = SmallRng::seed_from_u64(seed);
        let ch = random_channel(&mut rng, ChannelShape::new(shape.x1, shape.x2, 2, 2)).unwrap();
        let aux = random_inner_chain(&mut rng, shape).unwrap();
        let j = assemble_joint(&aux, &ch).unwrap();
        let m = j.marginal(&["U", "V1", "V2"]).unwrap();
        let mut k = 0;
        for u in 0..shape.u {
            for v1 in 0..shape.v1 {
                for v2 in 0..shape.v2 {
                    let p = aux.p_u().probs()[u] * aux.p_v_given_u(u, v1, v2);
                    prop_assert!((m.mass()[k] - p).abs() <= 1e-12);
                    k += 1;
                }
            }
        }
    }
}
