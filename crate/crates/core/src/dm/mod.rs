//! Discrete-memoryless bounds: per-chain evaluation of the achievable region
//! and the outer bound, grid sweeps over auxiliary chains, and the
//! Fourier–Motzkin re-derivation of the achievable region.

mod bounds;
mod fm;
mod grid;
mod sweep;

pub use bounds::{
    inner_bounds, inner_corner_triples, outer_bounds, outer_corner_triples, ChainInformation,
};
pub use fm::{
    achievability_system, compare_with_direct, fm_check, project_achievability, FmComparison,
    RAW_VARIABLES,
};
pub use grid::{simplex_grid, ChainGrid, GridSpec, InputMaps, DEFAULT_CHAIN_CAP};
pub use sweep::{bound_kind, sweep_range, sweep_region};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::geometry::{RateBounds, RateTriple, Retention};
    use crate::info::random::{random_channel, random_degraded_channel, random_inner_chain, ChainShape};
    use crate::info::{
        AuxiliaryChain, ChainClass, ChannelShape, ConditionalTable, DiscreteChannel,
        FiniteDistribution,
    };
    use rand::rngs::SmallRng;
    use rand::SeedableRng;

    const EXACT: f64 = 1e-12;

    fn bsc(flip: f64) -> impl Fn(usize, usize) -> f64 {
        move |x, y| if x == y { 1.0 - flip } else { flip }
    }

    /// Y1 = (X1, X2) noiselessly, Y2 uniform and independent of the inputs.
    fn clear_main_noise_eve() -> DiscreteChannel {
        DiscreteChannel::from_marginals(
            ChannelShape::new(2, 2, 4, 2),
            |x1, x2, y1| f64::from(u8::from(y1 == 2 * x1 + x2)),
            |_, _, _| 0.5,
        )
        .unwrap()
    }

    /// Both receivers see the same output of a noisy binary adder.
    fn shared_output() -> DiscreteChannel {
        let main = |x1: usize, x2: usize, y: usize| bsc(0.1)(x1 ^ x2, y);
        DiscreteChannel::from_fn(ChannelShape::new(2, 2, 2, 2), |x1, x2, y1, y2| {
            if y1 == y2 {
                main(x1, x2, y1)
            } else {
                0.0
            }
        })
        .unwrap()
    }

    fn assert_close(a: Option<f64>, b: f64, what: &str) {
        let a = a.unwrap();
        assert!((a - b).abs() <= EXACT, "{what}: {a} vs {b}");
    }

    #[test]
    fn identical_outputs_leave_only_common_rate() {
        let ch = shared_output();
        let mut rng = SmallRng::seed_from_u64(21);
        for _ in 0..20 {
            let aux = random_inner_chain(&mut rng, ChainShape::BINARY).unwrap();
            for v in inner_corner_triples(&aux, &ch).unwrap() {
                assert_eq!((v.r1, v.r2), (0.0, 0.0));
            }
            for v in outer_corner_triples(&aux.to_outer(), &ch).unwrap() {
                assert_eq!((v.r1, v.r2), (0.0, 0.0));
            }
        }
    }

    #[test]
    fn constant_chain_has_only_origin() {
        let ch = clear_main_noise_eve();
        let one = ConditionalTable::new(1, 2, vec![1.0, 0.0]).unwrap();
        let aux = AuxiliaryChain::inner(
            FiniteDistribution::uniform(1).unwrap(),
            ConditionalTable::identity(1).unwrap(),
            ConditionalTable::identity(1).unwrap(),
            one.clone(),
            one,
        )
        .unwrap();
        assert_eq!(inner_corner_triples(&aux, &ch).unwrap(), vec![RateTriple::ORIGIN]);
    }

    #[test]
    fn clear_main_channel_gives_one_private_bit() {
        let ch = clear_main_noise_eve();
        let half = ConditionalTable::new(1, 2, vec![0.5, 0.5]).unwrap();
        let aux = AuxiliaryChain::inner(
            FiniteDistribution::uniform(1).unwrap(),
            half.clone(),
            half,
            ConditionalTable::identity(2).unwrap(),
            ConditionalTable::identity(2).unwrap(),
        )
        .unwrap();
        let b = inner_bounds(&aux, &ch).unwrap();
        assert_close(b.r1, 1.0, "R1");
        assert_close(b.r12, 2.0, "R1+R2");
        assert_close(b.r0, 0.0, "R0");
    }

    #[test]
    fn outer_chain_rejected_for_inner_bound() {
        let ch = clear_main_noise_eve();
        let mut rng = SmallRng::seed_from_u64(1);
        let aux = random_inner_chain(&mut rng, ChainShape::BINARY).unwrap().to_outer();
        assert!(matches!(inner_bounds(&aux, &ch), Err(Error::OuterChainForInnerBound)));
    }

    #[test]
    fn degenerate_second_auxiliary_gives_confidential_broadcast_form() {
        let mut rng = SmallRng::seed_from_u64(5);
        let shape = ChainShape {
            u: 2,
            v1: 3,
            v2: 1,
            x1: 2,
            x2: 2,
        };
        for _ in 0..20 {
            let ch = random_channel(&mut rng, ChannelShape::new(2, 2, 2, 3)).unwrap();
            let aux = crate::info::random::random_outer_chain(&mut rng, shape).unwrap();
            let j = aux.assemble_joint(&ch).unwrap();
            let mi = |a: &[&str], b: &[&str], c: &[&str]| j.mutual_information(a, b, c).unwrap();
            let b = ChainInformation::evaluate(&aux, &ch).unwrap().outer_bounds();
            let r0 = mi(&["U"], &["Y1"], &[]).min(mi(&["U"], &["Y2"], &[]));
            let r1 = mi(&["V1"], &["Y1"], &["U"]) - mi(&["V1"], &["Y2"], &["U"]);
            assert_close(b.r0, r0, "R0");
            assert_close(b.r1, r1, "R1");
            assert_close(b.r2, 0.0, "R2");
            assert_close(b.r12, r1, "R1+R2");
            let r01 = mi(&["V1"], &["Y1"], &[]) - mi(&["V1"], &["Y2"], &["U"]);
            assert_close(b.r012, r01, "R0+R1");
        }
    }

    #[test]
    fn degenerate_common_auxiliary_gives_mac_wiretap_form() {
        let mut rng = SmallRng::seed_from_u64(6);
        let shape = ChainShape {
            u: 1,
            v1: 2,
            v2: 3,
            x1: 2,
            x2: 3,
        };
        for _ in 0..20 {
            let ch = random_channel(&mut rng, ChannelShape::new(2, 3, 2, 2)).unwrap();
            let r = random_inner_chain(&mut rng, shape).unwrap();
            let aux = AuxiliaryChain::inner(
                r.p_u().clone(),
                r.v1_given_u().unwrap().clone(),
                r.v2_given_u().unwrap().clone(),
                ConditionalTable::identity(2).unwrap(),
                ConditionalTable::identity(3).unwrap(),
            )
            .unwrap();
            let j = aux.assemble_joint(&ch).unwrap();
            let mi = |a: &[&str], b: &[&str], c: &[&str]| j.mutual_information(a, b, c).unwrap();
            let b = ChainInformation::evaluate(&aux, &ch).unwrap().inner_bounds();
            let sum = mi(&["X1", "X2"], &["Y1"], &[]) - mi(&["X1", "X2"], &["Y2"], &[]);
            assert_close(b.r0, 0.0, "R0");
            assert_close(b.r1, mi(&["X1"], &["Y1"], &["X2"]) - mi(&["X1"], &["Y2"], &[]), "R1");
            assert_close(b.r2, mi(&["X2"], &["Y1"], &["X1"]) - mi(&["X2"], &["Y2"], &[]), "R2");
            assert_close(b.r12, sum, "R1+R2");
            assert_close(b.r012, sum, "R0+R1+R2");
        }
    }

    #[test]
    fn sum_bound_forms_coincide_under_markov_chain() {
        let mut rng = SmallRng::seed_from_u64(8);
        for _ in 0..50 {
            let ch = random_channel(&mut rng, ChannelShape::new(2, 2, 2, 2)).unwrap();
            let aux = random_inner_chain(&mut rng, ChainShape::BINARY).unwrap();
            let info = ChainInformation::evaluate(&aux, &ch).unwrap();
            assert!((info.uv12_y1 - info.v12_y1).abs() <= EXACT);
        }
    }

    #[test]
    fn sum_bounds_agree_between_inner_and_outer_per_chain() {
        // Only the sum rows share a form; the single-user rows need not nest.
        let mut rng = SmallRng::seed_from_u64(9);
        let mut single_user_exceed = 0;
        for _ in 0..200 {
            let ch = random_channel(&mut rng, ChannelShape::new(2, 2, 2, 2)).unwrap();
            let aux = random_inner_chain(&mut rng, ChainShape::BINARY).unwrap();
            let i = inner_bounds(&aux, &ch).unwrap();
            let o = outer_bounds(&aux, &ch).unwrap();
            assert_eq!(i.r12, o.r12);
            assert_eq!(i.r012, o.r012);
            if i.r1.unwrap() > o.r1.unwrap() + 1e-9 {
                single_user_exceed += 1;
            }
        }
        assert!(single_user_exceed > 0);
    }

    #[test]
    fn fm_projection_reproduces_direct_polytope() {
        let mut rng = SmallRng::seed_from_u64(10);
        for _ in 0..20 {
            let ch = random_degraded_channel(&mut rng, ChannelShape::new(2, 2, 2, 2)).unwrap();
            let aux = random_inner_chain(&mut rng, ChainShape::BINARY).unwrap();
            let cmp = fm_check(&aux, &ch).unwrap();
            assert!(cmp.equal, "{cmp:?}");
            assert!(!cmp.direct_vertices.is_empty());
        }
    }

    #[test]
    fn singleton_sweep_is_the_uniform_chain() {
        let ch = clear_main_noise_eve();
        let spec = GridSpec {
            resolution: 1,
            ..GridSpec::default()
        };
        let region = sweep_region(&ch, ChainClass::Inner, spec).unwrap();
        assert_eq!(region.members().len(), 1);
        let aux = ChainGrid::new(ch.shape(), ChainClass::Inner, spec)
            .unwrap()
            .chain(0)
            .unwrap();
        let direct = inner_bounds(&aux, &ch).unwrap();
        assert_eq!(region.members()[0].bounds, direct);
        let mut expect = crate::geometry::pareto_frontier(&direct.vertices().unwrap());
        expect.sort_by(|a, b| a.lex_cmp(b));
        assert_eq!(region.frontier(), &expect[..]);
    }

    #[test]
    fn shared_output_sweep_has_no_private_rate() {
        let spec = GridSpec {
            resolution: 3,
            ..GridSpec::default()
        };
        let region = sweep_region(&shared_output(), ChainClass::Inner, spec).unwrap();
        assert_eq!(region.max_of(RateTriple::private_sum), 0.0);
        assert!(region.frontier().iter().all(|p| p.r1 == 0.0 && p.r2 == 0.0));
    }

    fn identity_spec(resolution: usize) -> GridSpec {
        GridSpec {
            resolution,
            input_maps: InputMaps::Identity,
            ..GridSpec::default()
        }
    }

    #[test]
    fn refinement_never_shrinks_frontier() {
        let mut rng = SmallRng::seed_from_u64(12);
        let ch = random_channel(&mut rng, ChannelShape::new(2, 2, 2, 2)).unwrap();
        for class in [ChainClass::Inner, ChainClass::Outer] {
            let mut coarse = sweep_region(&ch, class, identity_spec(2)).unwrap();
            for k in [3, 5] {
                let fine = sweep_region(&ch, class, identity_spec(k)).unwrap();
                for p in coarse.frontier() {
                    assert!(fine.frontier().iter().any(|f| f.dominates(p, 1e-9)));
                }
                coarse = fine;
            }
        }
    }

    #[test]
    fn partitioned_sweep_merges_to_the_same_frontier() {
        let mut rng = SmallRng::seed_from_u64(13);
        let ch = random_channel(&mut rng, ChannelShape::new(2, 2, 2, 2)).unwrap();
        let grid = ChainGrid::new(ch.shape(), ChainClass::Inner, identity_spec(3)).unwrap();
        let n = grid.len() as u64;
        let whole = sweep_range(&ch, &grid, 0..n).unwrap();
        let a = sweep_range(&ch, &grid, 0..n / 3).unwrap();
        let b = sweep_range(&ch, &grid, n / 3..n).unwrap();
        let merged = b.merge(a, Retention::FrontierOnly);
        assert_eq!(merged.frontier(), whole.frontier());
    }

    /// Two independent binary links to the legitimate receiver, each
    /// further degraded by a binary symmetric flip toward the eavesdropper.
    fn separable_degraded(main: [f64; 2], extra: [f64; 2]) -> DiscreteChannel {
        let cascade = |a: f64, b: f64| a * (1.0 - b) + (1.0 - a) * b;
        let eve = [cascade(main[0], extra[0]), cascade(main[1], extra[1])];
        let pair = |f: [f64; 2]| move |x1: usize, x2: usize, y: usize| bsc(f[0])(x1, y / 2) * bsc(f[1])(x2, y % 2);
        DiscreteChannel::from_marginals(ChannelShape::new(2, 2, 4, 4), pair(main), pair(eve)).unwrap()
    }

    #[test]
    fn swept_inner_region_inside_swept_outer_region() {
        use rand::Rng;
        let mut rng = SmallRng::seed_from_u64(14);
        for _ in 0..4 {
            let main = [rng.gen_range(0.0..0.3), rng.gen_range(0.0..0.3)];
            let extra = [rng.gen_range(0.0..0.5), rng.gen_range(0.0..0.5)];
            let ch = separable_degraded(main, extra);
            let inner = sweep_region(&ch, ChainClass::Inner, identity_spec(3)).unwrap();
            let outer = sweep_region(&ch, ChainClass::Outer, identity_spec(3)).unwrap();
            for p in inner.frontier() {
                assert!(outer.contains(p, 1e-9), "{p:?}");
            }
        }
    }

    #[test]
    fn every_emitted_bound_is_non_negative() {
        let mut rng = SmallRng::seed_from_u64(15);
        for _ in 0..50 {
            let ch = random_channel(&mut rng, ChannelShape::new(2, 2, 2, 2)).unwrap();
            let aux = random_inner_chain(&mut rng, ChainShape::BINARY).unwrap();
            let values = |b: RateBounds| [b.r0, b.r1, b.r2, b.r12, b.r012];
            for v in values(inner_bounds(&aux, &ch).unwrap())
                .into_iter()
                .chain(values(outer_bounds(&aux.to_outer(), &ch).unwrap()))
            {
                assert!(v.unwrap() >= 0.0);
            }
        }
    }
}
