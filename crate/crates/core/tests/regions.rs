use mawc_core::dm::{fm_check, inner_bounds, outer_bounds};
use mawc_core::gaussian::{
    cmac_capacity_at, gaussian_inner_at, gaussian_outer_with_factor, GaussianScenario, SweepPoint,
};
use mawc_core::info::random::{
    random_channel, random_degraded_channel, random_inner_chain, random_outer_chain, ChainShape,
};
use mawc_core::info::ChannelShape;
use mawc_core::RateBounds;
use proptest::prelude::*;
use rand::rngs::SmallRng;
use rand::SeedableRng;

fn entries(b: &RateBounds) -> Vec<f64> {
    [b.r0, b.r1, b.r2, b.r12, b.r012].into_iter().flatten().collect()
}

#[test]
fn projected_raw_system_equals_direct_region_on_fifty_chains() {
    let mut rng = SmallRng::seed_from_u64(2024);
    for k in 0..50 {
        let ch = random_degraded_channel(&mut rng, ChannelShape::new(2, 2, 2, 2)).unwrap();
        let aux = random_inner_chain(&mut rng, ChainShape::BINARY).unwrap();
        let cmp = fm_check(&aux, &ch).unwrap();
        assert!(cmp.equal, "chain {k}: {cmp:?}");
        assert!(!cmp.direct_vertices.is_empty());
    }
}

fn scenario() -> impl Strategy<Value = GaussianScenario> {
    (0.1f64..10.0, 0.1f64..10.0, 0.01f64..2.0, 0.01f64..2.0)
        .prop_map(|(p1, p2, s1, s2)| GaussianScenario::new(p1, p2, s1, s2).unwrap())
}

fn point() -> impl Strategy<Value = SweepPoint> {
    (0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..=1.0)
        .prop_map(|(b1, b2, r)| SweepPoint::new(b1, b2, Some(r)).unwrap())
}

proptest! {
    #[test]
    fn emitted_chain_bounds_are_non_negative(seed in any::<u64>(), degraded in any::<bool>()) {
        let mut rng = SmallRng::seed_from_u64(seed);
        let shape = ChannelShape::new(2, 2, 3, 2);
        let ch = if degraded {
            random_degraded_channel(&mut rng, shape).unwrap()
        } else {
            random_channel(&mut rng, shape).unwrap()
        };
        let inner = random_inner_chain(&mut rng, ChainShape::BINARY).unwrap();
        let outer = random_outer_chain(&mut rng, ChainShape::BINARY).unwrap();
        for b in [inner_bounds(&inner, &ch).unwrap(), outer_bounds(&outer, &ch).unwrap()] {
            prop_assert!(entries(&b).iter().all(|v| *v >= 0.0), "{b:?}");
            for v in b.vertices().unwrap() {
                prop_assert!(b.contains(&v, 1e-9));
            }
        }
    }

    #[test]
    fn gaussian_bounds_are_never_negative(s in scenario(), p in point(), factor in 1.0f64..=2.0) {
        for b in [
            gaussian_inner_at(&s, &p),
            gaussian_outer_with_factor(&s, &p, factor),
            cmac_capacity_at(&s, &p),
        ] {
            prop_assert!(entries(&b).iter().all(|v| *v >= 0.0 && v.is_finite()), "{b:?}");
        }
    }

    #[test]
    fn noisier_eavesdropper_helps_secrecy_and_hurts_the_compound_mac(
        s in scenario(), p in point(), extra in 0.0f64..2.0,
    ) {
        let worse = GaussianScenario::new(s.p1, s.p2, s.sigma1_sq, s.sigma2_sq + extra).unwrap();
        let (a, b) = (gaussian_inner_at(&s, &p), gaussian_inner_at(&worse, &p));
        for (x, y) in [(a.r1, b.r1), (a.r2, b.r2), (a.r12, b.r12)] {
            prop_assert!(x.unwrap() <= y.unwrap() + 1e-12);
        }
        let (a, b) = (cmac_capacity_at(&s, &p), cmac_capacity_at(&worse, &p));
        for (x, y) in entries(&a).into_iter().zip(entries(&b)) {
            prop_assert!(y <= x + 1e-12);
        }
    }
}
