//! Closed-form Gaussian bounds: the achievable region, the outer bound and
//! the compound MAC capacity region, each as a union over power-split
//! parameters.

use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::geometry::{BoundKind, Member, Provenance, RateBounds, RateRegion, RegionBuilder, Retention};
use crate::math::{log2, sqrt};

/// Coefficient of `rho sqrt(P1 P2)` in the outer-bound common-rate numerator,
/// as stated with the theorem.
pub const OUTER_R0_CROSS_FACTOR: f64 = 1.0;

/// The same coefficient as carried through the derivation of the bound.
pub const DERIVED_R0_CROSS_FACTOR: f64 = 2.0;

/// Default grid points per parameter.
pub const DEFAULT_RESOLUTION: usize = 101;

/// Powers and noise variances of the two-user Gaussian channel
/// `Y_k = X1 + X2 + N_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianScenario {
    pub p1: f64,
    pub p2: f64,
    pub sigma1_sq: f64,
    pub sigma2_sq: f64,
}

impl GaussianScenario {
    pub fn new(p1: f64, p2: f64, sigma1_sq: f64, sigma2_sq: f64) -> Result<Self> {
        for (name, value) in [
            ("P1", p1),
            ("P2", p2),
            ("sigma1_sq", sigma1_sq),
            ("sigma2_sq", sigma2_sq),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        Ok(Self {
            p1,
            p2,
            sigma1_sq,
            sigma2_sq,
        })
    }

    fn cross(&self) -> f64 {
        sqrt(self.p1 * self.p2)
    }
}

/// Power-split parameters; `rho` is only used by the outer bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub beta1: f64,
    pub beta2: f64,
    pub rho: Option<f64>,
}

impl SweepPoint {
    pub fn new(beta1: f64, beta2: f64, rho: Option<f64>) -> Result<Self> {
        let unit = |name, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::InvalidParameter { name, value: v })
            }
        };
        unit("beta1", beta1)?;
        unit("beta2", beta2)?;
        if let Some(r) = rho {
            unit("rho", r)?;
        }
        Ok(Self { beta1, beta2, rho })
    }

    fn rho(&self) -> f64 {
        self.rho.unwrap_or(0.0)
    }
}

/// `C(x) = log2(1 + x) / 2`.
pub fn capacity_fn(x: f64) -> Result<f64> {
    if x < 0.0 || x.is_nan() {
        return Err(Error::NegativeArgument(x));
    }
    Ok(c(x))
}

fn c(x: f64) -> f64 {
    0.5 * log2(1.0 + x)
}

fn pos(x: f64) -> f64 {
    x.max(0.0)
}

/// The five achievable-region bounds at `(beta1, beta2)`; every secrecy
/// difference is replaced by its positive part.
pub fn gaussian_inner_at(s: &GaussianScenario, p: &SweepPoint) -> RateBounds {
    let (b1, b2) = (p.beta1 * p.beta1, p.beta2 * p.beta2);
    let private1 = (1.0 - b1) * s.p1;
    let private2 = (1.0 - b2) * s.p2;
    let private = private1 + private2;
    let common = b1 * s.p1 + b2 * s.p2 + 2.0 * p.beta1 * p.beta2 * s.cross();
    let full = s.p1 + s.p2 + 2.0 * p.beta1 * p.beta2 * s.cross();
    let leak = c(private / s.sigma2_sq);
    RateBounds::five(
        c(common / (private + s.sigma2_sq)),
        pos(c(private1 / s.sigma1_sq) - c(private1 / (private2 + s.sigma2_sq))),
        pos(c(private2 / s.sigma1_sq) - c(private2 / (private1 + s.sigma2_sq))),
        pos(c(private / s.sigma1_sq) - leak),
        pos(c(full / s.sigma1_sq) - leak),
    )
}

/// The outer-bound rows (`R0`, `R1 + R2`, `R0 + R1 + R2`) with the given
/// coefficient on the cross term of the common-rate numerator.
pub fn gaussian_outer_with_factor(s: &GaussianScenario, p: &SweepPoint, cross_factor: f64) -> RateBounds {
    let (b1, b2, rho) = (p.beta1, p.beta2, p.rho());
    let rc = rho * s.cross();
    let carried = b1 * s.p1 + b2 * s.p2 + 2.0 * b1 * b2 * rc;
    let common = (1.0 - b1) * s.p1 + (1.0 - b2) * s.p2 + cross_factor * (1.0 - b1 * b2) * rc;
    let r0 = c(common / (carried + s.sigma1_sq)).min(c(common / (carried + s.sigma2_sq)));
    let leak = c(carried / s.sigma2_sq);
    RateBounds {
        r0: Some(r0),
        r1: None,
        r2: None,
        r12: Some(pos(c(carried / s.sigma1_sq) - leak)),
        r012: Some(pos(c((s.p1 + s.p2 + 2.0 * rc) / s.sigma1_sq) - leak)),
    }
}

/// The outer-bound rows exactly as stated with the theorem.
pub fn gaussian_outer_at(s: &GaussianScenario, p: &SweepPoint) -> RateBounds {
    gaussian_outer_with_factor(s, p, OUTER_R0_CROSS_FACTOR)
}

/// The four compound-MAC rows (`R1`, `R2`, `R1 + R2`, `R0 + R1 + R2`).
pub fn cmac_capacity_at(s: &GaussianScenario, p: &SweepPoint) -> RateBounds {
    let private1 = s.p1 * (1.0 - p.beta1 * p.beta1);
    let private2 = s.p2 * (1.0 - p.beta2 * p.beta2);
    let full = s.p1 + s.p2 + 2.0 * s.cross() * p.beta1 * p.beta2;
    let both = |x: f64| c(x / s.sigma1_sq).min(c(x / s.sigma2_sq));
    RateBounds {
        r0: None,
        r1: Some(both(private1)),
        r2: Some(both(private2)),
        r12: Some(both(private1 + private2)),
        r012: Some(both(full)),
    }
}

/// Which Gaussian region to sweep, with the outer-bound cross-term
/// coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GaussianBound {
    Inner,
    Outer { cross_factor: f64 },
    Cmac,
}

impl GaussianBound {
    pub const OUTER: GaussianBound = GaussianBound::Outer {
        cross_factor: OUTER_R0_CROSS_FACTOR,
    };

    pub fn kind(&self) -> BoundKind {
        match self {
            GaussianBound::Inner => BoundKind::GInner,
            GaussianBound::Outer { .. } => BoundKind::GOuter,
            GaussianBound::Cmac => BoundKind::Cmac,
        }
    }

    fn has_rho(&self) -> bool {
        matches!(self, GaussianBound::Outer { .. })
    }

    pub fn at(&self, s: &GaussianScenario, p: &SweepPoint) -> RateBounds {
        match *self {
            GaussianBound::Inner => gaussian_inner_at(s, p),
            GaussianBound::Outer { cross_factor } => gaussian_outer_with_factor(s, p, cross_factor),
            GaussianBound::Cmac => cmac_capacity_at(s, p),
        }
    }
}

/// `resolution` evenly spaced points of `[0, 1]`, endpoints exact.
pub fn unit_grid(resolution: usize) -> Vec<f64> {
    let last = (resolution - 1) as f64;
    (0..resolution).map(|i| i as f64 / last).collect()
}

fn check_resolution(resolution: usize) -> Result<()> {
    if resolution < 2 {
        return Err(Error::InvalidParameter {
            name: "resolution",
            value: resolution as f64,
        });
    }
    Ok(())
}

/// Sweeps the grid points whose `beta1` index lies in `beta1_indices`.
/// Every member polytope is retained.
pub fn sweep_gaussian_range(
    s: &GaussianScenario,
    bound: GaussianBound,
    resolution: usize,
    beta1_indices: Range<usize>,
) -> Result<RateRegion> {
    check_resolution(resolution)?;
    let grid = unit_grid(resolution);
    let rhos: Vec<Option<f64>> = if bound.has_rho() {
        grid.iter().map(|&r| Some(r)).collect()
    } else {
        alloc::vec![None]
    };
    let mut builder = RegionBuilder::new(bound.kind(), Retention::All);
    for &beta1 in &grid[beta1_indices.start..beta1_indices.end.min(resolution)] {
        for &beta2 in &grid {
            for &rho in &rhos {
                let p = SweepPoint { beta1, beta2, rho };
                let bounds = bound.at(s, &p);
                let member = Member {
                    bounds,
                    provenance: Provenance::Gaussian { beta1, beta2, rho },
                };
                builder.add(member, &bounds.vertices()?);
            }
        }
    }
    Ok(builder.finish())
}

/// Sweeps the whole uniform grid with `resolution` points per parameter.
pub fn sweep_gaussian(s: &GaussianScenario, bound: GaussianBound, resolution: usize) -> Result<RateRegion> {
    sweep_gaussian_range(s, bound, resolution, 0..resolution)
}
