use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{RateBounds, RateTriple};
use crate::info::{AuxiliaryChain, ChainClass, DiscreteChannel, InfoEvaluator, TableLayout, VarMask};

const U: VarMask = 1;
const V1: VarMask = 1 << 1;
const V2: VarMask = 1 << 2;
const Y1: VarMask = 1 << 3;
const Y2: VarMask = 1 << 4;

/// Every mutual-information term the region bounds are built from, for one
/// chain and channel. Field names read `<vars>_<output>[_<given>]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ChainInformation {
    pub u_y1: f64,
    pub u_y2: f64,
    pub v1_y1_u: f64,
    pub v1_y2_u: f64,
    pub v2_y1_u: f64,
    pub v2_y2_u: f64,
    pub v1_y1_v2u: f64,
    pub v2_y1_v1u: f64,
    pub v1_y2_v2u: f64,
    pub v2_y2_v1u: f64,
    pub v12_y1_u: f64,
    pub v12_y2_u: f64,
    pub v12_y1: f64,
    pub uv12_y1: f64,
}

impl ChainInformation {
    /// Evaluates all terms over a `(U, V1, V2, Y1, Y2)` table.
    pub fn from_output_joint(layout: &TableLayout, mass: &[f64]) -> Self {
        let e = InfoEvaluator::new(layout, mass);
        let mi = |a, b, c| e.mutual_information(a, b, c);
        Self {
            u_y1: mi(U, Y1, 0),
            u_y2: mi(U, Y2, 0),
            v1_y1_u: mi(V1, Y1, U),
            v1_y2_u: mi(V1, Y2, U),
            v2_y1_u: mi(V2, Y1, U),
            v2_y2_u: mi(V2, Y2, U),
            v1_y1_v2u: mi(V1, Y1, V2 | U),
            v2_y1_v1u: mi(V2, Y1, V1 | U),
            v1_y2_v2u: mi(V1, Y2, V2 | U),
            v2_y2_v1u: mi(V2, Y2, V1 | U),
            v12_y1_u: mi(V1 | V2, Y1, U),
            v12_y2_u: mi(V1 | V2, Y2, U),
            v12_y1: mi(V1 | V2, Y1, 0),
            uv12_y1: mi(U | V1 | V2, Y1, 0),
        }
    }

    pub fn evaluate(aux: &AuxiliaryChain, ch: &DiscreteChannel) -> Result<Self> {
        let mut mass = Vec::new();
        aux.fill_output_joint(ch, &mut mass)?;
        let layout = TableLayout::new(&aux.output_sizes(ch));
        Ok(Self::from_output_joint(&layout, &mass))
    }

    /// Right-hand sides of the achievable region, before clamping.
    pub fn inner_bounds(&self) -> RateBounds {
        RateBounds::five(
            self.u_y2,
            self.v1_y1_v2u - self.v1_y2_u,
            self.v2_y1_v1u - self.v2_y2_u,
            self.v12_y1_u - self.v12_y2_u,
            self.v12_y1 - self.v12_y2_u,
        )
    }

    /// Right-hand sides of the outer bound, before clamping.
    pub fn outer_bounds(&self) -> RateBounds {
        RateBounds::five(
            self.u_y1.min(self.u_y2),
            self.v1_y1_u - self.v1_y2_u,
            self.v2_y1_u - self.v2_y2_u,
            self.v12_y1_u - self.v12_y2_u,
            self.v12_y1 - self.v12_y2_u,
        )
    }
}

/// The clamped achievable-region bounds of one inner-class chain.
pub fn inner_bounds(aux: &AuxiliaryChain, ch: &DiscreteChannel) -> Result<RateBounds> {
    if aux.class() != ChainClass::Inner {
        return Err(Error::OuterChainForInnerBound);
    }
    Ok(ChainInformation::evaluate(aux, ch)?.inner_bounds().clamped())
}

/// The clamped outer-bound values of one chain of either class.
pub fn outer_bounds(aux: &AuxiliaryChain, ch: &DiscreteChannel) -> Result<RateBounds> {
    Ok(ChainInformation::evaluate(aux, ch)?.outer_bounds().clamped())
}

/// Vertices of the achievable-region polytope of one inner-class chain.
pub fn inner_corner_triples(aux: &AuxiliaryChain, ch: &DiscreteChannel) -> Result<Vec<RateTriple>> {
    inner_bounds(aux, ch)?.vertices()
}

/// Vertices of the outer-bound polytope of one chain.
pub fn outer_corner_triples(aux: &AuxiliaryChain, ch: &DiscreteChannel) -> Result<Vec<RateTriple>> {
    outer_bounds(aux, ch)?.vertices()
}
