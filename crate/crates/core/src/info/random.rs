//! Seeded random laws for tests, oracles and the `fm-check` scenario.

use alloc::vec::Vec;
use rand::Rng;

use super::chain::AuxiliaryChain;
use super::channel::{ChannelShape, DiscreteChannel};
use super::distribution::{ConditionalTable, FiniteDistribution};
use crate::error::Result;
use crate::math::ln;

/// A point drawn uniformly from the probability simplex.
pub fn random_probs<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..len)
        .map(|_| -ln(1.0 - rng.gen::<f64>()))
        .collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    w
}

pub fn random_distribution<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Result<FiniteDistribution> {
    FiniteDistribution::new(random_probs(rng, len))
}

pub fn random_conditional<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
) -> Result<ConditionalTable> {
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        data.extend(random_probs(rng, cols));
    }
    ConditionalTable::new(rows, cols, data)
}

pub fn random_channel<R: Rng + ?Sized>(rng: &mut R, shape: ChannelShape) -> Result<DiscreteChannel> {
    let mut table = Vec::with_capacity(shape.inputs() * shape.outputs());
    for _ in 0..shape.inputs() {
        table.extend(random_probs(rng, shape.outputs()));
    }
    DiscreteChannel::new(shape, table)
}

/// A channel where `Y2` is a random degradation of `Y1`:
/// `p(y1, y2 | x1, x2) = p(y1 | x1, x2) p(y2 | y1)`.
pub fn random_degraded_channel<R: Rng + ?Sized>(
    rng: &mut R,
    shape: ChannelShape,
) -> Result<DiscreteChannel> {
    let main = random_conditional(rng, shape.inputs(), shape.y1)?;
    let degrade = random_conditional(rng, shape.y1, shape.y2)?;
    DiscreteChannel::from_fn(shape, |x1, x2, y1, y2| {
        main.get(x1 * shape.x2 + x2, y1) * degrade.get(y1, y2)
    })
}

/// Alphabet sizes `(U, V1, V2, X1, X2)` of a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainShape {
    pub u: usize,
    pub v1: usize,
    pub v2: usize,
    pub x1: usize,
    pub x2: usize,
}

impl ChainShape {
    pub const BINARY: ChainShape = ChainShape {
        u: 2,
        v1: 2,
        v2: 2,
        x1: 2,
        x2: 2,
    };
}

pub fn random_inner_chain<R: Rng + ?Sized>(rng: &mut R, shape: ChainShape) -> Result<AuxiliaryChain> {
    AuxiliaryChain::inner(
        random_distribution(rng, shape.u)?,
        random_conditional(rng, shape.u, shape.v1)?,
        random_conditional(rng, shape.u, shape.v2)?,
        random_conditional(rng, shape.v1, shape.x1)?,
        random_conditional(rng, shape.v2, shape.x2)?,
    )
}

pub fn random_outer_chain<R: Rng + ?Sized>(rng: &mut R, shape: ChainShape) -> Result<AuxiliaryChain> {
    AuxiliaryChain::outer(
        random_distribution(rng, shape.u)?,
        shape.v1,
        shape.v2,
        random_conditional(rng, shape.u, shape.v1 * shape.v2)?,
        random_conditional(rng, shape.v1, shape.x1)?,
        random_conditional(rng, shape.v2, shape.x2)?,
    )
}
