use alloc::vec::Vec;

use super::distribution::{check_probabilities, MAX_ALPHABET};
use crate::error::{Error, Result};

/// Alphabet sizes of a two-input, two-output channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelShape {
    pub x1: usize,
    pub x2: usize,
    pub y1: usize,
    pub y2: usize,
}

impl ChannelShape {
    pub fn new(x1: usize, x2: usize, y1: usize, y2: usize) -> Self {
        Self { x1, x2, y1, y2 }
    }

    pub fn inputs(&self) -> usize {
        self.x1 * self.x2
    }

    pub fn outputs(&self) -> usize {
        self.y1 * self.y2
    }

    fn validate(&self) -> Result<()> {
        for (what, size) in [
            ("X1", self.x1),
            ("X2", self.x2),
            ("Y1", self.y1),
            ("Y2", self.y2),
        ] {
            if size == 0 {
                return Err(Error::EmptyAlphabet);
            }
            if size > MAX_ALPHABET {
                return Err(Error::AlphabetTooLarge {
                    what,
                    size,
                    max: MAX_ALPHABET,
                });
            }
        }
        Ok(())
    }
}

/// Discrete memoryless channel law `p(y1, y2 | x1, x2)`.
///
/// The table is stored row-major with `x1` slowest and `y2` fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteChannel {
    shape: ChannelShape,
    table: Vec<f64>,
}

impl DiscreteChannel {
    pub fn new(shape: ChannelShape, table: Vec<f64>) -> Result<Self> {
        shape.validate()?;
        let expected = shape.inputs() * shape.outputs();
        if table.len() != expected {
            return Err(Error::DimensionMismatch {
                what: "channel table entries",
                expected,
                found: table.len(),
            });
        }
        for slice in table.chunks_exact(shape.outputs()) {
            check_probabilities(slice)?;
        }
        Ok(Self { shape, table })
    }

    pub fn from_fn<F>(shape: ChannelShape, mut law: F) -> Result<Self>
    where
        F: FnMut(usize, usize, usize, usize) -> f64,
    {
        let mut table = Vec::with_capacity(shape.inputs() * shape.outputs());
        for x1 in 0..shape.x1 {
            for x2 in 0..shape.x2 {
                for y1 in 0..shape.y1 {
                    for y2 in 0..shape.y2 {
                        table.push(law(x1, x2, y1, y2));
                    }
                }
            }
        }
        Self::new(shape, table)
    }

    /// Two independent marginal laws `p(y1|x1,x2) p(y2|x1,x2)`.
    pub fn from_marginals<F, G>(shape: ChannelShape, mut main: F, mut eve: G) -> Result<Self>
    where
        F: FnMut(usize, usize, usize) -> f64,
        G: FnMut(usize, usize, usize) -> f64,
    {
        Self::from_fn(shape, |x1, x2, y1, y2| main(x1, x2, y1) * eve(x1, x2, y2))
    }

    pub fn shape(&self) -> ChannelShape {
        self.shape
    }

    #[inline]
    pub fn prob(&self, x1: usize, x2: usize, y1: usize, y2: usize) -> f64 {
        let s = &self.shape;
        self.table[((x1 * s.x2 + x2) * s.y1 + y1) * s.y2 + y2]
    }

    /// The `(y1, y2)` slice for one input pair, `y2` fastest.
    pub fn output_law(&self, x1: usize, x2: usize) -> &[f64] {
        let width = self.shape.outputs();
        let start = (x1 * self.shape.x2 + x2) * width;
        &self.table[start..start + width]
    }

    /// `p(y1 | x1, x2)`, summed over `y2`.
    pub fn main_marginal(&self, x1: usize, x2: usize, y1: usize) -> f64 {
        (0..self.shape.y2).map(|y2| self.prob(x1, x2, y1, y2)).sum()
    }

    /// `p(y2 | x1, x2)`, summed over `y1`.
    pub fn eve_marginal(&self, x1: usize, x2: usize, y2: usize) -> f64 {
        (0..self.shape.y1).map(|y1| self.prob(x1, x2, y1, y2)).sum()
    }
}
