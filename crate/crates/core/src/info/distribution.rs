use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::plogp;

/// Allowed deviation of a probability vector's total mass from one.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Largest alphabet accepted for any channel or auxiliary variable.
pub const MAX_ALPHABET: usize = 4;

pub(crate) fn check_probabilities(probs: &[f64]) -> Result<()> {
    if probs.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    let mut sum = 0.0;
    for (index, &value) in probs.iter().enumerate() {
        if !(value >= 0.0) || !value.is_finite() {
            return Err(Error::NegativeProbability { index, value });
        }
        sum += value;
    }
    if (sum - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized { sum });
    }
    Ok(())
}

/// A probability vector over `0..len`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDistribution {
    probs: Vec<f64>,
}

impl FiniteDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        check_probabilities(&probs)?;
        Ok(Self { probs })
    }

    pub fn uniform(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Self {
            probs: alloc::vec![1.0 / len as f64; len],
        })
    }

    pub fn point_mass(len: usize, at: usize) -> Result<Self> {
        if at >= len {
            return Err(Error::DimensionMismatch {
                what: "point mass index",
                expected: len,
                found: at,
            });
        }
        let mut probs = alloc::vec![0.0; len];
        probs[at] = 1.0;
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn entropy(&self) -> f64 {
        self.probs.iter().map(|&p| plogp(p)).sum()
    }
}

/// Shannon entropy in bits.
pub fn entropy(d: &FiniteDistribution) -> f64 {
    d.entropy()
}

/// A row-stochastic matrix `p(col | row)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalTable {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl ConditionalTable {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                what: "conditional table entries",
                expected: rows * cols,
                found: data.len(),
            });
        }
        for row in data.chunks_exact(cols) {
            check_probabilities(row)?;
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[FiniteDistribution]) -> Result<Self> {
        let cols = rows.first().map(FiniteDistribution::len).ok_or(Error::EmptyAlphabet)?;
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    what: "conditional table row",
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row.probs());
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// The deterministic map `col = row`.
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let mut data = alloc::vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Ok(Self {
            rows: n,
            cols: n,
            data,
        })
    }

    /// Every row equal to `d`.
    pub fn constant(rows: usize, d: &FiniteDistribution) -> Result<Self> {
        if rows == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let mut data = Vec::with_capacity(rows * d.len());
        for _ in 0..rows {
            data.extend_from_slice(d.probs());
        }
        Ok(Self {
            rows,
            cols: d.len(),
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }
}
