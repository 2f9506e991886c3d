use crate::error::{Error, Result};
use crate::info::{AuxiliaryChain, ChainClass};
use crate::math::{exp2, floor, log2};

/// Longest supported blocklength.
pub const MAX_BLOCKLENGTH: usize = 16;

pub const DEFAULT_TYPICALITY_EPS: f64 = 0.1;

/// Default cap on the number of stored `v1` plus `v2` codewords.
pub const DEFAULT_MEMORY_CAP: u128 = 1 << 20;

/// Default cap on the number of `(w0, w1, q1, w2, q2)` tuples a decoder or
/// posterior may enumerate per trial.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 22;

/// Nominal rates in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SimRates {
    pub r0: f64,
    pub r1: f64,
    pub r2: f64,
    /// bin-index rate of user 1
    pub r1p: f64,
    /// bin-index rate of user 2
    pub r2p: f64,
}

/// `max(1, floor(2^(n rate)))`, saturating at `u128::MAX`.
pub fn message_count(n: usize, rate: f64) -> u128 {
    let bits = n as f64 * rate;
    if bits >= 127.0 {
        return u128::MAX;
    }
    let m = floor(exp2(bits) + 1e-9);
    if m < 1.0 {
        1
    } else {
        m as u128
    }
}

/// Integer index ranges of one code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MessageSizes {
    pub w0: usize,
    pub w1: usize,
    pub w2: usize,
    /// codewords per bin of user 1
    pub q1: usize,
    /// codewords per bin of user 2
    pub q2: usize,
}

impl MessageSizes {
    pub fn v1_words(&self) -> usize {
        self.w0 * self.w1 * self.q1
    }

    pub fn v2_words(&self) -> usize {
        self.w0 * self.w2 * self.q2
    }

    /// Number of `(w0, w1, q1, w2, q2)` tuples.
    pub fn tuples(&self) -> u128 {
        [self.w0, self.w1, self.q1, self.w2, self.q2]
            .iter()
            .fold(1u128, |acc, &m| acc.saturating_mul(m as u128))
    }

    /// `log2(|W1| |W2|) / n`, the private rate the code actually carries.
    pub fn private_rate(&self, n: usize) -> f64 {
        log2((self.w1 * self.w2) as f64) / n as f64
    }
}

/// Parameters of one random binning code.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeConfig {
    pub n: usize,
    pub rates: SimRates,
    pub aux: AuxiliaryChain,
    pub typicality_eps: f64,
    pub seed: u64,
    pub memory_cap: u128,
    pub enumeration_cap: u128,
}

impl CodeConfig {
    /// A configuration with default tolerance and caps.
    pub fn new(n: usize, rates: SimRates, aux: AuxiliaryChain, seed: u64) -> Self {
        Self {
            n,
            rates,
            aux,
            typicality_eps: DEFAULT_TYPICALITY_EPS,
            seed,
            memory_cap: DEFAULT_MEMORY_CAP,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }

    /// Checks the configuration and returns the integer message counts.
    pub fn sizes(&self) -> Result<MessageSizes> {
        if self.n == 0 || self.n > MAX_BLOCKLENGTH {
            return Err(Error::InvalidParameter {
                name: "blocklength",
                value: self.n as f64,
            });
        }
        if !(self.typicality_eps > 0.0) || !self.typicality_eps.is_finite() {
            return Err(Error::InvalidParameter {
                name: "typicality_eps",
                value: self.typicality_eps,
            });
        }
        if self.aux.class() != ChainClass::Inner {
            return Err(Error::OuterChainForInnerBound);
        }
        let r = &self.rates;
        for (name, rate) in [("R0", r.r0), ("R1", r.r1), ("R2", r.r2), ("R1p", r.r1p), ("R2p", r.r2p)] {
            if !(rate >= 0.0) || !rate.is_finite() {
                return Err(Error::InvalidParameter { name, value: rate });
            }
        }
        let n = self.n;
        let [w0, w1, w2, q1, q2] = [r.r0, r.r1, r.r2, r.r1p, r.r2p].map(|rate| message_count(n, rate));
        let needed = w0
            .saturating_mul(w1)
            .saturating_mul(q1)
            .saturating_add(w0.saturating_mul(w2).saturating_mul(q2));
        if needed > self.memory_cap {
            return Err(Error::MemoryCapExceeded {
                needed,
                cap: self.memory_cap,
            });
        }
        // every count is below the memory cap here, so they fit in usize
        Ok(MessageSizes {
            w0: w0 as usize,
            w1: w1 as usize,
            w2: w2 as usize,
            q1: q1 as usize,
            q2: q2 as usize,
        })
    }
}
