use alloc::vec::Vec;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{CodeConfig, MessageSizes};
use crate::error::{Error, Result};
use crate::info::{AuxiliaryChain, ConditionalTable};

/// Stream of the master seed reserved for codebook generation.
pub const CODEBOOK_STREAM: u64 = 0;

/// A ChaCha8 generator on one stream of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(crate) fn row_samplers(table: &ConditionalTable) -> Vec<WeightedIndex<f64>> {
    (0..table.rows())
        .map(|r| WeightedIndex::new(table.row(r)).expect("validated probability row"))
        .collect()
}

/// The three codebooks of one superposition binning code, stored as flat
/// symbol arrays of `n` symbols per codeword.
///
/// `v1` codewords are indexed by `(w0, w1, q)` with `q` fastest, `v2`
/// codewords likewise by `(w0, w2, q')`.
#[derive(Debug, Clone, PartialEq)]
pub struct Codebook {
    cfg: CodeConfig,
    sizes: MessageSizes,
    u: Vec<u8>,
    v1: Vec<u8>,
    v2: Vec<u8>,
}

/// Draws `u` codewords i.i.d. from `p(u)`, then every `v1` codeword
/// symbol-wise from `p(v1 | u_i)` of its cloud center, then the `v2`
/// codewords, all from the codebook stream of the seed.
pub fn generate_codebook(cfg: &CodeConfig) -> Result<Codebook> {
    let sizes = cfg.sizes()?;
    let n = cfg.n;
    let aux = &cfg.aux;
    let (v1_rows, v2_rows) = match (aux.v1_given_u(), aux.v2_given_u()) {
        (Some(a), Some(b)) => (row_samplers(a), row_samplers(b)),
        _ => return Err(Error::OuterChainForInnerBound),
    };
    let pu = WeightedIndex::new(aux.p_u().probs()).expect("validated distribution");
    let mut rng = stream_rng(cfg.seed, CODEBOOK_STREAM);
    let mut u = Vec::with_capacity(sizes.w0 * n);
    for _ in 0..sizes.w0 * n {
        u.push(pu.sample(&mut rng) as u8);
    }
    let satellites = |per_cloud: usize, rows: &[WeightedIndex<f64>], rng: &mut ChaCha8Rng| {
        let mut out = Vec::with_capacity(sizes.w0 * per_cloud * n);
        for w0 in 0..sizes.w0 {
            let center = &u[w0 * n..(w0 + 1) * n];
            for _ in 0..per_cloud {
                out.extend(center.iter().map(|&s| rows[s as usize].sample(rng) as u8));
            }
        }
        out
    };
    let v1 = satellites(sizes.w1 * sizes.q1, &v1_rows, &mut rng);
    let v2 = satellites(sizes.w2 * sizes.q2, &v2_rows, &mut rng);
    Ok(Codebook {
        cfg: cfg.clone(),
        sizes,
        u,
        v1,
        v2,
    })
}

/// Channel inputs produced by the stochastic encoders, with the chosen bin
/// entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoded {
    pub q1: usize,
    pub q2: usize,
    pub x1: Vec<u8>,
    pub x2: Vec<u8>,
}

impl Codebook {
    pub fn config(&self) -> &CodeConfig {
        &self.cfg
    }

    pub fn aux(&self) -> &AuxiliaryChain {
        &self.cfg.aux
    }

    pub fn n(&self) -> usize {
        self.cfg.n
    }

    pub fn sizes(&self) -> &MessageSizes {
        &self.sizes
    }

    pub fn u_word(&self, w0: usize) -> &[u8] {
        let n = self.cfg.n;
        &self.u[w0 * n..(w0 + 1) * n]
    }

    pub fn v1_word(&self, w0: usize, w1: usize, q: usize) -> &[u8] {
        let s = &self.sizes;
        let n = self.cfg.n;
        let k = (w0 * s.w1 + w1) * s.q1 + q;
        &self.v1[k * n..(k + 1) * n]
    }

    pub fn v2_word(&self, w0: usize, w2: usize, q: usize) -> &[u8] {
        let s = &self.sizes;
        let n = self.cfg.n;
        let k = (w0 * s.w2 + w2) * s.q2 + q;
        &self.v2[k * n..(k + 1) * n]
    }

    /// All `v1` codewords of cloud `w0`, flattened with `(w1, q)` order.
    pub(crate) fn v1_cloud(&self, w0: usize) -> &[u8] {
        let len = self.sizes.w1 * self.sizes.q1 * self.cfg.n;
        &self.v1[w0 * len..(w0 + 1) * len]
    }

    pub(crate) fn v2_cloud(&self, w0: usize) -> &[u8] {
        let len = self.sizes.w2 * self.sizes.q2 * self.cfg.n;
        &self.v2[w0 * len..(w0 + 1) * len]
    }

    /// Chooses the bin entries uniformly and passes the selected codewords
    /// through `p(x1 | v1)` and `p(x2 | v2)`.
    pub fn encode<R: Rng + ?Sized>(&self, w0: usize, w1: usize, w2: usize, rng: &mut R) -> Result<Encoded> {
        let s = &self.sizes;
        for (which, index, count) in [("w0", w0, s.w0), ("w1", w1, s.w1), ("w2", w2, s.w2)] {
            if index >= count {
                return Err(Error::MessageOutOfRange { which, index, count });
            }
        }
        let q1 = rng.gen_range(0..s.q1);
        let q2 = rng.gen_range(0..s.q2);
        let x1_rows = row_samplers(self.cfg.aux.x1_given_v1());
        let x2_rows = row_samplers(self.cfg.aux.x2_given_v2());
        let x1 = self
            .v1_word(w0, w1, q1)
            .iter()
            .map(|&v| x1_rows[v as usize].sample(rng) as u8)
            .collect();
        let x2 = self
            .v2_word(w0, w2, q2)
            .iter()
            .map(|&v| x2_rows[v as usize].sample(rng) as u8)
            .collect();
        Ok(Encoded { q1, q2, x1, x2 })
    }
}

/// Free-function form of [`Codebook::encode`].
pub fn encode<R: Rng + ?Sized>(cb: &Codebook, w0: usize, w1: usize, w2: usize, rng: &mut R) -> Result<Encoded> {
    cb.encode(w0, w1, w2, rng)
}
