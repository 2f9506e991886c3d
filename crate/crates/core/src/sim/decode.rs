use alloc::vec::Vec;

use super::codebook::Codebook;
use crate::error::{Error, Result};
use crate::info::{DiscreteChannel, FiniteDistribution};

/// The single-letter laws the receivers test against.
#[derive(Debug, Clone, PartialEq)]
pub struct ReceiverLaws {
    sizes: [usize; 5],
    /// `p(u, v1, v2, y1)`, `y1` fastest
    main: Vec<f64>,
    /// `p(u, y2)`
    eve: Vec<f64>,
    /// `p(y2 | v1, v2)` with the input maps summed out
    eve_likelihood: Vec<f64>,
}

impl ReceiverLaws {
    pub fn new(cb: &Codebook, ch: &DiscreteChannel) -> Result<Self> {
        let aux = cb.aux();
        let mut mass = Vec::new();
        aux.fill_output_joint(ch, &mut mass)?;
        let sizes = aux.output_sizes(ch);
        let [nu, n1, n2, ny1, ny2] = sizes;
        let mut main = alloc::vec![0.0; nu * n1 * n2 * ny1];
        let mut eve = alloc::vec![0.0; nu * ny2];
        for (k, &p) in mass.iter().enumerate() {
            let y2 = k % ny2;
            let rest = k / ny2;
            main[rest] += p;
            eve[(rest / (n1 * n2 * ny1)) * ny2 + y2] += p;
        }
        let s = ch.shape();
        let mut eve_likelihood = alloc::vec![0.0; n1 * n2 * ny2];
        for v1 in 0..n1 {
            for v2 in 0..n2 {
                for x1 in 0..s.x1 {
                    for x2 in 0..s.x2 {
                        let px = aux.x1_given_v1().get(v1, x1) * aux.x2_given_v2().get(v2, x2);
                        if px == 0.0 {
                            continue;
                        }
                        for y2 in 0..ny2 {
                            eve_likelihood[(v1 * n2 + v2) * ny2 + y2] += px * ch.eve_marginal(x1, x2, y2);
                        }
                    }
                }
            }
        }
        Ok(Self {
            sizes,
            main,
            eve,
            eve_likelihood,
        })
    }

    /// `p(y2 | v1, v2)`.
    pub fn eve_likelihood(&self, v1: usize, v2: usize, y2: usize) -> f64 {
        let [_, _, n2, _, ny2] = self.sizes;
        self.eve_likelihood[(v1 * n2 + v2) * ny2 + y2]
    }
}

/// Strong typicality of an empirical count vector against `law`: every cell
/// frequency within `eps` of its probability and no occurrence of a
/// probability-zero cell.
pub fn is_strongly_typical(counts: &[u32], law: &[f64], n: usize, eps: f64) -> bool {
    counts.iter().zip(law).all(|(&c, &p)| {
        if p == 0.0 {
            c == 0
        } else {
            (c as f64 / n as f64 - p).abs() <= eps
        }
    })
}

fn check_enumeration(cb: &Codebook) -> Result<()> {
    let needed = cb.sizes().tuples();
    let cap = cb.config().enumeration_cap;
    if needed > cap {
        return Err(Error::EnumerationCapExceeded { needed, cap });
    }
    Ok(())
}

/// Decoded indices of the first receiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rx1Estimate {
    pub w0: usize,
    pub w1: usize,
    pub w2: usize,
}

/// Scans every `(w0, w1, q1, w2, q2)` and returns the messages of the unique
/// tuple whose `(u, v1, v2, y1)` type is typical; `None` when no tuple or
/// more than one is. A code with a single tuple decodes without a test.
pub fn decode_rx1(cb: &Codebook, laws: &ReceiverLaws, y1: &[u8], eps: f64) -> Result<Option<Rx1Estimate>> {
    check_enumeration(cb)?;
    let s = *cb.sizes();
    if s.tuples() == 1 {
        return Ok(Some(Rx1Estimate { w0: 0, w1: 0, w2: 0 }));
    }
    let n = cb.n();
    let [_, n1, n2, ny1, _] = laws.sizes;
    let mut counts = alloc::vec![0u32; laws.main.len()];
    let mut found = None;
    for w0 in 0..s.w0 {
        let u = cb.u_word(w0);
        for w1 in 0..s.w1 {
            for q1 in 0..s.q1 {
                let v1 = cb.v1_word(w0, w1, q1);
                for w2 in 0..s.w2 {
                    for q2 in 0..s.q2 {
                        let v2 = cb.v2_word(w0, w2, q2);
                        counts.iter_mut().for_each(|c| *c = 0);
                        let mut possible = true;
                        for i in 0..n {
                            let cell = ((u[i] as usize * n1 + v1[i] as usize) * n2 + v2[i] as usize) * ny1
                                + y1[i] as usize;
                            if laws.main[cell] == 0.0 {
                                possible = false;
                                break;
                            }
                            counts[cell] += 1;
                        }
                        if possible && is_strongly_typical(&counts, &laws.main, n, eps) {
                            if found.is_some() {
                                return Ok(None);
                            }
                            found = Some(Rx1Estimate { w0, w1, w2 });
                        }
                    }
                }
            }
        }
    }
    Ok(found)
}

/// The unique `w0` whose `(u, y2)` type is typical, else `None`. A single
/// common message decodes without a test.
pub fn decode_rx2(cb: &Codebook, laws: &ReceiverLaws, y2: &[u8], eps: f64) -> Result<Option<usize>> {
    let s = cb.sizes();
    if s.w0 == 1 {
        return Ok(Some(0));
    }
    let n = cb.n();
    let ny2 = laws.sizes[4];
    let mut counts = alloc::vec![0u32; laws.eve.len()];
    let mut found = None;
    for w0 in 0..s.w0 {
        counts.iter_mut().for_each(|c| *c = 0);
        for (&u, &y) in cb.u_word(w0).iter().zip(y2) {
            counts[u as usize * ny2 + y as usize] += 1;
        }
        if is_strongly_typical(&counts, &laws.eve, n, eps) {
            if found.is_some() {
                return Ok(None);
            }
            found = Some(w0);
        }
    }
    Ok(found)
}

/// Exact posterior `P(w1, w2 | y2, codebook)` under uniform messages and bin
/// entries, `w2` fastest.
pub fn posterior(cb: &Codebook, laws: &ReceiverLaws, y2: &[u8]) -> Result<FiniteDistribution> {
    check_enumeration(cb)?;
    let s = *cb.sizes();
    let n = cb.n();
    let mut weights = alloc::vec![0.0; s.w1 * s.w2];
    // per-symbol likelihood of one v2 codeword against each v1 symbol
    let n1 = laws.sizes[1];
    let mut v2_lik = alloc::vec![0.0; s.w2 * s.q2 * n * n1];
    for w0 in 0..s.w0 {
        let c2 = cb.v2_cloud(w0);
        for (k, word) in c2.chunks_exact(n).enumerate() {
            for (i, &b) in word.iter().enumerate() {
                for a in 0..n1 {
                    v2_lik[(k * n + i) * n1 + a] = laws.eve_likelihood(a, b as usize, y2[i] as usize);
                }
            }
        }
        let c1 = cb.v1_cloud(w0);
        for (k1, word1) in c1.chunks_exact(n).enumerate() {
            let w1 = k1 / s.q1;
            for k2 in 0..s.w2 * s.q2 {
                let w2 = k2 / s.q2;
                let mut l = 1.0;
                for (i, &a) in word1.iter().enumerate() {
                    l *= v2_lik[(k2 * n + i) * n1 + a as usize];
                    if l == 0.0 {
                        break;
                    }
                }
                weights[w1 * s.w2 + w2] += l;
            }
        }
    }
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) {
        return Err(Error::InvalidParameter {
            name: "eavesdropper observation likelihood",
            value: total,
        });
    }
    weights.iter_mut().for_each(|w| *w /= total);
    FiniteDistribution::new(weights)
}
