use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::info::{
    AuxiliaryChain, ChainClass, ChannelShape, ConditionalTable, FiniteDistribution,
    MAX_AUX_ALPHABET,
};

/// Default refusal threshold for the number of chains in one sweep.
pub const DEFAULT_CHAIN_CAP: u128 = 20_000_000;

/// How the input maps `p(x_k | v_k)` are chosen during a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputMaps {
    /// Swept over the same simplex grid as the auxiliary laws.
    Swept,
    /// Fixed to `X_k = V_k`; needs `|V_k| = |X_k|`.
    Identity,
}

/// Alphabet sizes and resolution of a discrete sweep.
///
/// Each conditional row is drawn from the simplex grid whose coordinates are
/// multiples of `1 / (resolution - 1)`. Resolution 1 is the single uniform
/// row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub u: usize,
    pub v1: usize,
    pub v2: usize,
    pub resolution: usize,
    pub input_maps: InputMaps,
    pub chain_cap: u128,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            u: 2,
            v1: 2,
            v2: 2,
            resolution: 3,
            input_maps: InputMaps::Swept,
            chain_cap: DEFAULT_CHAIN_CAP,
        }
    }
}

/// All points of the probability simplex in `dim` coordinates whose entries
/// are multiples of `1 / (resolution - 1)`, in lexicographic order of the
/// integer compositions.
pub fn simplex_grid(dim: usize, resolution: usize) -> Vec<Vec<f64>> {
    if dim == 0 {
        return Vec::new();
    }
    if resolution <= 1 {
        return alloc::vec![alloc::vec![1.0 / dim as f64; dim]];
    }
    let total = resolution - 1;
    let mut out = Vec::new();
    let mut parts = alloc::vec![0usize; dim];
    compositions(total, 0, &mut parts, &mut |p| {
        out.push(p.iter().map(|&c| c as f64 / total as f64).collect());
    });
    out
}

fn compositions(remaining: usize, at: usize, parts: &mut [usize], emit: &mut impl FnMut(&[usize])) {
    if at + 1 == parts.len() {
        parts[at] = remaining;
        emit(parts);
        return;
    }
    for c in 0..=remaining {
        parts[at] = c;
        compositions(remaining - c, at + 1, parts, emit);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    PU,
    V1Row,
    V2Row,
    VJointRow,
    X1Row,
    X2Row,
}

/// One mixed-radix block of chains: every slot takes one row of the simplex
/// grid of its width.
#[derive(Debug, Clone)]
struct Block {
    slots: Vec<Slot>,
    count: u128,
}

/// The chains of one sweep, addressable by index.
///
/// Outer sweeps enumerate the correlated `p(v1, v2 | u)` grid first and then
/// the product laws of the inner grid, since a product of grid rows is in
/// general not a point of the joint grid.
#[derive(Debug, Clone)]
pub struct ChainGrid {
    class: ChainClass,
    spec: GridSpec,
    x1: usize,
    x2: usize,
    blocks: Vec<Block>,
    /// simplex grid per row width, indexed by width
    grids: Vec<Vec<Vec<f64>>>,
    count: u128,
}

fn check_aux_size(what: &'static str, size: usize) -> Result<()> {
    if size == 0 {
        return Err(Error::EmptyAlphabet);
    }
    if size > MAX_AUX_ALPHABET {
        return Err(Error::AlphabetTooLarge {
            what,
            size,
            max: MAX_AUX_ALPHABET,
        });
    }
    Ok(())
}

impl ChainGrid {
    pub fn new(inputs: ChannelShape, class: ChainClass, spec: GridSpec) -> Result<Self> {
        check_aux_size("U", spec.u)?;
        check_aux_size("V1", spec.v1)?;
        check_aux_size("V2", spec.v2)?;
        if spec.resolution == 0 {
            return Err(Error::InvalidParameter {
                name: "resolution",
                value: 0.0,
            });
        }
        if spec.input_maps == InputMaps::Identity {
            for (what, v, x) in [("V1 vs X1", spec.v1, inputs.x1), ("V2 vs X2", spec.v2, inputs.x2)] {
                if v != x {
                    return Err(Error::DimensionMismatch {
                        what,
                        expected: x,
                        found: v,
                    });
                }
            }
        }
        let block = |joint: bool| {
            let mut slots = alloc::vec![Slot::PU];
            if joint {
                slots.extend(core::iter::repeat_n(Slot::VJointRow, spec.u));
            } else {
                slots.extend(core::iter::repeat_n(Slot::V1Row, spec.u));
                slots.extend(core::iter::repeat_n(Slot::V2Row, spec.u));
            }
            if spec.input_maps == InputMaps::Swept {
                slots.extend(core::iter::repeat_n(Slot::X1Row, spec.v1));
                slots.extend(core::iter::repeat_n(Slot::X2Row, spec.v2));
            }
            Block { slots, count: 0 }
        };
        let blocks = match class {
            ChainClass::Inner => alloc::vec![block(false)],
            ChainClass::Outer => alloc::vec![block(true), block(false)],
        };
        let max_width = [spec.u, spec.v1, spec.v2, spec.v1 * spec.v2, inputs.x1, inputs.x2]
            .into_iter()
            .max()
            .unwrap_or(1);
        let mut grid = Self {
            class,
            spec,
            x1: inputs.x1,
            x2: inputs.x2,
            blocks,
            grids: alloc::vec![Vec::new(); max_width + 1],
            count: 0,
        };
        let mut total: u128 = 0;
        for b in 0..grid.blocks.len() {
            let mut count: u128 = 1;
            for k in 0..grid.blocks[b].slots.len() {
                let w = grid.width(grid.blocks[b].slots[k]);
                if grid.grids[w].is_empty() {
                    grid.grids[w] = simplex_grid(w, spec.resolution);
                }
                count = count.saturating_mul(grid.grids[w].len() as u128);
            }
            grid.blocks[b].count = count;
            total = total.saturating_add(count);
        }
        if total > spec.chain_cap {
            return Err(Error::GridTooLarge {
                count: total,
                cap: spec.chain_cap,
            });
        }
        grid.count = total;
        Ok(grid)
    }

    fn width(&self, slot: Slot) -> usize {
        match slot {
            Slot::PU => self.spec.u,
            Slot::V1Row => self.spec.v1,
            Slot::V2Row => self.spec.v2,
            Slot::VJointRow => self.spec.v1 * self.spec.v2,
            Slot::X1Row => self.x1,
            Slot::X2Row => self.x2,
        }
    }

    pub fn class(&self) -> ChainClass {
        self.class
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    /// Number of chains in the sweep.
    pub fn len(&self) -> u128 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// The chain at `index`; within a block the first slot varies slowest.
    pub fn chain(&self, index: u64) -> Result<AuxiliaryChain> {
        let mut rem = index as u128;
        let mut block = None;
        for b in &self.blocks {
            if rem < b.count {
                block = Some(b);
                break;
            }
            rem -= b.count;
        }
        let block = block.ok_or(Error::InvalidParameter {
            name: "chain index",
            value: index as f64,
        })?;
        let slots = &block.slots;
        let mut picks = alloc::vec![0usize; slots.len()];
        for (i, slot) in slots.iter().enumerate().rev() {
            let n = self.grids[self.width(*slot)].len() as u128;
            picks[i] = (rem % n) as usize;
            rem /= n;
        }
        let rows_of = |kind: fn(&Slot) -> bool| -> Vec<f64> {
            let mut data = Vec::new();
            for (i, s) in slots.iter().enumerate() {
                if kind(s) {
                    data.extend_from_slice(&self.grids[self.width(*s)][picks[i]]);
                }
            }
            data
        };
        let p_u = FiniteDistribution::new(rows_of(|s| matches!(s, Slot::PU)))?;
        let (x1, x2) = match self.spec.input_maps {
            InputMaps::Identity => (
                ConditionalTable::identity(self.x1)?,
                ConditionalTable::identity(self.x2)?,
            ),
            InputMaps::Swept => (
                ConditionalTable::new(self.spec.v1, self.x1, rows_of(|s| matches!(s, Slot::X1Row)))?,
                ConditionalTable::new(self.spec.v2, self.x2, rows_of(|s| matches!(s, Slot::X2Row)))?,
            ),
        };
        let (nu, n1, n2) = (self.spec.u, self.spec.v1, self.spec.v2);
        if slots.contains(&Slot::VJointRow) {
            return AuxiliaryChain::outer(
                p_u,
                n1,
                n2,
                ConditionalTable::new(nu, n1 * n2, rows_of(|s| matches!(s, Slot::VJointRow)))?,
                x1,
                x2,
            );
        }
        let chain = AuxiliaryChain::inner(
            p_u,
            ConditionalTable::new(nu, n1, rows_of(|s| matches!(s, Slot::V1Row)))?,
            ConditionalTable::new(nu, n2, rows_of(|s| matches!(s, Slot::V2Row)))?,
            x1,
            x2,
        )?;
        Ok(match self.class {
            ChainClass::Inner => chain,
            ChainClass::Outer => chain.to_outer(),
        })
    }
}
