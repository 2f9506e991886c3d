use alloc::vec::Vec;

use super::channel::DiscreteChannel;
use super::distribution::{ConditionalTable, FiniteDistribution, MAX_ALPHABET};
use super::joint::JointDistribution;
use crate::error::{Error, Result};

/// Largest alphabet accepted for `U`, `V1` and `V2`.
pub const MAX_AUX_ALPHABET: usize = 3;

/// Variable order of [`AuxiliaryChain::assemble_joint`].
pub const FULL_VARS: [&str; 7] = ["U", "V1", "V2", "X1", "X2", "Y1", "Y2"];

/// Variable order of [`AuxiliaryChain::output_joint`].
pub const OUTPUT_VARS: [&str; 5] = ["U", "V1", "V2", "Y1", "Y2"];

/// Which distribution family a chain belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChainClass {
    /// `V1` and `V2` conditionally independent given `U`.
    Inner,
    /// Arbitrary `p(v1, v2 | u)`.
    Outer,
}

#[derive(Debug, Clone, PartialEq)]
enum SplitLaw {
    Product {
        v1: ConditionalTable,
        v2: ConditionalTable,
    },
    /// Columns are `(v1, v2)` pairs with `v2` fastest.
    Joint {
        v1: usize,
        v2: usize,
        table: ConditionalTable,
    },
}

/// `p(u) p(v1, v2 | u) p(x1 | v1) p(x2 | v2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxiliaryChain {
    p_u: FiniteDistribution,
    split: SplitLaw,
    x1_given_v1: ConditionalTable,
    x2_given_v2: ConditionalTable,
}

fn check_aux(what: &'static str, size: usize) -> Result<()> {
    if size > MAX_AUX_ALPHABET {
        return Err(Error::AlphabetTooLarge {
            what,
            size,
            max: MAX_AUX_ALPHABET,
        });
    }
    Ok(())
}

fn check_rows(what: &'static str, table: &ConditionalTable, rows: usize) -> Result<()> {
    if table.rows() != rows {
        return Err(Error::DimensionMismatch {
            what,
            expected: rows,
            found: table.rows(),
        });
    }
    Ok(())
}

fn check_inputs(x1: &ConditionalTable, x2: &ConditionalTable) -> Result<()> {
    for (what, size) in [("X1", x1.cols()), ("X2", x2.cols())] {
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

impl AuxiliaryChain {
    /// A chain with `p(v1, v2 | u) = p(v1 | u) p(v2 | u)`.
    pub fn inner(
        p_u: FiniteDistribution,
        v1_given_u: ConditionalTable,
        v2_given_u: ConditionalTable,
        x1_given_v1: ConditionalTable,
        x2_given_v2: ConditionalTable,
    ) -> Result<Self> {
        check_aux("U", p_u.len())?;
        check_aux("V1", v1_given_u.cols())?;
        check_aux("V2", v2_given_u.cols())?;
        check_rows("rows of p(v1|u)", &v1_given_u, p_u.len())?;
        check_rows("rows of p(v2|u)", &v2_given_u, p_u.len())?;
        check_rows("rows of p(x1|v1)", &x1_given_v1, v1_given_u.cols())?;
        check_rows("rows of p(x2|v2)", &x2_given_v2, v2_given_u.cols())?;
        check_inputs(&x1_given_v1, &x2_given_v2)?;
        Ok(Self {
            p_u,
            split: SplitLaw::Product {
                v1: v1_given_u,
                v2: v2_given_u,
            },
            x1_given_v1,
            x2_given_v2,
        })
    }

    /// A chain with a joint `p(v1, v2 | u)`; columns of `v_given_u` are
    /// `(v1, v2)` pairs with `v2` varying fastest.
    pub fn outer(
        p_u: FiniteDistribution,
        v1_size: usize,
        v2_size: usize,
        v_given_u: ConditionalTable,
        x1_given_v1: ConditionalTable,
        x2_given_v2: ConditionalTable,
    ) -> Result<Self> {
        check_aux("U", p_u.len())?;
        check_aux("V1", v1_size)?;
        check_aux("V2", v2_size)?;
        check_rows("rows of p(v1,v2|u)", &v_given_u, p_u.len())?;
        if v_given_u.cols() != v1_size * v2_size {
            return Err(Error::DimensionMismatch {
                what: "columns of p(v1,v2|u)",
                expected: v1_size * v2_size,
                found: v_given_u.cols(),
            });
        }
        check_rows("rows of p(x1|v1)", &x1_given_v1, v1_size)?;
        check_rows("rows of p(x2|v2)", &x2_given_v2, v2_size)?;
        check_inputs(&x1_given_v1, &x2_given_v2)?;
        Ok(Self {
            p_u,
            split: SplitLaw::Joint {
                v1: v1_size,
                v2: v2_size,
                table: v_given_u,
            },
            x1_given_v1,
            x2_given_v2,
        })
    }

    /// Re-tags an inner chain as an outer chain with the same law.
    pub fn to_outer(&self) -> Self {
        match &self.split {
            SplitLaw::Joint { .. } => self.clone(),
            SplitLaw::Product { v1, v2 } => {
                let (n1, n2) = (v1.cols(), v2.cols());
                let mut data = Vec::with_capacity(self.u_size() * n1 * n2);
                for u in 0..self.u_size() {
                    for a in 0..n1 {
                        for b in 0..n2 {
                            data.push(v1.get(u, a) * v2.get(u, b));
                        }
                    }
                }
                Self {
                    p_u: self.p_u.clone(),
                    split: SplitLaw::Joint {
                        v1: n1,
                        v2: n2,
                        // rows of a product of distributions are normalized
                        table: ConditionalTable::new(self.u_size(), n1 * n2, data)
                            .expect("product of distributions"),
                    },
                    x1_given_v1: self.x1_given_v1.clone(),
                    x2_given_v2: self.x2_given_v2.clone(),
                }
            }
        }
    }

    pub fn class(&self) -> ChainClass {
        match self.split {
            SplitLaw::Product { .. } => ChainClass::Inner,
            SplitLaw::Joint { .. } => ChainClass::Outer,
        }
    }

    pub fn u_size(&self) -> usize {
        self.p_u.len()
    }

    pub fn v1_size(&self) -> usize {
        match &self.split {
            SplitLaw::Product { v1, .. } => v1.cols(),
            SplitLaw::Joint { v1, .. } => *v1,
        }
    }

    pub fn v2_size(&self) -> usize {
        match &self.split {
            SplitLaw::Product { v2, .. } => v2.cols(),
            SplitLaw::Joint { v2, .. } => *v2,
        }
    }

    pub fn x1_size(&self) -> usize {
        self.x1_given_v1.cols()
    }

    pub fn x2_size(&self) -> usize {
        self.x2_given_v2.cols()
    }

    pub fn p_u(&self) -> &FiniteDistribution {
        &self.p_u
    }

    pub fn x1_given_v1(&self) -> &ConditionalTable {
        &self.x1_given_v1
    }

    pub fn x2_given_v2(&self) -> &ConditionalTable {
        &self.x2_given_v2
    }

    /// `p(v1 | u)` for inner chains.
    pub fn v1_given_u(&self) -> Option<&ConditionalTable> {
        match &self.split {
            SplitLaw::Product { v1, .. } => Some(v1),
            SplitLaw::Joint { .. } => None,
        }
    }

    /// `p(v2 | u)` for inner chains.
    pub fn v2_given_u(&self) -> Option<&ConditionalTable> {
        match &self.split {
            SplitLaw::Product { v2, .. } => Some(v2),
            SplitLaw::Joint { .. } => None,
        }
    }

    #[inline]
    pub fn p_v_given_u(&self, u: usize, v1: usize, v2: usize) -> f64 {
        match &self.split {
            SplitLaw::Product { v1: t1, v2: t2 } => t1.get(u, v1) * t2.get(u, v2),
            SplitLaw::Joint { v2: n2, table, .. } => table.get(u, v1 * n2 + v2),
        }
    }

    fn check_channel(&self, ch: &DiscreteChannel) -> Result<()> {
        let shape = ch.shape();
        for (what, expected, found) in [
            ("X1 alphabet", shape.x1, self.x1_size()),
            ("X2 alphabet", shape.x2, self.x2_size()),
        ] {
            if expected != found {
                return Err(Error::DimensionMismatch {
                    what,
                    expected,
                    found,
                });
            }
        }
        Ok(())
    }

    /// The full joint over `(U, V1, V2, X1, X2, Y1, Y2)`.
    pub fn assemble_joint(&self, ch: &DiscreteChannel) -> Result<JointDistribution> {
        self.check_channel(ch)?;
        let s = ch.shape();
        let (nu, n1, n2) = (self.u_size(), self.v1_size(), self.v2_size());
        let mut mass = Vec::with_capacity(nu * n1 * n2 * s.inputs() * s.outputs());
        for u in 0..nu {
            let pu = self.p_u.probs()[u];
            for v1 in 0..n1 {
                for v2 in 0..n2 {
                    let puv = pu * self.p_v_given_u(u, v1, v2);
                    for x1 in 0..s.x1 {
                        let p1 = puv * self.x1_given_v1.get(v1, x1);
                        for x2 in 0..s.x2 {
                            let p12 = p1 * self.x2_given_v2.get(v2, x2);
                            mass.extend(ch.output_law(x1, x2).iter().map(|&py| p12 * py));
                        }
                    }
                }
            }
        }
        let vars = [
            (FULL_VARS[0], nu),
            (FULL_VARS[1], n1),
            (FULL_VARS[2], n2),
            (FULL_VARS[3], s.x1),
            (FULL_VARS[4], s.x2),
            (FULL_VARS[5], s.y1),
            (FULL_VARS[6], s.y2),
        ];
        JointDistribution::new(&vars, mass)
    }

    /// Table sizes of the `(U, V1, V2, Y1, Y2)` joint.
    pub fn output_sizes(&self, ch: &DiscreteChannel) -> [usize; 5] {
        let s = ch.shape();
        [self.u_size(), self.v1_size(), self.v2_size(), s.y1, s.y2]
    }

    /// Writes the `(U, V1, V2, Y1, Y2)` joint into `out`, `Y2` fastest.
    ///
    /// The inputs are summed out; every information term of the region
    /// bounds only involves these five variables.
    pub fn fill_output_joint(&self, ch: &DiscreteChannel, out: &mut Vec<f64>) -> Result<()> {
        self.check_channel(ch)?;
        let s = ch.shape();
        let (nu, n1, n2) = (self.u_size(), self.v1_size(), self.v2_size());
        let ny = s.outputs();
        // p(y1, y2 | v1, v2)
        let mut through = alloc::vec![0.0; n1 * n2 * ny];
        for v1 in 0..n1 {
            for v2 in 0..n2 {
                let row = &mut through[(v1 * n2 + v2) * ny..(v1 * n2 + v2 + 1) * ny];
                for x1 in 0..s.x1 {
                    let p1 = self.x1_given_v1.get(v1, x1);
                    if p1 == 0.0 {
                        continue;
                    }
                    for x2 in 0..s.x2 {
                        let p12 = p1 * self.x2_given_v2.get(v2, x2);
                        if p12 == 0.0 {
                            continue;
                        }
                        for (acc, &py) in row.iter_mut().zip(ch.output_law(x1, x2)) {
                            *acc += p12 * py;
                        }
                    }
                }
            }
        }
        out.clear();
        out.reserve(nu * n1 * n2 * ny);
        for u in 0..nu {
            let pu = self.p_u.probs()[u];
            for v1 in 0..n1 {
                for v2 in 0..n2 {
                    let puv = pu * self.p_v_given_u(u, v1, v2);
                    let row = &through[(v1 * n2 + v2) * ny..(v1 * n2 + v2 + 1) * ny];
                    out.extend(row.iter().map(|&py| puv * py));
                }
            }
        }
        Ok(())
    }

    pub fn output_joint(&self, ch: &DiscreteChannel) -> Result<JointDistribution> {
        let mut mass = Vec::new();
        self.fill_output_joint(ch, &mut mass)?;
        let sizes = self.output_sizes(ch);
        let vars: Vec<(&str, usize)> = OUTPUT_VARS.iter().copied().zip(sizes).collect();
        JointDistribution::new(&vars, mass)
    }
}

/// Free-function form of [`AuxiliaryChain::assemble_joint`].
pub fn assemble_joint(aux: &AuxiliaryChain, ch: &DiscreteChannel) -> Result<JointDistribution> {
    aux.assemble_joint(ch)
}
