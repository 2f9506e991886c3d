use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::polytope::{Halfspace3, Polytope3};
use crate::error::{Error, Result};

/// Coefficients closer than this are treated as equal when pruning.
const COEFF_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
}

/// `coeffs . x (<= | =) constant`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub constant: f64,
}

impl Constraint {
    fn lhs(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn holds(&self, x: &[f64], tol: f64) -> bool {
        let lhs = self.lhs(x);
        match self.relation {
            Relation::Le => lhs <= self.constant + tol,
            Relation::Eq => (lhs - self.constant).abs() <= tol,
        }
    }

    fn scale(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    fn normalized(mut self) -> Self {
        let s = self.scale();
        if s > 0.0 {
            self.coeffs.iter_mut().for_each(|c| *c /= s);
            self.constant /= s;
        }
        self
    }
}

/// Linear constraints over named variables.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfspaceSystem {
    variables: Vec<String>,
    rows: Vec<Constraint>,
}

impl HalfspaceSystem {
    pub fn new<S: AsRef<str>>(variables: &[S]) -> Self {
        Self {
            variables: variables.iter().map(|s| s.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn rows(&self) -> &[Constraint] {
        &self.rows
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.variables
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn push(&mut self, row: Constraint) -> Result<()> {
        if row.coeffs.len() != self.variables.len() {
            return Err(Error::DimensionMismatch {
                what: "constraint coefficients",
                expected: self.variables.len(),
                found: row.coeffs.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    fn sparse(&mut self, terms: &[(&str, f64)], relation: Relation, constant: f64) -> Result<()> {
        let mut coeffs = alloc::vec![0.0; self.variables.len()];
        for (name, c) in terms {
            coeffs[self.index_of(name)?] += c;
        }
        self.push(Constraint {
            coeffs,
            relation,
            constant,
        })
    }

    /// Adds `sum(c * var) <= constant`.
    pub fn add_le(&mut self, terms: &[(&str, f64)], constant: f64) -> Result<()> {
        self.sparse(terms, Relation::Le, constant)
    }

    /// Adds `sum(c * var) = constant`.
    pub fn add_eq(&mut self, terms: &[(&str, f64)], constant: f64) -> Result<()> {
        self.sparse(terms, Relation::Eq, constant)
    }

    /// Adds `var >= 0` for every variable.
    pub fn non_negative(&mut self) {
        let n = self.variables.len();
        for i in 0..n {
            let mut coeffs = alloc::vec![0.0; n];
            coeffs[i] = -1.0;
            self.rows.push(Constraint {
                coeffs,
                relation: Relation::Le,
                constant: 0.0,
            });
        }
    }

    pub fn is_satisfied(&self, x: &[f64], tol: f64) -> bool {
        self.rows.iter().all(|r| r.holds(x, tol))
    }

    /// Projects out `var` by Fourier–Motzkin elimination.
    ///
    /// Equalities involving `var` are split into two inequalities; every
    /// upper bound on `var` is paired with every lower bound. Emitted rows
    /// are scaled to unit max-coefficient and pruned by pairwise dominance.
    pub fn fm_eliminate(&self, var: &str) -> Result<HalfspaceSystem> {
        let k = self.index_of(var)?;
        let drop_k = |c: &[f64]| -> Vec<f64> {
            c.iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, &v)| v)
                .collect()
        };
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        let mut rest = Vec::new();
        for row in &self.rows {
            let c = row.coeffs[k];
            if c.abs() <= COEFF_TOL {
                rest.push(Constraint {
                    coeffs: drop_k(&row.coeffs),
                    relation: row.relation,
                    constant: row.constant,
                });
                continue;
            }
            let le = Constraint {
                relation: Relation::Le,
                ..row.clone()
            };
            let flipped = || Constraint {
                coeffs: row.coeffs.iter().map(|v| -v).collect(),
                relation: Relation::Le,
                constant: -row.constant,
            };
            match (row.relation, c > 0.0) {
                (Relation::Le, true) => upper.push(le),
                (Relation::Le, false) => lower.push(le),
                (Relation::Eq, true) => {
                    upper.push(le);
                    lower.push(flipped());
                }
                (Relation::Eq, false) => {
                    lower.push(le);
                    upper.push(flipped());
                }
            }
        }
        for u in &upper {
            for l in &lower {
                let (cu, cl) = (u.coeffs[k], -l.coeffs[k]);
                let coeffs: Vec<f64> = u
                    .coeffs
                    .iter()
                    .zip(&l.coeffs)
                    .map(|(a, b)| cl * a + cu * b)
                    .collect();
                rest.push(Constraint {
                    coeffs: drop_k(&coeffs),
                    relation: Relation::Le,
                    constant: cl * u.constant + cu * l.constant,
                });
            }
        }
        let variables = self
            .variables
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, v)| v.clone())
            .collect();
        Ok(HalfspaceSystem {
            variables,
            rows: prune(rest),
        })
    }

    /// Converts a system over exactly three variables, taken in `order`,
    /// into a [`Polytope3`].
    pub fn to_polytope(&self, order: [&str; 3]) -> Result<Polytope3> {
        if self.variables.len() != 3 {
            return Err(Error::DimensionMismatch {
                what: "variables of a 3-D system",
                expected: 3,
                found: self.variables.len(),
            });
        }
        let idx = [
            self.index_of(order[0])?,
            self.index_of(order[1])?,
            self.index_of(order[2])?,
        ];
        let mut rows = Vec::new();
        let mut infeasible = false;
        for r in &self.rows {
            let n = [r.coeffs[idx[0]], r.coeffs[idx[1]], r.coeffs[idx[2]]];
            if n.iter().all(|c| c.abs() <= COEFF_TOL) {
                let ok = match r.relation {
                    Relation::Le => r.constant >= -super::polytope::GEOM_TOL,
                    Relation::Eq => r.constant.abs() <= super::polytope::GEOM_TOL,
                };
                infeasible |= !ok;
                continue;
            }
            rows.push(Halfspace3::new(n, r.constant));
            if r.relation == Relation::Eq {
                rows.push(Halfspace3::new([-n[0], -n[1], -n[2]], -r.constant));
            }
        }
        if infeasible {
            // 0 <= negative: keep an explicit contradiction so the vertex set is empty
            rows.push(Halfspace3::new([1.0, 0.0, 0.0], -1.0));
            rows.push(Halfspace3::new([-1.0, 0.0, 0.0], 0.0));
        }
        Polytope3::new(rows)
    }
}

/// Free-function form of [`HalfspaceSystem::fm_eliminate`].
pub fn fm_eliminate(sys: &HalfspaceSystem, var: &str) -> Result<HalfspaceSystem> {
    sys.fm_eliminate(var)
}

/// Drops inequality rows whose normalized coefficients equal another row's
/// and whose constant is not tighter.
fn prune(rows: Vec<Constraint>) -> Vec<Constraint> {
    let mut out: Vec<Constraint> = Vec::with_capacity(rows.len());
    for row in rows.into_iter().map(Constraint::normalized) {
        if row.relation == Relation::Eq {
            out.push(row);
            continue;
        }
        let same = out.iter().position(|o| {
            o.relation == Relation::Le
                && o.coeffs
                    .iter()
                    .zip(&row.coeffs)
                    .all(|(a, b)| (a - b).abs() <= COEFF_TOL)
        });
        match same {
            Some(i) => {
                if row.constant < out[i].constant {
                    out[i].constant = row.constant;
                }
            }
            None => out.push(row),
        }
    }
    out
}
