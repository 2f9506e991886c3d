use alloc::vec::Vec;

use super::triple::RateTriple;
use crate::error::{Error, Result};

/// Tolerance for geometric comparisons, in bits.
pub const GEOM_TOL: f64 = 1e-9;

/// Pivot magnitude below which a 3x3 system counts as singular.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Half-width of the sanity box every polytope must fit into.
pub const SANITY_BOX: f64 = 64.0;

/// `normal . r <= bound`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Halfspace3 {
    pub normal: [f64; 3],
    pub bound: f64,
}

impl Halfspace3 {
    pub const fn new(normal: [f64; 3], bound: f64) -> Self {
        Self { normal, bound }
    }

    #[inline]
    pub fn slack(&self, p: &RateTriple) -> f64 {
        self.bound - (self.normal[0] * p.r0 + self.normal[1] * p.r1 + self.normal[2] * p.r2)
    }

    #[inline]
    pub fn holds(&self, p: &RateTriple, tol: f64) -> bool {
        self.slack(p) >= -tol
    }
}

/// `-r_i <= 0` for all three coordinates.
pub fn non_negativity() -> [Halfspace3; 3] {
    [
        Halfspace3::new([-1.0, 0.0, 0.0], 0.0),
        Halfspace3::new([0.0, -1.0, 0.0], 0.0),
        Halfspace3::new([0.0, 0.0, -1.0], 0.0),
    ]
}

/// Solves `rows . x = rhs` by Gaussian elimination with partial pivoting.
pub(crate) fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        if a[pivot][col].abs() < SINGULAR_TOL {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let mut s = b[row];
        for k in row + 1..3 {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

pub(crate) fn push_unique(out: &mut Vec<RateTriple>, p: RateTriple, tol: f64) {
    if !out.iter().any(|q| q.max_abs_diff(&p) <= tol) {
        out.push(p);
    }
}

/// Basic feasible solutions of `rows`: every 3-subset of constraints whose
/// boundary planes meet in one point satisfying all rows within `tol`.
pub fn enumerate_vertices(rows: &[Halfspace3], tol: f64) -> Vec<RateTriple> {
    let m = rows.len();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let a = [rows[i].normal, rows[j].normal, rows[k].normal];
                let b = [rows[i].bound, rows[j].bound, rows[k].bound];
                let Some(x) = solve3(a, b) else { continue };
                // adding 0.0 turns -0.0 into +0.0
                let p = RateTriple::from_array(x.map(|c| c + 0.0));
                if rows.iter().all(|h| h.holds(&p, tol)) {
                    push_unique(&mut out, p, tol);
                }
            }
        }
    }
    out
}

/// A polytope in `(R0, R1, R2)` with its vertices computed on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope3 {
    halfspaces: Vec<Halfspace3>,
    vertices: Vec<RateTriple>,
}

impl Polytope3 {
    /// Fails with [`Error::Unbounded`] if the feasible set reaches the
    /// boundary of the sanity box.
    pub fn new(halfspaces: Vec<Halfspace3>) -> Result<Self> {
        let mut rows = halfspaces.clone();
        for axis in 0..3 {
            let mut n = [0.0; 3];
            n[axis] = 1.0;
            rows.push(Halfspace3::new(n, SANITY_BOX));
            n[axis] = -1.0;
            rows.push(Halfspace3::new(n, SANITY_BOX));
        }
        let vertices = enumerate_vertices(&rows, GEOM_TOL);
        let edge = SANITY_BOX - GEOM_TOL;
        if vertices
            .iter()
            .any(|v| v.to_array().iter().any(|c| c.abs() >= edge))
        {
            return Err(Error::Unbounded);
        }
        Ok(Self {
            halfspaces,
            vertices,
        })
    }

    /// Intersection of `halfspaces` with the non-negative orthant.
    pub fn in_orthant(mut halfspaces: Vec<Halfspace3>) -> Result<Self> {
        halfspaces.extend(non_negativity());
        Self::new(halfspaces)
    }

    pub fn halfspaces(&self) -> &[Halfspace3] {
        &self.halfspaces
    }

    pub fn vertices(&self) -> &[RateTriple] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, p: &RateTriple, tol: f64) -> bool {
        self.halfspaces.iter().all(|h| h.holds(p, tol))
    }

    /// Both vertex sets lie inside the other polytope.
    pub fn same_set(&self, other: &Polytope3, tol: f64) -> bool {
        self.vertices.iter().all(|v| other.contains(v, tol))
            && other.vertices.iter().all(|v| self.contains(v, tol))
    }
}

/// Free-function form of [`Polytope3::vertices`].
pub fn vertices(p: &Polytope3) -> Vec<RateTriple> {
    p.vertices.clone()
}
