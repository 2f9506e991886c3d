use alloc::vec::Vec;

use super::polytope::{enumerate_vertices, non_negativity, Halfspace3, Polytope3, GEOM_TOL};
use super::triple::RateTriple;
use crate::error::{Error, Result};

/// Bounds at or below this are treated as zero by [`RateBounds::clamped`].
pub const CLAMP_TOL: f64 = 1e-12;

/// Right-hand sides of a rate polytope of the form
///
/// ```text
/// R0 <= r0,  R1 <= r1,  R2 <= r2,  R1 + R2 <= r12,  R0 + R1 + R2 <= r012
/// ```
///
/// intersected with the non-negative orthant. Absent bounds are omitted.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RateBounds {
    pub r0: Option<f64>,
    pub r1: Option<f64>,
    pub r2: Option<f64>,
    pub r12: Option<f64>,
    pub r012: Option<f64>,
}

impl RateBounds {
    pub fn five(r0: f64, r1: f64, r2: f64, r12: f64, r012: f64) -> Self {
        Self {
            r0: Some(r0),
            r1: Some(r1),
            r2: Some(r2),
            r12: Some(r12),
            r012: Some(r012),
        }
    }

    fn entries(&self) -> [(Option<f64>, [f64; 3]); 5] {
        [
            (self.r0, [1.0, 0.0, 0.0]),
            (self.r1, [0.0, 1.0, 0.0]),
            (self.r2, [0.0, 0.0, 1.0]),
            (self.r12, [0.0, 1.0, 1.0]),
            (self.r012, [1.0, 1.0, 1.0]),
        ]
    }

    /// Every present bound replaced by its positive part. Values within
    /// [`CLAMP_TOL`] of zero become exactly zero, so differences of equal
    /// information terms evaluated along different paths do not leave
    /// rounding residue.
    pub fn clamped(&self) -> Self {
        let c = |x: Option<f64>| x.map(|v| if v > CLAMP_TOL { v } else { 0.0 });
        Self {
            r0: c(self.r0),
            r1: c(self.r1),
            r2: c(self.r2),
            r12: c(self.r12),
            r012: c(self.r012),
        }
    }

    pub fn is_bounded(&self) -> bool {
        let r0 = self.r0.is_some() || self.r012.is_some();
        let r1 = self.r1.is_some() || self.r12.is_some() || self.r012.is_some();
        let r2 = self.r2.is_some() || self.r12.is_some() || self.r012.is_some();
        r0 && r1 && r2
    }

    /// The bound rows followed by the three non-negativity rows.
    pub fn halfspaces(&self) -> Vec<Halfspace3> {
        let mut rows: Vec<Halfspace3> = self
            .entries()
            .iter()
            .filter_map(|(b, n)| b.map(|b| Halfspace3::new(*n, b)))
            .collect();
        rows.extend(non_negativity());
        rows
    }

    pub fn contains(&self, p: &RateTriple, tol: f64) -> bool {
        let ok = |b: Option<f64>, v: f64| b.is_none_or(|b| v <= b + tol);
        p.r0 >= -tol
            && p.r1 >= -tol
            && p.r2 >= -tol
            && ok(self.r0, p.r0)
            && ok(self.r1, p.r1)
            && ok(self.r2, p.r2)
            && ok(self.r12, p.r1 + p.r2)
            && ok(self.r012, p.total())
    }

    /// Vertices of the polytope; empty when some bound is negative.
    pub fn vertices(&self) -> Result<Vec<RateTriple>> {
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        Ok(enumerate_vertices(&self.halfspaces(), GEOM_TOL))
    }

    pub fn polytope(&self) -> Result<Polytope3> {
        Polytope3::new(self.halfspaces())
    }
}
