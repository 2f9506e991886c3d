use core::cmp::Ordering;

/// A rate tuple `(R0, R1, R2)` in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RateTriple {
    pub r0: f64,
    pub r1: f64,
    pub r2: f64,
}

impl RateTriple {
    pub const ORIGIN: RateTriple = RateTriple {
        r0: 0.0,
        r1: 0.0,
        r2: 0.0,
    };

    pub const fn new(r0: f64, r1: f64, r2: f64) -> Self {
        Self { r0, r1, r2 }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.r0, self.r1, self.r2]
    }

    pub fn private_sum(&self) -> f64 {
        self.r1 + self.r2
    }

    pub fn total(&self) -> f64 {
        self.r0 + self.r1 + self.r2
    }

    /// `self >= other - tol` in every component.
    pub fn dominates(&self, other: &RateTriple, tol: f64) -> bool {
        self.r0 >= other.r0 - tol && self.r1 >= other.r1 - tol && self.r2 >= other.r2 - tol
    }

    pub fn max_abs_diff(&self, other: &RateTriple) -> f64 {
        (self.r0 - other.r0)
            .abs()
            .max((self.r1 - other.r1).abs())
            .max((self.r2 - other.r2).abs())
    }

    /// Lexicographic order on `(r0, r1, r2)` using `f64::total_cmp`.
    pub fn lex_cmp(&self, other: &RateTriple) -> Ordering {
        self.r0
            .total_cmp(&other.r0)
            .then(self.r1.total_cmp(&other.r1))
            .then(self.r2.total_cmp(&other.r2))
    }
}

/// Coordinate of a [`RateTriple`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    R0,
    R1,
    R2,
}

/// A point in a two-dimensional projection of a rate region.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RatePair {
    pub a: f64,
    pub b: f64,
}

impl RatePair {
    pub const fn new(a: f64, b: f64) -> Self {
        Self { a, b }
    }

    pub fn dominates(&self, other: &RatePair, tol: f64) -> bool {
        self.a >= other.a - tol && self.b >= other.b - tol
    }
}
