//! One-sided tests used to judge Monte Carlo trends.

use crate::math::sqrt;

/// One-sided 95% critical value of the standard normal.
pub const Z_ONE_SIDED_95: f64 = 1.645;

/// z statistic of `p_b - p_a` for two error counts with a pooled standard
/// error. Zero when both proportions are equal at 0 or 1.
pub fn proportion_increase_z(errors_a: u64, trials_a: u64, errors_b: u64, trials_b: u64) -> f64 {
    let (na, nb) = (trials_a as f64, trials_b as f64);
    let (pa, pb) = (errors_a as f64 / na, errors_b as f64 / nb);
    let pooled = (errors_a + errors_b) as f64 / (na + nb);
    let se = sqrt(pooled * (1.0 - pooled) * (1.0 / na + 1.0 / nb));
    z_of(pb - pa, se)
}

/// z statistic of `mean_b - mean_a` for two independent estimates.
pub fn mean_increase_z(mean_a: f64, se_a: f64, mean_b: f64, se_b: f64) -> f64 {
    z_of(mean_b - mean_a, sqrt(se_a * se_a + se_b * se_b))
}

fn z_of(diff: f64, se: f64) -> f64 {
    if se > 0.0 {
        diff / se
    } else if diff > 0.0 {
        f64::INFINITY
    } else if diff < 0.0 {
        f64::NEG_INFINITY
    } else {
        0.0
    }
}

/// True when the second value is significantly larger at the 95% level.
pub fn significant_increase(z: f64) -> bool {
    z > Z_ONE_SIDED_95
}
