//! Float helpers missing from `core`.

#[inline]
pub(crate) fn log2(x: f64) -> f64 {
    libm::log2(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub(crate) fn exp2(x: f64) -> f64 {
    libm::exp2(x)
}

/// `-p log2 p` with the `0 log 0 = 0` convention.
#[inline]
pub(crate) fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        -p * log2(p)
    } else {
        0.0
    }
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}
