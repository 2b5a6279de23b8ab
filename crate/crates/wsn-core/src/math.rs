//! Float helpers that work both with and without `std`.
//!
//! `f64::sqrt` and friends live in `std`, not `core`; under `no_std` the
//! same operations come from `libm`. Keeping the shims in one place means
//! the rest of the crate never has to care.

#[inline]
pub fn sqrt(x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.sqrt()
    }
    #[cfg(not(feature = "std"))]
    {
        libm::sqrt(x)
    }
}

#[inline]
pub fn exp(x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.exp()
    }
    #[cfg(not(feature = "std"))]
    {
        libm::exp(x)
    }
}

#[inline]
pub fn floor(x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.floor()
    }
    #[cfg(not(feature = "std"))]
    {
        libm::floor(x)
    }
}

#[inline]
pub fn ln(x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.ln()
    }
    #[cfg(not(feature = "std"))]
    {
        libm::log(x)
    }
}

/// Round to the nearest integer with halves rounding up (2.5 -> 3).
///
/// Implemented by comparing the exact fractional part rather than adding
/// 0.5, which avoids the classic double-rounding pitfall near .5 values.
/// Only meaningful for non-negative inputs small enough to be exact in f64,
/// which is all this crate ever feeds it.
#[inline]
pub fn round_half_up(x: f64) -> u64 {
    debug_assert!(x >= 0.0 && x.is_finite());
    let f = floor(x);
    let n = f as u64;
    if x - f >= 0.5 {
        n + 1
    } else {
        n
    }
}

/// Population variance (divide by n). Returns 0 for an empty slice.
pub fn population_variance(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n
}
