//! Time values and tolerant comparisons.
//!
//! All times are `f64` in the evader's time units (the evader moves at unit
//! speed, so road length and travel time coincide). Comparisons go through
//! the helpers below so that every module agrees on one tolerance.

/// Comparison tolerance for times.
pub const EPS_T: f64 = 1e-9;

/// `a ≤ b` up to [`EPS_T`].
#[inline]
pub fn le(a: f64, b: f64) -> bool {
    a <= b + EPS_T
}

/// `a < b` by more than [`EPS_T`].
#[inline]
pub fn lt(a: f64, b: f64) -> bool {
    a < b - EPS_T
}

/// `a > b` by more than [`EPS_T`].
#[inline]
pub fn gt(a: f64, b: f64) -> bool {
    a > b + EPS_T
}

/// `|a − b| ≤ EPS_T`. Two infinities of the same sign compare equal.
#[inline]
pub fn eq(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= EPS_T
}
