//! Floating-point comparison used by every equality check in the crate.

/// Relative tolerance for rate and weight equalities.
pub const REL_TOL: f64 = 1e-9;
/// Absolute floor applied near zero.
pub const ABS_TOL: f64 = 1e-12;
/// Default absolute tolerance on spectral gaps.
pub const GAP_TOL: f64 = 1e-8;

#[inline]
pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= ABS_TOL.max(REL_TOL * a.abs().max(b.abs()))
}
