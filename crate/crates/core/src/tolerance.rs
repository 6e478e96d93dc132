//! Process-wide comparison tolerance.
//!
//! Every "≤" in a bound or condition check is evaluated as `a <= b + tol`.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Default tolerance used for all probability comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

static TOLERANCE_BITS: AtomicU64 = AtomicU64::new(DEFAULT_TOLERANCE.to_bits());

/// Current global tolerance.
pub fn tolerance() -> f64 {
    f64::from_bits(TOLERANCE_BITS.load(Ordering::Relaxed))
}

/// Replace the global tolerance. Must be finite and non-negative.
pub fn set_tolerance(tol: f64) -> Result<()> {
    if !tol.is_finite() || tol < 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    TOLERANCE_BITS.store(tol.to_bits(), Ordering::Relaxed);
    Ok(())
}

/// `a ≤ b` up to the global tolerance.
#[inline]
pub fn leq(a: f64, b: f64) -> bool {
    a <= b + tolerance()
}

/// `a < b` by more than the global tolerance.
#[inline]
pub fn strictly_less(a: f64, b: f64) -> bool {
    a < b - tolerance()
}
