//! Bracketing root finders used for the critical times.

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_BISECTIONS: usize = 400;
const MAX_GOLDEN_STEPS: usize = 400;

/// Shrinks `[lo, hi]` around the point where `pred` changes value until the
/// bracket is no wider than `tol`. Returns the final bracket.
pub fn bisect_predicate<T: Real, F>(mut lo: T, mut hi: T, tol: T, mut pred: F) -> Result<(T, T)>
where
    F: FnMut(T) -> Result<bool>,
{
    check_tol(tol)?;
    let at_lo = pred(lo)?;
    if pred(hi)? == at_lo {
        return Err(Error::NoBracket {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    }
    let half = T::lit(0.5);
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= tol {
            return Ok((lo, hi));
        }
        let mid = lo + (hi - lo) * half;
        if mid <= lo || mid >= hi {
            // bracket at float resolution
            return Ok((lo, hi));
        }
        if pred(mid)? == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Numerical("bisection did not converge"))
}

/// Bisection for a sign change of `f`; returns the bracket midpoint.
pub fn bisect<T: Real, F>(lo: T, hi: T, tol: T, mut f: F) -> Result<T>
where
    F: FnMut(T) -> T,
{
    let (l, h) = bisect_predicate(lo, hi, tol, |x| Ok(f(x) >= T::zero()))?;
    Ok(l + (h - l) * T::lit(0.5))
}

/// Golden-section search for a minimum of a unimodal `f` on `[lo, hi]`.
pub fn golden_min<T: Real, F>(mut lo: T, mut hi: T, tol: T, mut f: F) -> Result<(T, T)>
where
    F: FnMut(T) -> Result<T>,
{
    check_tol(tol)?;
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) * T::lit(0.5);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..MAX_GOLDEN_STEPS {
        if hi - lo <= tol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}

pub(crate) fn check_tol<T: Real>(tol: T) -> Result<()> {
    if tol > T::zero() && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol.as_f64()))
    }
}
