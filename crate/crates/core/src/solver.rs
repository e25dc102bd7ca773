//! Bisection on a monotone function of the win probability.
//!
//! Every binding-constraint branch of the optimiser has a closed form except
//! the at-least objective; bisection solves that one and serves as the
//! independent check for the others.

use crate::error::{Error, Result};

pub const VALUE_TOLERANCE: f64 = 1e-12;
pub const WIDTH_TOLERANCE: f64 = 1e-14;
pub const MAX_ITERATIONS: usize = 200;

/// Finds `w` in `[lo, hi]` with `f(w) = target` for monotone `f`, increasing
/// or decreasing.
///
/// Stops once `|f(w) - target| < 1e-12`, the bracket is narrower than
/// `1e-14`, or after 200 halvings.
///
/// ```
/// use perfrating::solver::bisection_root;
///
/// let w = bisection_root(|w| w * w, 0.75, 0.0, 1.0).unwrap();
/// assert!((w - 0.75f64.sqrt()).abs() < 1e-12);
/// ```
pub fn bisection_root<F>(f: F, target: f64, lo: f64, hi: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let f_lo = f(lo);
    let f_hi = f(hi);
    let no_root = || Error::NoRoot {
        target,
        f_lo,
        f_hi,
    };
    if !target.is_finite() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(no_root());
    }
    let d_lo = f_lo - target;
    let d_hi = f_hi - target;
    if d_lo == 0.0 {
        return Ok(lo);
    }
    if d_hi == 0.0 {
        return Ok(hi);
    }
    if d_lo.signum() == d_hi.signum() {
        return Err(no_root());
    }
    let increasing = d_lo < 0.0;

    let mut mid = 0.5 * (lo + hi);
    for _ in 0..MAX_ITERATIONS {
        mid = 0.5 * (lo + hi);
        let d = f(mid) - target;
        if d.abs() < VALUE_TOLERANCE || hi - lo < WIDTH_TOLERANCE {
            break;
        }
        if (d < 0.0) == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(mid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::score::at_least_probability;

    #[test]
    fn square_root() {
        let w = bisection_root(|w| w * w, 0.75, 0.0, 1.0).unwrap();
        assert!((w - 0.866_025_403_784_438_6).abs() < 1e-12);
    }

    #[test]
    fn decreasing_function() {
        let w = bisection_root(|w| (1.0 - w) * (1.0 - w), 0.75, 0.0, 1.0).unwrap();
        assert!((w - 0.133_974_596_215_561_4).abs() < 1e-12);
    }

    #[test]
    fn at_least_tail() {
        let f = |w| at_least_probability(w, 17, 20).unwrap();
        let r = bisection_root(f, 0.75, 0.0, 1.0).unwrap();
        assert!((f(r) - 0.75).abs() < 1e-10);
    }

    #[test]
    fn reversed_bracket() {
        let w = bisection_root(|w| w * w, 0.25, 1.0, 0.0).unwrap();
        assert!((w - 0.5).abs() < 1e-12);
    }

    #[test]
    fn endpoint_roots() {
        assert_eq!(bisection_root(|w| w, 0.0, 0.0, 1.0).unwrap(), 0.0);
        assert_eq!(bisection_root(|w| w, 1.0, 0.0, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn unbracketed_target() {
        let err = bisection_root(|w| w * w, 1.5, 0.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::NoRoot { .. }));
        assert!(bisection_root(|w| w, f64::NAN, 0.0, 1.0).is_err());
    }
}
