//! Bracketing root search shared by the solvers.

use crate::scalar::Scalar;

/// Shrink `[lo, hi]` around the switch point of a monotone predicate, where
/// `above(lo)` is false and `above(hi)` is true.
///
/// Stops when the bracket is no wider than `tol` or when the midpoint no
/// longer separates the endpoints in floating point.
pub fn bisect<T: Scalar>(mut lo: T, mut hi: T, tol: T, mut above: impl FnMut(T) -> bool) -> (T, T, usize) {
    let two = T::lit(2.0);
    let mut steps = 0;
    while hi - lo > tol && steps < 2000 {
        let mid = lo + (hi - lo) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        if above(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        steps += 1;
    }
    (lo, hi, steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt2() {
        let (lo, hi, _) = bisect(1.0f64, 2.0, 1e-14, |x| x * x >= 2.0);
        assert!(lo <= 2f64.sqrt() && 2f64.sqrt() <= hi);
        assert!(hi - lo <= 1e-14);
    }

    #[test]
    fn stops_at_float_resolution() {
        let (lo, hi, steps) = bisect(1.0f32, 2.0, 0.0, |x| x >= 1.5);
        assert!(hi - lo <= f32::EPSILON * 2.0);
        assert!(steps < 100);
    }
}
