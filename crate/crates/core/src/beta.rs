//! The map `f_β(x) = β/(1 − x)` and the scalar equations built from it.
//!
//! A path whose far end is a leaf edge carries, under a β-normal labeling,
//! corner `f_β^{t−1}(β)` at the attaching vertex after `t` edges. Every
//! closed-form certificate in the crate is assembled from these iterates.

use crate::error::{Error, Result};
use crate::roots::bisect;
use crate::scalar::{beta_star, Scalar};
use serde::Serialize;

/// `β` together with the two fixed points of `f_β`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BetaParams<T> {
    pub beta: T,
    pub fixed_lo: T,
    pub fixed_hi: T,
}

impl<T: Scalar> BetaParams<T> {
    pub fn new(beta: T) -> Result<Self> {
        if !(beta > T::zero() && beta < T::lit(0.25)) {
            return Err(Error::OutOfDomain(format!("beta = {beta} must lie in (0, 1/4)")));
        }
        let disc = (T::one() - T::lit(4.0) * beta).sqrt();
        let two = T::lit(2.0);
        Ok(BetaParams { beta, fixed_lo: (T::one() - disc) / two, fixed_hi: (T::one() + disc) / two })
    }

    /// `β = √5 − 2`, where `√(1 − 4β) = β`.
    pub fn star() -> Self {
        let beta = beta_star::<T>();
        let two = T::lit(2.0);
        BetaParams { beta, fixed_lo: (T::one() - beta) / two, fixed_hi: (T::one() + beta) / two }
    }

    pub fn f(&self, x: T) -> T {
        self.beta / (T::one() - x)
    }

    pub fn iter(&self, x: T, n: usize) -> Result<T> {
        f_iter(self.beta, x, n)
    }
}

/// `f_β^n(x)`, failing if any iterate (or `x`) reaches 1.
pub fn f_iter<T: Scalar>(beta: T, x: T, n: usize) -> Result<T> {
    if !(beta > T::zero() && beta < T::one()) {
        return Err(Error::OutOfDomain(format!("beta = {beta} must lie in (0, 1)")));
    }
    let mut x = x;
    for k in 0..=n {
        if !(x < T::one()) {
            return Err(Error::OutOfDomain(format!("iterate {k} equals {x} >= 1")));
        }
        if k < n {
            x = beta / (T::one() - x);
        }
    }
    Ok(x)
}

/// Corner at the attaching vertex of a hanging path of `t ≥ 1` edges,
/// `f_β^{t−1}(β)`.
pub fn path_corner<T: Scalar>(beta: T, t: usize) -> Result<T> {
    if t == 0 {
        return Err(Error::InvalidParameter("path length must be at least 1".into()));
    }
    f_iter(beta, beta, t - 1)
}

/// The unique `x` in `(fixed_lo, fixed_hi)` with `f_β^n(x) = 1 − x`.
pub fn solve_symmetric<T: Scalar>(beta: T, n: usize) -> Result<T> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let p = BetaParams::new(beta)?;
    // Between the fixed points the iterates stay between them, so the
    // evaluation below never leaves the domain.
    let g = |x: T| p.iter(x, n).map(|y| y + x >= T::one()).unwrap_or(true);
    let (lo, hi, _) = bisect(p.fixed_lo, p.fixed_hi, T::lit(1e-15), g);
    Ok((lo + hi) / T::lit(2.0))
}

/// Solve `z₁z₂z₃ = β` with `z = 1 − f_β^{t−1}(β)` for the three arm lengths
/// of `F_{m,n,k}`; returns `(β_{m,n,k}, 2·β^{−1/3})`.
///
/// The root exceeds 1/4 for short arms (`(1 − β)³ = β` when all arms have
/// one edge), so the search runs over `(0, 1)` and treats any iterate that
/// leaves the domain as "β too large".
pub fn solve_beta_f3<T: Scalar>(m: usize, n: usize, k: usize) -> Result<(T, T)> {
    if m == 0 || n == 0 || k == 0 {
        return Err(Error::InvalidParameter("arm lengths must be at least 1".into()));
    }
    let too_large = |b: T| -> bool {
        let mut prod = T::one();
        for t in [n, k, m] {
            match path_corner(b, t) {
                Ok(c) if c < T::one() => prod = prod * (T::one() - c),
                _ => return true,
            }
        }
        prod <= b
    };
    let (lo, hi, _) = bisect(T::zero(), T::one(), T::lit(1e-15), too_large);
    let b = (lo + hi) / T::lit(2.0);
    Ok((b, T::lit(2.0) * b.powf(-T::one() / T::lit(3.0))))
}

/// Product of the corners of the central edge of the dagger
/// `H_{i,j,k,l}` under a β-normal labeling of its four hanging paths,
/// `Π (1 − f_β^{t−1}(β))`.
pub fn dagger_g<T: Scalar>(i: usize, j: usize, k: usize, l: usize, beta: T) -> Result<T> {
    if !(1 <= i && i <= j && j <= k && k <= l) {
        return Err(Error::InvalidParameter(format!("need 1 <= i <= j <= k <= l, got ({i},{j},{k},{l})")));
    }
    BetaParams::new(beta)?;
    [i, j, k, l].iter().try_fold(T::one(), |acc, &t| Ok(acc * (T::one() - path_corner(beta, t)?)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> f64 {
        5f64.sqrt() - 2.0
    }

    #[test]
    fn star_params_match_general_formula() {
        let s = BetaParams::<f64>::star();
        let g = BetaParams::new(b()).unwrap();
        assert!((s.fixed_lo - g.fixed_lo).abs() < 1e-15);
        assert!((s.fixed_hi - g.fixed_hi).abs() < 1e-15);
        assert!((s.f(s.fixed_lo) - s.fixed_lo).abs() < 1e-14);
        assert!((s.f(s.fixed_hi) - s.fixed_hi).abs() < 1e-14);
        // golden-ratio relation
        assert!((s.fixed_hi - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
        assert!((s.fixed_hi.powi(3) - s.beta).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(BetaParams::new(0.3f64).is_err());
        assert!(f_iter(0.3f64, 0.9, 3).is_err());
        assert!(f_iter(0.2f64, 1.0, 0).is_err());
        assert!(path_corner(0.2f64, 0).is_err());
        assert!(dagger_g(2, 1, 3, 4, b()).is_err());
    }

    #[test]
    fn first_iterate() {
        let v = f_iter(b(), b(), 1).unwrap();
        assert!((v - (5f64.sqrt() - 1.0) / 4.0).abs() < 1e-15);
    }

    #[test]
    fn fixed_point_is_stationary() {
        let p = BetaParams::<f64>::star();
        for n in 0..50 {
            assert!((f_iter(p.beta, p.fixed_lo, n).unwrap() - p.fixed_lo).abs() < 1e-13);
        }
    }

    #[test]
    fn iterates_from_two_beta_decrease_to_fixed_lo() {
        let p = BetaParams::<f64>::star();
        let mut prev = f_iter(p.beta, 2.0 * p.beta, 0).unwrap();
        for n in 1..50 {
            let cur = f_iter(p.beta, 2.0 * p.beta, n).unwrap();
            assert!(cur < prev && cur > p.fixed_lo);
            prev = cur;
        }
        assert!(prev - p.fixed_lo < 1e-9);
    }

    #[test]
    fn iterates_below_fixed_lo_increase() {
        let p = BetaParams::<f64>::star();
        let mut prev = p.beta;
        for n in 1..40 {
            let cur = f_iter(p.beta, p.beta, n).unwrap();
            assert!(cur > prev && cur < p.fixed_lo);
            prev = cur;
        }
    }

    #[test]
    fn symmetric_root_n1_closed_form() {
        let x = solve_symmetric(b(), 1).unwrap();
        assert!((x - (1.0 - b().sqrt())).abs() < 1e-13);
        assert!((x - 0.514_131_728_243_354).abs() < 1e-12);
    }

    #[test]
    fn symmetric_root_increases_to_fixed_hi() {
        let p = BetaParams::<f64>::star();
        let mut prev = 0.0;
        for n in 1..=60 {
            let x = solve_symmetric(p.beta, n).unwrap();
            assert!(x > p.fixed_lo && x < p.fixed_hi);
            assert!((f_iter(p.beta, x, n).unwrap() + x - 1.0).abs() < 1e-12);
            assert!(x > prev);
            prev = x;
        }
        assert!(p.fixed_hi - prev < 1e-6, "gap {}", p.fixed_hi - prev);
    }

    #[test]
    fn f3_short_arms() {
        let (bb, rho) = solve_beta_f3::<f64>(1, 1, 1).unwrap();
        assert!(((1.0 - bb).powi(3) - bb).abs() < 1e-13);
        assert!((bb - 0.317672).abs() < 1e-6);
        assert!((rho - 2.0 * bb.powf(-1.0 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn f3_decreasing_and_limit() {
        let mut prev = 1.0;
        for m in 1..=40 {
            let (bb, _) = solve_beta_f3::<f64>(m, m, m).unwrap();
            assert!(bb < prev && bb > b());
            prev = bb;
        }
        assert!(prev - b() < 1e-6);
        let (b1, _) = solve_beta_f3::<f64>(2, 3, 4).unwrap();
        let (b2, _) = solve_beta_f3::<f64>(3, 3, 4).unwrap();
        let (b3, _) = solve_beta_f3::<f64>(2, 4, 4).unwrap();
        let (b4, _) = solve_beta_f3::<f64>(2, 3, 5).unwrap();
        assert!(b2 < b1 && b3 < b1 && b4 < b1);
    }

    #[test]
    fn dagger_values() {
        let g = |i, j, k, l| dagger_g(i, j, k, l, b()).unwrap();
        let x1 = 1.0 - b();
        let x2 = 1.0 - b() / (1.0 - b());
        assert!((g(1, 1, 1, 1) - x1.powi(4)).abs() < 1e-15);
        assert!((g(2, 2, 2, 2) - x2.powi(4)).abs() < 1e-15);
        assert!((g(2, 2, 2, 2) - 0.227_965_677_734_867).abs() < 1e-12);
        assert!((g(1, 1, 4, 5) - 0.236_565_986_826_555).abs() < 1e-12);
        assert!((g(1, 1, 4, 6) - 0.234_502_892_734_503).abs() < 1e-12);
        assert!(g(1, 1, 4, 5) > b() && g(1, 1, 4, 6) < b());
    }

    #[test]
    fn generic_over_f32() {
        let p = BetaParams::<f32>::star();
        let x = solve_symmetric(p.beta, 3).unwrap();
        assert!((f_iter(p.beta, x, 3).unwrap() + x - 1.0).abs() < 1e-5);
    }
}
