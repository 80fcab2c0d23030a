//! Spectral radius of the adjacency tensor.
//!
//! `ρ(H) = r!·max Σ_e Π_{v∈e} x_v / Σ x_v^r` over non-negative `x`. Two
//! independent solvers are provided: a shifted tensor power iteration for any
//! connected hypergraph and a bisection on α for hypertrees, where ρ is
//! characterised by the α at which a normal labeling exists.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::labeling::WeightedIncidence;
use crate::roots::bisect;
use crate::scalar::{factorial, Scalar};
use crate::sweep::{rooted_labeling, Root};
use serde::{Deserialize, Serialize};

pub const DEFAULT_MAX_ITER: usize = 100_000;
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    PowerIteration,
    HypertreeBisection,
}

/// Point estimate with a bracket `lower ≤ rho ≤ upper`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralResult<T> {
    pub rho: T,
    pub lower: T,
    pub upper: T,
    pub iterations: usize,
    pub method: Method,
}

impl<T: Scalar> SpectralResult<T> {
    pub fn width(&self) -> T {
        self.upper - self.lower
    }
}

/// `(ρ_r, ρ'_r) = ((r−1)!·4^{1/r}, (r−1)!·(2+√5)^{1/r})`.
pub fn thresholds<T: Scalar>(r: usize) -> (T, T) {
    let f = factorial::<T>(r - 1);
    let inv = T::one() / T::from_usize_lossy(r);
    (f * T::lit(4.0).powf(inv), f * (T::lit(2.0) + T::lit(5.0).sqrt()).powf(inv))
}

/// `ρ = (r−1)!·α^{−1/r}`.
pub fn rho_from_alpha<T: Scalar>(r: usize, alpha: T) -> T {
    factorial::<T>(r - 1) * alpha.powf(-T::one() / T::from_usize_lossy(r))
}

/// `α = ((r−1)!/ρ)^r`.
pub fn alpha_from_rho<T: Scalar>(r: usize, rho: T) -> T {
    (factorial::<T>(r - 1) / rho).powi(r as i32)
}

/// Power iteration outcome including the final positive vector.
#[derive(Clone, Debug)]
pub struct PowerRun<T> {
    pub result: SpectralResult<T>,
    pub vector: Vec<T>,
    pub converged: bool,
}

/// Shifted power iteration `x_i ← (y_i + x_i^{r−1})^{1/(r−1)}` with
/// `y_i = Σ_{e∋i} Π_{j∈e∖i} x_j`, normalised to max 1.
///
/// The shift keeps the iteration convergent on bipartite and other periodic
/// structures, where the unshifted map oscillates. The bracket is the pair
/// of Collatz bounds `min/max (r−1)!·y_i/x_i^{r−1}`, valid for any positive
/// `x`.
pub fn power_run<T: Scalar>(h: &Hypergraph, tol: T, max_iter: usize) -> Result<PowerRun<T>> {
    if !h.is_connected() {
        return Err(Error::NotConnected);
    }
    let (n, r) = (h.n(), h.r());
    let fact = factorial::<T>(r - 1);
    let inv = T::one() / T::from_usize_lossy(r - 1);
    let mut x = vec![T::one(); n];
    let mut y = vec![T::zero(); n];
    let mut best = (T::zero(), T::infinity());
    let mut iterations = 0;
    let mut converged = false;
    loop {
        y.iter_mut().for_each(|v| *v = T::zero());
        for e in h.edges() {
            // product of the others, without division
            for (k, &i) in e.iter().enumerate() {
                let mut p = T::one();
                for (l, &j) in e.iter().enumerate() {
                    if l != k {
                        p = p * x[j];
                    }
                }
                y[i] = y[i] + p;
            }
        }
        let mut lo = T::infinity();
        let mut hi = T::zero();
        for i in 0..n {
            let q = fact * y[i] / x[i].powi(r as i32 - 1);
            lo = lo.min(q);
            hi = hi.max(q);
        }
        best = (best.0.max(lo), best.1.min(hi));
        if best.1 - best.0 <= tol {
            converged = true;
            break;
        }
        if iterations >= max_iter {
            break;
        }
        iterations += 1;
        let mut top = T::zero();
        for i in 0..n {
            x[i] = (y[i] + x[i].powi(r as i32 - 1)).powf(inv);
            top = top.max(x[i]);
        }
        x.iter_mut().for_each(|v| *v = *v / top);
    }
    let (lower, upper) = best;
    Ok(PowerRun {
        result: SpectralResult {
            rho: (lower + upper) / T::lit(2.0),
            lower,
            upper,
            iterations,
            method: Method::PowerIteration,
        },
        vector: x,
        converged,
    })
}

/// Spectral radius by power iteration; errors if the bracket does not close
/// to `tol` within `max_iter` steps.
pub fn rho_power<T: Scalar>(h: &Hypergraph, tol: T, max_iter: usize) -> Result<SpectralResult<T>> {
    let run = power_run(h, tol, max_iter)?;
    if run.converged {
        Ok(run.result)
    } else {
        Err(Error::NotConverged {
            lower: run.result.lower.as_f64(),
            upper: run.result.upper.as_f64(),
            iterations: run.result.iterations,
        })
    }
}

/// Root vertex sum of the sweep at α, `+∞` when infeasible.
fn sweep_value<T: Scalar>(h: &Hypergraph, alpha: T, caps: &[T]) -> T {
    match rooted_labeling(h, alpha, Root::Vertex(0), caps) {
        Ok(Some((_, s))) => s,
        _ => T::infinity(),
    }
}

/// The α at which the leaves-to-root sweep of a hypertree is exactly normal,
/// bracketed as `(lo, hi)`.
pub fn hypertree_alpha<T: Scalar>(h: &Hypergraph, alpha_tol: T) -> Result<(T, T, usize)> {
    if !h.is_hypertree() {
        return Err(Error::NotHypertree);
    }
    let caps = vec![T::one(); h.n()];
    let lo = T::lit(1e-9);
    if sweep_value(h, lo, &caps) >= T::one() {
        return Err(Error::OutOfDomain("root sum already reaches 1 at the lower bracket".into()));
    }
    Ok(bisect(lo, T::one(), alpha_tol, |a| sweep_value(h, a, &caps) >= T::one()))
}

/// Spectral radius of a hypertree by bisection on α.
///
/// `tol` bounds the width of the returned ρ bracket when the precision of
/// `T` allows it; otherwise bisection stops at floating-point resolution.
pub fn rho_hypertree<T: Scalar>(h: &Hypergraph, tol: T) -> Result<SpectralResult<T>> {
    let r = h.r();
    // ρ is decreasing in α with |dρ/dα| = ρ/(rα) ≤ (r−1)!·α^{−1−1/r}/r.
    let alpha_tol = T::lit(1e-13).min(tol * T::lit(1e-3));
    let (lo, hi, steps) = hypertree_alpha(h, alpha_tol)?;
    let lower = rho_from_alpha(r, hi);
    let upper = rho_from_alpha(r, lo);
    let mid = rho_from_alpha(r, (lo + hi) / T::lit(2.0));
    Ok(SpectralResult {
        rho: mid.max(lower).min(upper),
        lower,
        upper,
        iterations: steps,
        method: Method::HypertreeBisection,
    })
}

/// The consistently normal labeling of the Perron vector:
/// `B(v,e) = (r−1)!·Π_{j∈e} x_j / (ρ·x_v^r)`, normal at `α = ((r−1)!/ρ)^r`.
pub fn eigenvector_to_labeling<T: Scalar>(h: &Hypergraph, x: &[T], rho: T) -> Result<WeightedIncidence<T>> {
    if x.len() != h.n() {
        return Err(Error::InvalidParameter("vector length differs from vertex count".into()));
    }
    if let Some(i) = x.iter().position(|&v| !(v > T::zero())) {
        return Err(Error::OutOfDomain(format!("component {i} of the vector is not positive")));
    }
    let r = h.r();
    let fact = factorial::<T>(r - 1);
    let mut w = WeightedIncidence::empty(h);
    for (k, e) in h.edges().iter().enumerate() {
        let p = e.iter().fold(T::one(), |acc, &j| acc * x[j]);
        for &v in e {
            w.set(h, v, k, fact * p / (rho * x[v].powi(r as i32)));
        }
    }
    Ok(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverChoice {
    Auto,
    Power,
    Tree,
}

/// Spectral radius by the requested solver; `Auto` uses bisection for
/// hypertrees and power iteration otherwise.
pub fn spectral_radius<T: Scalar>(h: &Hypergraph, tol: T, choice: SolverChoice) -> Result<SpectralResult<T>> {
    match choice {
        SolverChoice::Tree => rho_hypertree(h, tol),
        SolverChoice::Power => rho_power(h, tol, DEFAULT_MAX_ITER),
        SolverChoice::Auto if h.is_hypertree() => rho_hypertree(h, tol),
        SolverChoice::Auto => rho_power(h, tol, DEFAULT_MAX_ITER),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdVerdict {
    BelowRhoR,
    AtRhoR,
    StrictlyBetween,
    AtRhoPrimeR,
    AboveRhoPrimeR,
}

/// Place a bracket relative to `(ρ_r, ρ'_r)`.
pub fn place_bracket<T: Scalar>(r: usize, lower: T, upper: T, tol: T) -> Result<ThresholdVerdict> {
    let (t1, t2) = thresholds::<T>(r);
    let tight = upper - lower <= tol;
    let contains = |t: T| lower - tol <= t && t <= upper + tol;
    if tight && contains(t1) {
        Ok(ThresholdVerdict::AtRhoR)
    } else if tight && contains(t2) {
        Ok(ThresholdVerdict::AtRhoPrimeR)
    } else if upper < t1 {
        Ok(ThresholdVerdict::BelowRhoR)
    } else if lower > t1 && upper < t2 {
        Ok(ThresholdVerdict::StrictlyBetween)
    } else if lower > t2 {
        Ok(ThresholdVerdict::AboveRhoPrimeR)
    } else {
        let threshold = if lower <= t1 && t1 <= upper { t1 } else { t2 };
        Err(Error::Inconclusive { lower: lower.as_f64(), upper: upper.as_f64(), threshold: threshold.as_f64() })
    }
}

/// Compare ρ(H) with both thresholds. Uses the hypertree solver when it
/// applies; otherwise power iteration, whose bracket is used as-is even when
/// it did not close to `tol` (it may still be decisive).
pub fn compare_to_thresholds<T: Scalar>(h: &Hypergraph, tol: T) -> Result<(ThresholdVerdict, SpectralResult<T>)> {
    let solver_tol = tol / T::lit(4.0);
    let res = if h.is_hypertree() {
        rho_hypertree(h, solver_tol)?
    } else {
        power_run(h, solver_tol, DEFAULT_MAX_ITER)?.result
    };
    Ok((place_bracket(h.r(), res.lower, res.upper, tol)?, res))
}
