//! Critical `alpha` values by bisection on continuous margins.
//!
//! Two margins are solved for each `beta`:
//!
//! * `h(alpha) = m - f^2(m)`, whose zero is where `f^2(m) < m` starts to hold;
//! * `c(alpha) = z - f^3(m)`, whose zero is the onset of odd-period cycles
//!   (Pi is the singleton `{z}` on the relevant range).
//!
//! Each solve first pre-scans the bracket so several crossings are reported
//! rather than silently assumed away.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::class_g::alpha_bounds;
use crate::error::{Error, Result};
use crate::map::PollutionMap;
use crate::scalar::{linspace, Scalar};
use crate::tolerance::{THRESHOLD_PRESCAN, THRESHOLD_TOL};

/// A root of a margin function located by pre-scan + bisection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crossing<T> {
    pub alpha: T,
    pub residual: T,
    pub iterations: usize,
    /// Coarse locations of every sign change found by the pre-scan.
    pub prescan_crossings: Vec<T>,
}

impl<T> Crossing<T> {
    pub fn multiple(&self) -> bool {
        self.prescan_crossings.len() > 1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport<T> {
    pub beta: T,
    pub g_lower: T,
    pub g_upper: T,
    pub f2m_threshold: T,
    pub chaos_threshold: T,
    pub tol: T,
    pub f2m_iterations: usize,
    pub chaos_iterations: usize,
    pub f2m_residual: T,
    pub chaos_residual: T,
    /// Set when the chaos margin changes sign more than once; the smallest crossing is reported.
    pub multiple_crossings: bool,
    pub chaos_crossings: Vec<T>,
}

/// `m - f^2(m)` as a function of `alpha`.
pub fn f2m_margin<T: Scalar>(alpha: T, beta: T) -> T {
    let m = T::one() / (T::one() + beta);
    // construct directly: alpha > 0 and beta > 0 are preconditions of the solvers
    let map = PollutionMap::new(alpha, beta).expect("valid parameters");
    m - map.value_iter(m, 2)
}

/// `z - f^3(m)` as a function of `alpha`.
pub fn chaos_margin<T: Scalar>(alpha: T, beta: T) -> T {
    let m = T::one() / (T::one() + beta);
    let map = PollutionMap::new(alpha, beta).expect("valid parameters");
    map.fixed_point_unchecked() - map.value_iter(m, 3)
}

fn check_inputs<T: Scalar>(beta: T, tol: T) -> Result<()> {
    if !(beta > T::zero()) || !beta.is_finite() {
        return Err(Error::invalid(format!(
            "beta must be finite and > 0, got {beta}"
        )));
    }
    if !(tol >= T::lit(THRESHOLD_TOL)) || !tol.is_finite() {
        return Err(Error::invalid(format!(
            "tolerance must be >= 1e-12, got {tol}"
        )));
    }
    Ok(())
}

/// Pre-scans `[lo, hi]` (or `(lo, hi]`) with `THRESHOLD_PRESCAN` cells and
/// bisects the first sign change to width `tol`.
fn solve_margin<T: Scalar, F>(
    margin: F,
    lo: T,
    hi: T,
    tol: T,
    open_left: bool,
) -> Result<Crossing<T>>
where
    F: Fn(T) -> T + Sync,
{
    let n = THRESHOLD_PRESCAN;
    let grid: Vec<T> = linspace(lo, hi, n + 1)
        .skip(usize::from(open_left))
        .collect();
    let values: Vec<T> = grid.par_iter().map(|&a| margin(a)).collect();

    let mut brackets = Vec::new();
    for i in 0..grid.len().saturating_sub(1) {
        let (a, b) = (values[i], values[i + 1]);
        if a == T::zero() {
            brackets.push((grid[i], grid[i]));
        } else if b != T::zero() && a.signum() != b.signum() && a.is_finite() && b.is_finite() {
            brackets.push((grid[i], grid[i + 1]));
        }
    }
    if values.last() == Some(&T::zero()) {
        let last = *grid.last().unwrap();
        brackets.push((last, last));
    }
    let Some(&(mut a, mut b)) = brackets.first() else {
        return Err(Error::NoSignChange {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    };
    let prescan_crossings = brackets
        .iter()
        .map(|&(a, b)| (a + b) * T::lit(0.5))
        .collect();

    let mut fa = margin(a);
    let mut iterations = 0;
    while b - a > tol && iterations < 200 {
        let mid = a + (b - a) * T::lit(0.5);
        if mid <= a || mid >= b {
            break;
        }
        let fm = margin(mid);
        iterations += 1;
        if fm == T::zero() {
            a = mid;
            b = mid;
            break;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    let fb = margin(b);
    let (alpha, residual) = if fa.abs() <= fb.abs() {
        (a, fa)
    } else {
        (b, fb)
    };
    Ok(Crossing {
        alpha,
        residual,
        iterations,
        prescan_crossings,
    })
}

/// Onset of `f^2(m) < m` within the admissible window.
pub fn solve_f2m_threshold<T: Scalar>(beta: T, tol: T) -> Result<Crossing<T>> {
    check_inputs(beta, tol)?;
    let b = alpha_bounds(beta);
    // f(m) = m at the lower bound, so the margin vanishes there identically.
    solve_margin(|a| f2m_margin(a, beta), b.lower, b.upper, tol, true)
}

/// Onset of odd-period cycles, searched on `[f2m_threshold + 1e-9, g_upper]`.
pub fn solve_chaos_threshold<T: Scalar>(beta: T, tol: T) -> Result<Crossing<T>> {
    let f2m = solve_f2m_threshold(beta, tol)?;
    solve_chaos_from(beta, tol, f2m.alpha)
}

fn solve_chaos_from<T: Scalar>(beta: T, tol: T, f2m_threshold: T) -> Result<Crossing<T>> {
    let b = alpha_bounds(beta);
    let lo = f2m_threshold + T::lit(1e-9);
    solve_margin(|a| chaos_margin(a, beta), lo, b.upper, tol, false)
}

pub fn threshold_report<T: Scalar>(beta: T, tol: T) -> Result<ThresholdReport<T>> {
    let bounds = alpha_bounds(beta);
    let f2m = solve_f2m_threshold(beta, tol)?;
    let chaos = solve_chaos_from(beta, tol, f2m.alpha)?;
    Ok(ThresholdReport {
        beta,
        g_lower: bounds.lower,
        g_upper: bounds.upper,
        f2m_threshold: f2m.alpha,
        chaos_threshold: chaos.alpha,
        tol,
        f2m_iterations: f2m.iterations,
        chaos_iterations: chaos.iterations,
        f2m_residual: f2m.residual,
        chaos_residual: chaos.residual,
        multiple_crossings: chaos.multiple(),
        chaos_crossings: chaos.prescan_crossings,
    })
}

/// One sweep entry; failures are kept alongside their `beta`.
#[derive(Debug)]
pub struct SweepRow<T> {
    pub beta: T,
    pub report: Result<ThresholdReport<T>>,
}

/// Threshold reports for `n` uniformly spaced `beta` in `[lo, hi]`.
pub fn threshold_sweep<T: Scalar>(
    beta_range: (T, T),
    n: usize,
    tol: T,
) -> Result<Vec<SweepRow<T>>> {
    let (lo, hi) = beta_range;
    if n < 2 {
        return Err(Error::invalid("sweep needs n >= 2"));
    }
    if !(lo >= T::lit(0.5)) || !(hi >= lo) || !hi.is_finite() {
        return Err(Error::invalid("beta range must satisfy 0.5 <= lo <= hi"));
    }
    check_inputs(lo, tol)?;
    let betas: Vec<T> = linspace(lo, hi, n).collect();
    Ok(betas
        .into_par_iter()
        .map(|beta| SweepRow {
            beta,
            report: threshold_report(beta, tol),
        })
        .collect())
}
