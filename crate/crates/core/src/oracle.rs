//! Independent cross-checks that do not go through the chaos criterion:
//! odd-period orbit search by root scanning, lap-count entropy, and the
//! Cobb-Douglas baseline that never turns chaotic.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::PollutionMap;
use crate::scalar::{linspace, tol, Scalar};
use crate::tolerance::ORBIT_RESIDUAL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitMethod {
    CycleDetect,
    RootScan,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitFinding<T> {
    pub period: usize,
    pub representative: T,
    pub residual: T,
    pub method: OrbitMethod,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate<T> {
    /// Exponential lap growth rate in nats per iterate, clamped at zero.
    pub value: T,
    /// Fitted polynomial degree of lap growth, reported for diagnostics.
    pub poly_degree: T,
    pub laps_per_level: Vec<usize>,
    pub levels: usize,
}

/// `true` when `x` is `p`-periodic to tolerance but not `d`-periodic for any proper divisor `d`.
pub fn has_minimal_period<T: Scalar>(map: &PollutionMap<T>, x: T, period: usize) -> bool {
    let eps = tol::<T>(ORBIT_RESIDUAL);
    if (map.value_iter(x, period) - x).abs() > eps {
        return false;
    }
    (1..period)
        .filter(|d| period.is_multiple_of(*d))
        .all(|d| (map.value_iter(x, d) - x).abs() > eps)
}

fn bisect_periodic<T: Scalar>(map: &PollutionMap<T>, p: usize, mut lo: T, mut hi: T) -> T {
    let g = |x: T| map.value_iter(x, p) - x;
    let mut glo = g(lo);
    for _ in 0..200 {
        let mid = lo + (hi - lo) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid);
        if gm == T::zero() {
            return mid;
        }
        if gm.signum() == glo.signum() {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    if glo.abs() <= g(hi).abs() {
        lo
    } else {
        hi
    }
}

/// Attracting cycle reached from the peak, if its period is odd and above 1.
fn detect_attracting_odd_cycle<T: Scalar>(
    map: &PollutionMap<T>,
    max_period: usize,
) -> Option<OrbitFinding<T>> {
    let mut x = map.value_iter(map.peak_location(), 20_000);
    if !x.is_finite() {
        return None;
    }
    // settle further so the orbit sits on the cycle to rounding
    x = map.value_iter(x, 1000);
    let eps = tol::<T>(ORBIT_RESIDUAL) * T::lit(1e-2);
    let period = (1..=max_period).find(|&p| (map.value_iter(x, p) - x).abs() <= eps)?;
    if period % 2 == 1 && period > 1 && has_minimal_period(map, x, period) {
        Some(OrbitFinding {
            period,
            representative: x,
            residual: (map.value_iter(x, period) - x).abs(),
            method: OrbitMethod::CycleDetect,
        })
    } else {
        None
    }
}

/// Searches odd periods `3, 5, ..., max_period` for a periodic point of that
/// exact minimal period.
///
/// Absence is not a proof: longer odd periods or orbits finer than the scan
/// can be missed.
pub fn find_odd_cycle<T: Scalar>(
    map: &PollutionMap<T>,
    max_period: usize,
    scan_points: usize,
) -> Result<Option<OrbitFinding<T>>> {
    if max_period < 3 || max_period.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "max_period must be odd and >= 3, got {max_period}"
        )));
    }
    if scan_points < 10_000 {
        return Err(Error::invalid(format!(
            "scan_points must be >= 10^4, got {scan_points}"
        )));
    }
    if let Some(found) = detect_attracting_odd_cycle(map, max_period) {
        return Ok(Some(found));
    }
    let xs: Vec<T> = linspace(T::zero(), T::one(), scan_points + 1).collect();
    for p in (3..=max_period).step_by(2) {
        let rs: Vec<T> = xs.par_iter().map(|&x| map.value_iter(x, p) - x).collect();
        let found = (0..xs.len() - 1)
            .filter(|&i| rs[i].is_finite() && rs[i + 1].is_finite())
            .filter(|&i| rs[i] == T::zero() || rs[i].signum() != rs[i + 1].signum())
            .find_map(|i| {
                let x = if rs[i] == T::zero() {
                    xs[i]
                } else {
                    bisect_periodic(map, p, xs[i], xs[i + 1])
                };
                has_minimal_period(map, x, p).then(|| OrbitFinding {
                    period: p,
                    representative: x,
                    residual: (map.value_iter(x, p) - x).abs(),
                    method: OrbitMethod::RootScan,
                })
            });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// The smallest interval carrying the recurrent dynamics:
/// `[min(f^2(m), m), f(m)]` when the peak clears the diagonal, else `[0, f(m)]`.
fn core_interval<T: Scalar>(map: &PollutionMap<T>) -> (T, T) {
    let m = map.peak_location();
    let fm = map.value(m);
    if fm > m {
        (map.value(fm).min(m), fm)
    } else {
        (T::zero(), fm)
    }
}

/// Estimates topological entropy from the growth of lap numbers of `f^n`.
///
/// Laps are counted on the core interval by sign changes of the chain-rule
/// derivative of `f^n` at `scan_points` samples. Over the last half of the
/// levels `ln laps(n)` is fitted as `h n + d ln n + c`; the `ln n` term absorbs
/// the polynomial lap growth of zero-entropy maps so `h` is not biased by it.
pub fn lap_entropy<T: Scalar>(
    map: &PollutionMap<T>,
    levels: usize,
    scan_points: usize,
) -> Result<EntropyEstimate<T>> {
    if !(8..=20).contains(&levels) {
        return Err(Error::invalid(format!(
            "levels must be in [8, 20], got {levels}"
        )));
    }
    if scan_points < 100_000 {
        return Err(Error::invalid(format!(
            "scan_points must be >= 10^5, got {scan_points}"
        )));
    }
    let m = map.peak_location();
    let fm = map.value(m);
    if !(fm <= T::one() + T::epsilon() * T::lit(4.0)) {
        return Err(Error::DomainEscape {
            k: m.as_f64(),
            value: fm.as_f64(),
        });
    }
    let (lo, hi) = core_interval(map);

    // Interior samples; per-sample sign history of (f^n)'.
    let xs: Vec<T> = linspace(lo, hi, scan_points + 2)
        .skip(1)
        .take(scan_points)
        .collect();
    let signs: Vec<Vec<i8>> = xs
        .par_chunks(4096)
        .map(|chunk| {
            let mut out = vec![0i8; chunk.len() * levels];
            for (j, &x0) in chunk.iter().enumerate() {
                let (mut x, mut s) = (x0, 1i8);
                for n in 0..levels {
                    let d = map.derivative_unchecked(x);
                    s = if d > T::zero() {
                        s
                    } else if d < T::zero() {
                        -s
                    } else {
                        0
                    };
                    out[j * levels + n] = s;
                    x = map.value(x);
                }
            }
            out
        })
        .collect();

    let mut laps = vec![1usize; levels];
    let mut prev = vec![0i8; levels];
    for chunk in &signs {
        for sample in chunk.chunks(levels) {
            for n in 0..levels {
                let s = sample[n];
                if s == 0 {
                    continue;
                }
                if prev[n] != 0 && prev[n] != s {
                    laps[n] += 1;
                }
                prev[n] = s;
            }
        }
    }
    if let Some(&worst) = laps.iter().max() {
        if worst * 8 > scan_points {
            return Err(Error::SaturatedScan {
                laps: worst,
                scan_points,
            });
        }
    }

    let (h, d) = fit_growth(&laps);
    Ok(EntropyEstimate {
        value: T::lit(h.max(0.0)),
        poly_degree: T::lit(d),
        laps_per_level: laps,
        levels,
    })
}

/// Least squares of `ln L(n) = h n + d ln n + c` over the last half of levels.
fn fit_growth(laps: &[usize]) -> (f64, f64) {
    let start = laps.len() / 2;
    let rows: Vec<[f64; 4]> = laps
        .iter()
        .enumerate()
        .skip(start)
        .map(|(i, &l)| {
            let n = (i + 1) as f64;
            [n, n.ln(), 1.0, (l as f64).ln()]
        })
        .collect();
    // normal equations A^T A x = A^T y
    let mut ata = [[0.0; 3]; 3];
    let mut aty = [0.0; 3];
    for r in &rows {
        for i in 0..3 {
            aty[i] += r[i] * r[3];
            for j in 0..3 {
                ata[i][j] += r[i] * r[j];
            }
        }
    }
    let x = solve3(ata, aty);
    (x[0], x[1])
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> [f64; 3] {
    let d = det3(&a);
    let mut x = [0.0; 3];
    for (col, xi) in x.iter_mut().enumerate() {
        let mut m = a;
        for row in 0..3 {
            m[row][col] = b[row];
        }
        *xi = det3(&m) / d;
    }
    x
}

/// `|k_n - k*|` for `k_{t+1} = sA k_t^gamma` with `k* = (sA)^(1/(1-gamma))`.
pub fn baseline_no_chaos<T: Scalar>(gamma: T, sa: T, k0: T, n: usize) -> Result<T> {
    baseline_residuals(gamma, sa, k0, n).map(|r| *r.last().unwrap())
}

/// Residuals `|k_t - k*|` for `t = 0..=n`.
pub fn baseline_residuals<T: Scalar>(gamma: T, sa: T, k0: T, n: usize) -> Result<Vec<T>> {
    if !(gamma > T::zero() && gamma < T::one()) {
        return Err(Error::invalid(format!(
            "gamma must lie in (0, 1), got {gamma}"
        )));
    }
    if !(sa > T::zero()) || !(k0 > T::zero()) {
        return Err(Error::invalid("sA and k0 must be > 0"));
    }
    let steady = sa.powf((T::one() - gamma).recip());
    let mut k = k0;
    let mut out = Vec::with_capacity(n + 1);
    out.push((k - steady).abs());
    for _ in 0..n {
        k = sa * k.powf(gamma);
        out.push((k - steady).abs());
    }
    Ok(out)
}
