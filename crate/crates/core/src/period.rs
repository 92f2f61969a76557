//! Roots of `f^2(k) = k` and the set Pi of period-two points that stay on the
//! decreasing branch.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::class_g::{alpha_bounds, check_membership};
use crate::error::{Error, Result};
use crate::map::PollutionMap;
use crate::scalar::{linspace, tol, Scalar};
use crate::tolerance::*;

/// A sub-interval `[lo, hi]` suspected of holding a root of `f^2(k) - k`.
///
/// Degenerate brackets (`lo == hi`) mark grid points that are roots to grid tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootBracket<T> {
    pub lo: T,
    pub hi: T,
    pub sign_change: bool,
    /// Local minimum of `|f^2(k) - k|` near zero without a sign change.
    pub tangency: bool,
}

impl<T: Scalar> RootBracket<T> {
    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    FixedPoint,
    PeriodTwo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodRoot<T> {
    pub x: T,
    pub kind: RootKind,
    /// `|d/dk (f^2(k) - k)|` vanishes at the root, so it may have even multiplicity.
    pub multiplicity_suspect: bool,
}

/// `Pi = { x in [m, 1] : f(x) in [m, 1], f^2(x) = x }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiSet<T> {
    pub alpha: T,
    pub beta: T,
    /// Sorted ascending.
    pub roots: Vec<PeriodRoot<T>>,
    pub min_pi: T,
    pub max_pi: T,
}

impl<T: Scalar> PiSet<T> {
    pub fn values(&self) -> impl Iterator<Item = T> + '_ {
        self.roots.iter().map(|r| r.x)
    }

    pub fn is_singleton(&self) -> bool {
        self.roots.len() == 1
    }
}

#[inline]
fn residual<T: Scalar>(map: &PollutionMap<T>, k: T) -> T {
    map.value(map.value(k)) - k
}

/// Uniformly subdivides `[lo, hi]` and brackets every root of `f^2(k) - k`.
///
/// Sign changes give proper brackets, grid points with residual within
/// `GRID_ROOT` give degenerate ones, and near-zero local minima of the residual
/// without a sign change are reported as tangency brackets spanning the two
/// neighbouring cells.
pub fn isolate_roots<T: Scalar>(
    map: &PollutionMap<T>,
    interval: (T, T),
    subdivisions: usize,
) -> Vec<RootBracket<T>> {
    let (lo, hi) = interval;
    let xs: Vec<T> = linspace(lo, hi, subdivisions + 1).collect();
    let rs: Vec<T> = xs.par_iter().map(|&x| residual(map, x)).collect();
    let grid_root = tol::<T>(GRID_ROOT);
    let tangency = tol::<T>(TANGENCY);
    let is_root = |r: T| r.abs() <= grid_root;

    let mut out = Vec::new();
    let mut i = 0;
    while i < xs.len() {
        let r = rs[i];
        if !r.is_finite() {
            i += 1;
            continue;
        }
        if is_root(r) {
            // A run of grid roots (flat or high-multiplicity contact) collapses to its best point.
            let mut best = i;
            let mut j = i;
            while j + 1 < xs.len() && is_root(rs[j + 1]) {
                j += 1;
                if rs[j].abs() < rs[best].abs() {
                    best = j;
                }
            }
            out.push(RootBracket {
                lo: xs[best],
                hi: xs[best],
                sign_change: false,
                tangency: false,
            });
            i = j + 1;
            continue;
        }
        if i + 1 < xs.len() {
            let next = rs[i + 1];
            if next.is_finite() && !is_root(next) && r.signum() != next.signum() {
                out.push(RootBracket {
                    lo: xs[i],
                    hi: xs[i + 1],
                    sign_change: true,
                    tangency: false,
                });
                i += 1;
                continue;
            }
        }
        if i > 0 && i + 1 < xs.len() {
            let (prev, next) = (rs[i - 1], rs[i + 1]);
            let same_sign = prev.signum() == r.signum() && next.signum() == r.signum();
            if same_sign
                && r.abs() < tangency
                && r.abs() <= prev.abs()
                && r.abs() <= next.abs()
                && !is_root(prev)
                && !is_root(next)
            {
                out.push(RootBracket {
                    lo: xs[i - 1],
                    hi: xs[i + 1],
                    sign_change: false,
                    tangency: true,
                });
            }
        }
        i += 1;
    }
    out
}

/// Refines a bracket to a root of `f^2(k) - k`.
///
/// Sign-changing brackets are bisected down to `ROOT_WIDTH` and must reach a
/// residual of `ROOT_RESIDUAL`. Tangency brackets are refined by golden-section
/// search on `|f^2(k) - k|`; degenerate brackets are returned as-is.
pub fn refine_root<T: Scalar>(map: &PollutionMap<T>, bracket: &RootBracket<T>) -> Result<T> {
    if bracket.is_degenerate() {
        return Ok(bracket.lo);
    }
    let width_target = tol::<T>(ROOT_WIDTH);
    let residual_target = tol::<T>(ROOT_RESIDUAL);
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let fail = |lo: T, hi: T, iterations| Error::NoConvergence {
        iterations,
        lo: lo.as_f64(),
        hi: hi.as_f64(),
    };

    if bracket.sign_change {
        let mut rlo = residual(map, lo);
        for _ in 0..ROOT_MAX_ITER {
            let mid = lo + (hi - lo) * T::lit(0.5);
            let rmid = residual(map, mid);
            if rmid == T::zero() {
                return Ok(mid);
            }
            let width = hi - lo;
            if width <= width_target || mid <= lo || mid >= hi {
                let rhi = residual(map, hi);
                let best = [(lo, rlo.abs()), (mid, rmid.abs()), (hi, rhi.abs())]
                    .into_iter()
                    .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                    .unwrap();
                return if best.1 <= residual_target {
                    Ok(best.0)
                } else {
                    Err(fail(lo, hi, ROOT_MAX_ITER))
                };
            }
            if rmid.signum() == rlo.signum() {
                lo = mid;
                rlo = rmid;
            } else {
                hi = mid;
            }
        }
        return Err(fail(lo, hi, ROOT_MAX_ITER));
    }

    // Golden-section on |residual| for tangencies.
    let inv_phi = T::lit(0.618_033_988_749_894_9);
    let obj = |x: T| residual(map, x).abs();
    let mut c = hi - (hi - lo) * inv_phi;
    let mut d = lo + (hi - lo) * inv_phi;
    for _ in 0..ROOT_MAX_ITER {
        if hi - lo <= width_target {
            break;
        }
        if obj(c) < obj(d) {
            hi = d;
        } else {
            lo = c;
        }
        c = hi - (hi - lo) * inv_phi;
        d = lo + (hi - lo) * inv_phi;
    }
    let x = lo + (hi - lo) * T::lit(0.5);
    if obj(x) <= tol::<T>(TANGENCY) {
        Ok(x)
    } else {
        Err(fail(lo, hi, ROOT_MAX_ITER))
    }
}

/// Slope of `f^2(k) - k`, i.e. `f'(f(k)) f'(k) - 1`.
fn residual_slope<T: Scalar>(map: &PollutionMap<T>, x: T) -> T {
    map.derivative_unchecked(map.value(x)) * map.derivative_unchecked(x) - T::one()
}

/// All refined, deduplicated roots of `f^2(k) = k` on `interval`, classified.
pub fn period_two_roots<T: Scalar>(
    map: &PollutionMap<T>,
    interval: (T, T),
    subdivisions: usize,
) -> Result<Vec<PeriodRoot<T>>> {
    let brackets = isolate_roots(map, interval, subdivisions);
    let refined: Vec<(T, bool)> = brackets
        .par_iter()
        .map(|b| refine_root(map, b).map(|x| (x, b.tangency)))
        .collect::<Result<_>>()?;

    let dedup = tol::<T>(DEDUP_RADIUS);
    let fixed_tol = tol::<T>(FIXED_POINT);
    let slope_tol = T::lit(MULTIPLICITY_SLOPE);
    let mut roots: Vec<PeriodRoot<T>> = Vec::with_capacity(refined.len());
    for (x, tangency) in refined {
        let suspect = tangency || residual_slope(map, x).abs() <= slope_tol;
        if let Some(last) = roots.last_mut() {
            if (x - last.x).abs() <= dedup {
                last.multiplicity_suspect |= suspect;
                continue;
            }
        }
        let kind = if (map.value(x) - x).abs() <= fixed_tol {
            RootKind::FixedPoint
        } else {
            RootKind::PeriodTwo
        };
        roots.push(PeriodRoot {
            x,
            kind,
            multiplicity_suspect: suspect,
        });
    }
    Ok(roots)
}

/// Computes Pi with the default certification resolution.
pub fn compute_pi<T: Scalar>(map: &PollutionMap<T>) -> Result<PiSet<T>> {
    compute_pi_with(map, DEFAULT_GRID, DEFAULT_SUBDIVISIONS)
}

pub fn compute_pi_with<T: Scalar>(
    map: &PollutionMap<T>,
    grid_size: usize,
    subdivisions: usize,
) -> Result<PiSet<T>> {
    let (alpha, beta) = (map.alpha(), map.beta());
    if !check_membership(map, grid_size).in_class {
        return Err(Error::NotInClass {
            alpha: alpha.as_f64(),
            beta: beta.as_f64(),
        });
    }
    let m = map.peak_location();
    let band = tol::<T>(PI_FILTER_BAND);
    let in_branch = |x: T| x >= m - band && x <= T::one();

    let roots: Vec<PeriodRoot<T>> = period_two_roots(map, (m, T::one()), subdivisions)?
        .into_iter()
        .filter(|r| in_branch(r.x) && in_branch(map.value(r.x)))
        .collect();

    match (roots.first(), roots.last()) {
        (Some(first), Some(last)) => Ok(PiSet {
            alpha,
            beta,
            min_pi: first.x,
            max_pi: last.x,
            roots,
        }),
        _ => Err(Error::EmptyPi {
            alpha: alpha.as_f64(),
            beta: beta.as_f64(),
        }),
    }
}

/// The two period-two points of the `beta = 1` map,
/// `(alpha + 1 -/+ sqrt(alpha^2 - 2 alpha - 3)) / (2 alpha)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodTwoPair<T> {
    pub low: T,
    pub high: T,
    /// Zero discriminant: the pair has just been born from the fixed point.
    pub tangent: bool,
}

/// Closed form for `beta = 1`; `None` while the discriminant is negative (`alpha < 3`).
pub fn period_two_closed_form_beta1<T: Scalar>(alpha: T) -> Option<PeriodTwoPair<T>> {
    let two = T::lit(2.0);
    let disc = alpha * alpha - two * alpha - T::lit(3.0);
    if disc < T::zero() || alpha <= T::zero() {
        return None;
    }
    let root = disc.sqrt();
    Some(PeriodTwoPair {
        low: (alpha + T::one() - root) / (two * alpha),
        high: (alpha + T::one() + root) / (two * alpha),
        tangent: disc == T::zero(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Fixed,
    Period2,
    MLine,
}

impl CurveKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CurveKind::Fixed => "fixed",
            CurveKind::Period2 => "period2",
            CurveKind::MLine => "m_line",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint<T> {
    pub beta: T,
    pub alpha: T,
    pub k: T,
    pub kind: CurveKind,
}

/// Default alpha window for curve plots: the admissible window stretched 10% past its top.
pub fn default_curve_range<T: Scalar>(beta: T) -> (T, T) {
    let b = alpha_bounds(beta);
    (b.lower, b.upper * T::lit(1.1))
}

/// Samples the fixed-point and period-two branches of `f^2(k) = k` over
/// `n` values of `alpha`, plus the `k = m` line.
pub fn fixed_curve_samples<T: Scalar>(
    beta: T,
    alpha_range: (T, T),
    n: usize,
    subdivisions: usize,
) -> Result<Vec<CurvePoint<T>>> {
    if n < 2 {
        return Err(Error::invalid("curve sampling needs n >= 2"));
    }
    if !(beta > T::zero()) {
        return Err(Error::invalid("curve sampling needs beta > 0"));
    }
    let (lo, hi) = alpha_range;
    if !(lo > T::zero() && hi >= lo) {
        return Err(Error::invalid("alpha range must satisfy 0 < lo <= hi"));
    }
    let alphas: Vec<T> = linspace(lo, hi, n).collect();
    let m = T::one() / (T::one() + beta);
    let rows: Vec<Vec<CurvePoint<T>>> = alphas
        .par_iter()
        .map(|&alpha| {
            let map = PollutionMap::new(alpha, beta)?;
            let mut row = Vec::new();
            if alpha > T::one() {
                row.push(CurvePoint {
                    beta,
                    alpha,
                    k: map.fixed_point_unchecked(),
                    kind: CurveKind::Fixed,
                });
            }
            for r in period_two_roots(&map, (T::zero(), T::one()), subdivisions)? {
                if r.kind == RootKind::PeriodTwo && r.x > T::zero() && r.x < T::one() {
                    row.push(CurvePoint {
                        beta,
                        alpha,
                        k: r.x,
                        kind: CurveKind::Period2,
                    });
                }
            }
            row.push(CurvePoint {
                beta,
                alpha,
                k: m,
                kind: CurveKind::MLine,
            });
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}
