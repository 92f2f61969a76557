//! Membership in the admissible class of unimodal maps.
//!
//! A continuous self-map `g` of `[a, b]` belongs to the class when it is
//! strictly increasing on `[a, m]`, strictly decreasing on `[m, b]` for some
//! interior peak `m`, and satisfies `g(a) >= a`, `g(b) < b` and `g(x) > x` on
//! `(a, m]`. For the pollution map the whole test collapses to a closed-form
//! window on `alpha`, see [`alpha_bounds`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::map::PollutionMap;
use crate::scalar::{linspace, Scalar};
use crate::tolerance::DOMAIN_EPS_FACTOR;

/// `lower < alpha <= upper` with `lower = ((beta+1)/beta)^beta` and `upper = (beta+1) * lower`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaBounds<T> {
    /// Exclusive: below it the peak does not clear the diagonal.
    pub lower: T,
    /// Inclusive: above it the peak leaves `[0, 1]`.
    pub upper: T,
}

impl<T: Scalar> AlphaBounds<T> {
    pub fn contains(&self, alpha: T) -> bool {
        self.lower < alpha && alpha <= self.upper
    }
}

/// Closed-form admissible `alpha` window for a given `beta > 0`.
pub fn alpha_bounds<T: Scalar>(beta: T) -> AlphaBounds<T> {
    let lower = if beta.fract() == T::zero() && beta <= T::lit(64.0) {
        ((beta + T::one()) / beta).powi(beta.to_i32().unwrap_or(0))
    } else {
        // exp(beta * ln(1 + 1/beta))
        (beta * beta.recip().ln_1p()).exp()
    };
    AlphaBounds {
        lower,
        upper: (beta + T::one()) * lower,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GCondition {
    /// The map sends `[a, b]` into itself.
    MapsIntoInterval,
    IncreasingOnLeft,
    DecreasingOnRight,
    /// `g(a) >= a`.
    LeftEndpoint,
    /// `g(b) < b`.
    RightEndpoint,
    /// `g(x) > x` for all `x` in `(a, m]`.
    AboveDiagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionCheck<T> {
    pub condition: GCondition,
    pub passed: bool,
    pub witness: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GClassReport<T> {
    pub in_class: bool,
    pub peak_m: T,
    pub interval: (T, T),
    pub checks: Vec<ConditionCheck<T>>,
}

impl<T: Scalar> GClassReport<T> {
    pub fn check(&self, condition: GCondition) -> Option<&ConditionCheck<T>> {
        self.checks.iter().find(|c| c.condition == condition)
    }

    pub fn failing(&self) -> impl Iterator<Item = &ConditionCheck<T>> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Sample<T> {
    k: T,
    g: T,
    slope: T,
}

/// Evaluates every class condition on a uniform grid of `grid_size` points plus `m`.
///
/// Monotonicity is checked twice: consecutive grid values must be strictly
/// ordered and the analytic derivative must have the right sign at every
/// interior sample. Failing conditions are reported, never raised.
pub fn check_membership<T: Scalar>(map: &PollutionMap<T>, grid_size: usize) -> GClassReport<T> {
    let grid_size = grid_size.max(100);
    let (a, b) = (T::zero(), T::one());
    let m = map.peak_location();

    let mut ks: Vec<T> = linspace(a, b, grid_size).collect();
    if m < b {
        let pos = ks.partition_point(|&k| k < m);
        if ks.get(pos) != Some(&m) {
            ks.insert(pos, m);
        }
    }
    let samples: Vec<Sample<T>> = ks
        .par_iter()
        .map(|&k| Sample {
            k,
            g: map.value(k),
            slope: map.derivative_unchecked(k),
        })
        .collect();

    let slack = T::epsilon() * T::lit(DOMAIN_EPS_FACTOR);
    let mut checks = Vec::with_capacity(6);

    let gmax = samples.iter().map(|s| s.g).fold(T::neg_infinity(), T::max);
    let gmin = samples.iter().map(|s| s.g).fold(T::infinity(), T::min);
    let escape = (gmax - b).max(a - gmin);
    checks.push(ConditionCheck {
        condition: GCondition::MapsIntoInterval,
        passed: escape <= slack,
        witness: escape,
    });

    let interior = m > a && m < b;
    let left: Vec<&Sample<T>> = samples.iter().filter(|s| s.k <= m).collect();
    let right: Vec<&Sample<T>> = samples.iter().filter(|s| s.k >= m).collect();

    let (inc_ok, inc_w) = monotone(&left, T::one());
    checks.push(ConditionCheck {
        condition: GCondition::IncreasingOnLeft,
        passed: interior && inc_ok,
        witness: inc_w,
    });
    let (dec_ok, dec_w) = monotone(&right, -T::one());
    checks.push(ConditionCheck {
        condition: GCondition::DecreasingOnRight,
        passed: interior && dec_ok && right.len() > 1,
        witness: dec_w,
    });

    let ga = map.value(a) - a;
    checks.push(ConditionCheck {
        condition: GCondition::LeftEndpoint,
        passed: ga >= T::zero(),
        witness: ga,
    });
    let gb = b - map.value(b);
    checks.push(ConditionCheck {
        condition: GCondition::RightEndpoint,
        passed: gb > T::zero(),
        witness: gb,
    });

    let above = samples
        .iter()
        .filter(|s| s.k > a && s.k <= m)
        .map(|s| s.g - s.k)
        .fold(T::infinity(), T::min);
    // f(m) > m is equivalent to alpha > lower; the closed form settles ties the grid cannot.
    let clears = map.beta() > T::zero() && map.alpha() > alpha_bounds(map.beta()).lower;
    checks.push(ConditionCheck {
        condition: GCondition::AboveDiagonal,
        passed: clears && above > T::zero() && above.is_finite(),
        witness: above,
    });

    GClassReport {
        in_class: checks.iter().all(|c| c.passed),
        peak_m: m,
        interval: (a, b),
        checks,
    }
}

/// Strict monotonicity in direction `dir` (+1 increasing, -1 decreasing).
/// Witness is the smallest signed step `dir * (g[i+1] - g[i])`.
fn monotone<T: Scalar>(samples: &[&Sample<T>], dir: T) -> (bool, T) {
    let n = samples.len();
    let step = samples
        .windows(2)
        .map(|w| dir * (w[1].g - w[0].g))
        .fold(T::infinity(), T::min);
    // Derivative signs at samples strictly inside the branch.
    let slope_ok = samples
        .iter()
        .enumerate()
        .filter(|&(i, _)| i > 0 && i + 1 < n)
        .all(|(_, s)| dir * s.slope > T::zero());
    (step > T::zero() && slope_ok, step)
}

/// `f(m) > m`; on this map family it is equivalent to `g(x) > x` on all of `(0, m]`.
pub fn peak_exceeds_m<T: Scalar>(map: &PollutionMap<T>) -> bool {
    let m = map.peak_location();
    map.value(m) > m
}
