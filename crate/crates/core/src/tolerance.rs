//! Numerical tolerances shared by the certification pipeline.
//!
//! All values are absolute and expressed in `f64`; generic code floors them at
//! a few epsilons of the working scalar.

/// Slack above 1.0 accepted from `eval` before reporting a domain escape.
/// At the upper admissible `alpha` the peak value is exactly 1 in real arithmetic.
pub const DOMAIN_EPS_FACTOR: f64 = 4.0;

/// Grid residual `|f^2(k) - k|` below which a grid point is itself a root.
pub const GRID_ROOT: f64 = 1e-12;

/// Residual target for refined roots of `f^2(k) = k`.
pub const ROOT_RESIDUAL: f64 = 1e-12;

/// Bracket width target for refined roots.
pub const ROOT_WIDTH: f64 = 1e-13;

/// Iteration cap for bracket refinement.
pub const ROOT_MAX_ITER: usize = 200;

/// Local minima of `|f^2(k) - k|` below this, without sign change, are tangency suspects.
pub const TANGENCY: f64 = 1e-9;

/// Slope `|d/dk (f^2(k) - k)|` at a root below this marks it multiplicity-suspect.
pub const MULTIPLICITY_SLOPE: f64 = 1e-6;

/// Roots closer than this in `k` are the same root.
pub const DEDUP_RADIUS: f64 = 1e-9;

/// Closed band applied to the `[m, 1]` membership tests of the Pi filter.
pub const PI_FILTER_BAND: f64 = 1e-12;

/// A root with `|f(x) - x|` at most this is a fixed point rather than period two.
pub const FIXED_POINT: f64 = 1e-10;

/// Equality band for comparing `f^3(m)` against the extremes of Pi.
pub const VERDICT_BAND: f64 = 1e-10;

/// Allowed disagreement between the direct and closed-form `f^2(m) < m` tests.
pub const F2M_AGREEMENT: f64 = 1e-10;

/// Periodic-orbit residual accepted by the oracle.
pub const ORBIT_RESIDUAL: f64 = 1e-8;

/// Default grid for class membership checks.
pub const DEFAULT_GRID: usize = 10_000;

/// Default subdivisions for isolating roots during certification.
pub const DEFAULT_SUBDIVISIONS: usize = 100_000;

/// Default subdivisions for curve plotting.
pub const CURVE_SUBDIVISIONS: usize = 1_000;

/// Coarse pre-scan resolution for threshold bracketing.
pub const THRESHOLD_PRESCAN: usize = 10_000;

/// Default bisection tolerance on `alpha`.
pub const THRESHOLD_TOL: f64 = 1e-12;
