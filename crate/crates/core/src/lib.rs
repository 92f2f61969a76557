//! Certifies topological chaos for the pollution-effect growth map
//! `k -> alpha * k * (1 - k)^beta` on `[0, 1]`.
//!
//! The pipeline is: check the map is an admissible unimodal map
//! ([`class_g`]), compute the period-two set Pi on its decreasing branch
//! ([`period`]), and compare the second and third iterates of the peak
//! against the peak and Pi ([`criterion`]). [`threshold`] solves for the
//! critical `alpha` values, [`region`] labels parameter grids, and [`oracle`]
//! provides independent checks (orbit search, lap entropy).
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases below
//! fix the scalar to `f64`.
//!
//! ```
//! use chaoscert::{classify, ChaosStatus, Map};
//!
//! let verdict = classify(&Map::new(3.9, 1.0).unwrap()).unwrap();
//! assert_eq!(verdict.status, ChaosStatus::OddCycleAndTurbulent);
//! ```

// `!(x > 0)` is used on purpose so NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod class_g;
pub mod criterion;
pub mod error;
pub mod export;
pub mod map;
pub mod oracle;
pub mod period;
pub mod region;
mod scalar;
pub mod threshold;
pub mod tolerance;

pub use class_g::{
    alpha_bounds, check_membership, peak_exceeds_m, AlphaBounds, GClassReport, GCondition,
};
pub use criterion::{
    classify, classify_with, f2m_condition, verdict_boundary_probe, ChaosStatus, ChaosVerdict,
    ClassifyOptions, F2mCondition, Margins,
};
pub use error::{Error, Result};
pub use map::{CriticalPoint, FixedPoint, PollutionMap};
pub use oracle::{
    baseline_no_chaos, find_odd_cycle, lap_entropy, EntropyEstimate, OrbitFinding, OrbitMethod,
};
pub use period::{
    compute_pi, compute_pi_with, fixed_curve_samples, isolate_roots, period_two_closed_form_beta1,
    refine_root, CurveKind, CurvePoint, PiSet, RootBracket, RootKind,
};
pub use region::{scan, RegionCell, RegionGrid, RegionLabel};
pub use scalar::Scalar;
pub use threshold::{
    solve_chaos_threshold, solve_f2m_threshold, threshold_report, threshold_sweep, SweepRow,
    ThresholdReport,
};

pub type Map = PollutionMap<f64>;
pub type Map32 = PollutionMap<f32>;
pub type Verdict = ChaosVerdict<f64>;
pub type Pi = PiSet<f64>;
pub type Report = ThresholdReport<f64>;
pub type Cell = RegionCell<f64>;
