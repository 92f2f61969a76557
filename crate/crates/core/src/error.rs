use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("f({k}) = {value} leaves [0, 1]; the map is not a self-map for these parameters")]
    DomainEscape { k: f64, value: f64 },

    #[error("derivative is singular at k = {k} for beta < 1")]
    SingularPoint { k: f64 },

    #[error("no interior fixed point for alpha = {alpha} (needs alpha > 1)")]
    NoInteriorFixedPoint { alpha: f64 },

    #[error("map with alpha = {alpha}, beta = {beta} is not in the admissible unimodal class")]
    NotInClass { alpha: f64, beta: f64 },

    #[error("refinement did not converge after {iterations} iterations on [{lo}, {hi}]")]
    NoConvergence { iterations: usize, lo: f64, hi: f64 },

    #[error("Pi is empty for alpha = {alpha}, beta = {beta}")]
    EmptyPi { alpha: f64, beta: f64 },

    #[error("direct f^2(m) - m = {direct} disagrees with the closed form {closed_form}")]
    InconsistentFormulation { direct: f64, closed_form: f64 },

    #[error("verdict inconclusive for alpha = {alpha}, beta = {beta}: {reason}")]
    Inconclusive {
        alpha: f64,
        beta: f64,
        reason: String,
    },

    #[error("margin has no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("lap count {laps} saturates a scan of {scan_points} points; increase scan_points")]
    SaturatedScan { laps: usize, scan_points: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
