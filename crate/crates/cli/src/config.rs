//! Defaults for every command, layered as flags > config file > built-ins.
//!
//! The config file is TOML; its location comes from `--config` or the
//! `CHAOSCERT_CONFIG` environment variable. All keys are optional:
//!
//! ```toml
//! grid_size = 10000          # class membership grid
//! subdivisions = 100000      # root isolation for Pi
//! tol = 1e-12                # threshold bisection tolerance
//! threads = 0                # 0 = one worker per core
//! scan_alpha_range = "0:30"
//! scan_beta_range = "0:12"
//! scan_nx = 600
//! scan_ny = 480
//! curve_n = 200
//! curve_subdivisions = 1000
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;

pub const CONFIG_ENV: &str = "CHAOSCERT_CONFIG";

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub grid_size: usize,
    pub subdivisions: usize,
    pub tol: f64,
    pub threads: usize,
    pub scan_alpha_range: String,
    pub scan_beta_range: String,
    pub scan_nx: usize,
    pub scan_ny: usize,
    pub curve_n: usize,
    pub curve_subdivisions: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            grid_size: chaoscert::tolerance::DEFAULT_GRID,
            subdivisions: chaoscert::tolerance::DEFAULT_SUBDIVISIONS,
            tol: chaoscert::tolerance::THRESHOLD_TOL,
            threads: 0,
            scan_alpha_range: "0:30".into(),
            scan_beta_range: "0:12".into(),
            scan_nx: 600,
            scan_ny: 480,
            curve_n: 200,
            curve_subdivisions: chaoscert::tolerance::CURVE_SUBDIVISIONS,
        }
    }
}

#[derive(Debug)]
pub enum ConfigError {
    Read(PathBuf, std::io::Error),
    Parse(PathBuf, String),
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Read(p, e) => write!(f, "{}: {e}", p.display()),
            ConfigError::Parse(p, e) => {
                write!(f, "{}: {}", p.display(), e.lines().next().unwrap_or(""))
            }
        }
    }
}

impl Config {
    pub fn parse(text: &str, path: &Path) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse(path.to_path_buf(), e.to_string()))
    }

    /// Loads `explicit`, else `$CHAOSCERT_CONFIG`, else built-ins.
    pub fn load(explicit: Option<&Path>) -> Result<Self, ConfigError> {
        let path = explicit.map(Path::to_path_buf).or_else(|| {
            std::env::var_os(CONFIG_ENV)
                .filter(|v| !v.is_empty())
                .map(PathBuf::from)
        });
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text =
                    std::fs::read_to_string(&p).map_err(|e| ConfigError::Read(p.clone(), e))?;
                Self::parse(&text, &p)
            }
        }
    }
}

/// Parses `lo:hi`.
pub fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("range '{s}' must look like lo:hi"))?;
    let lo: f64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad range start in '{s}'"))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad range end in '{s}'"))?;
    if !lo.is_finite() || !hi.is_finite() || hi < lo {
        return Err(format!("range '{s}' must satisfy lo <= hi"));
    }
    Ok((lo, hi))
}
