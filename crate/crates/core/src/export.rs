//! CSV writers for region grids, branch curves and threshold sweeps.
//!
//! Files are UTF-8 with LF line endings. Numbers are written with 17
//! significant digits so a reader recovers the exact `f64`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::period::{fixed_curve_samples, CurvePoint};
use crate::region::{scan, RegionGrid};
use crate::scalar::Scalar;
use crate::threshold::ThresholdReport;

pub const REGION_HEADER: &str = "alpha,beta,label";
pub const CURVES_HEADER: &str = "beta,alpha,k,kind";
pub const THRESHOLD_HEADER: &str = "beta,g_lower,g_upper,f2m_threshold,chaos_threshold";

/// Formats `x` with 17 significant digits, plain decimal where reasonable.
pub fn full_precision(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 {
            "0".to_string()
        } else {
            x.to_string()
        };
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..=15).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        trim_zeros(s)
    } else {
        format!("{x:.16e}")
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

pub fn write_region_csv<T: Scalar, W: Write>(
    grid: &RegionGrid<T>,
    mut w: W,
) -> std::io::Result<()> {
    writeln!(w, "{REGION_HEADER}")?;
    for c in &grid.cells {
        writeln!(
            w,
            "{},{},{}",
            full_precision(c.alpha.as_f64()),
            full_precision(c.beta.as_f64()),
            c.label.as_str()
        )?;
    }
    w.flush()
}

pub fn write_curves_csv<T: Scalar, W: Write>(
    rows: &[CurvePoint<T>],
    mut w: W,
) -> std::io::Result<()> {
    writeln!(w, "{CURVES_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{}",
            full_precision(r.beta.as_f64()),
            full_precision(r.alpha.as_f64()),
            full_precision(r.k.as_f64()),
            r.kind.as_str()
        )?;
    }
    w.flush()
}

pub fn write_threshold_csv<'a, T: Scalar, W: Write>(
    reports: impl IntoIterator<Item = &'a ThresholdReport<T>>,
    mut w: W,
) -> std::io::Result<()> {
    writeln!(w, "{THRESHOLD_HEADER}")?;
    for r in reports {
        writeln!(
            w,
            "{},{},{},{},{}",
            full_precision(r.beta.as_f64()),
            full_precision(r.g_lower.as_f64()),
            full_precision(r.g_upper.as_f64()),
            full_precision(r.f2m_threshold.as_f64()),
            full_precision(r.chaos_threshold.as_f64())
        )?;
    }
    w.flush()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionParams<T> {
    pub alpha_range: (T, T),
    pub beta_range: (T, T),
    pub nx: usize,
    pub ny: usize,
}

impl Default for RegionParams<f64> {
    fn default() -> Self {
        Self {
            alpha_range: (0.0, 30.0),
            beta_range: (0.0, 12.0),
            nx: 600,
            ny: 480,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveParams<T> {
    pub beta: T,
    pub alpha_range: (T, T),
    pub n: usize,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FigureRequest<T> {
    Region(RegionParams<T>),
    Curves(CurveParams<T>),
}

/// Computes the requested figure data and writes it to `path`; returns the data row count.
pub fn export_figure_data<T: Scalar>(request: &FigureRequest<T>, path: &Path) -> Result<usize> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    match request {
        FigureRequest::Region(p) => {
            let grid = scan(p.alpha_range, p.beta_range, p.nx, p.ny)?;
            let file = File::create(path).map_err(io)?;
            write_region_csv(&grid, BufWriter::new(file)).map_err(io)?;
            Ok(grid.cells.len())
        }
        FigureRequest::Curves(p) => {
            let rows = fixed_curve_samples(p.beta, p.alpha_range, p.n, p.subdivisions)?;
            let file = File::create(path).map_err(io)?;
            write_curves_csv(&rows, BufWriter::new(file)).map_err(io)?;
            Ok(rows.len())
        }
    }
}
