//! Labelled `(alpha, beta)` grids: the admissible strip, the `f^2(m) < m`
//! region and their overlap.
//!
//! | label | admissible | `f^2(m) < m` |
//! |-------|------------|--------------|
//! | `c`   | yes        | yes          |
//! | `b`   | yes        | no           |
//! | `a`   | no, alpha below the strip | yes |
//! | `d`   | no, alpha above the strip | yes |
//! | none  | otherwise  |              |
//!
//! The f^3 condition of the chaos criterion is deliberately not part of the label.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::class_g::alpha_bounds;
use crate::criterion::f2m_closed_form;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionLabel {
    A,
    B,
    C,
    D,
    None,
}

impl RegionLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionLabel::A => "a",
            RegionLabel::B => "b",
            RegionLabel::C => "c",
            RegionLabel::D => "d",
            RegionLabel::None => "none",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionCell<T> {
    pub alpha: T,
    pub beta: T,
    pub in_g: bool,
    pub f2m_ok: bool,
    pub label: RegionLabel,
}

/// Row-major grid: `beta` rows outermost, `alpha` columns within a row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionGrid<T> {
    pub nx: usize,
    pub ny: usize,
    pub cells: Vec<RegionCell<T>>,
}

impl<T: Scalar> RegionGrid<T> {
    pub fn cell(&self, ix: usize, iy: usize) -> &RegionCell<T> {
        &self.cells[iy * self.nx + ix]
    }

    pub fn row(&self, iy: usize) -> &[RegionCell<T>] {
        &self.cells[iy * self.nx..(iy + 1) * self.nx]
    }
}

pub fn label_cell<T: Scalar>(alpha: T, beta: T) -> RegionCell<T> {
    let bounds = alpha_bounds(beta);
    let in_g = beta > T::zero() && bounds.contains(alpha);
    // NaN (negative base with non-integral beta) compares false.
    let f2m_ok = beta > T::zero() && f2m_closed_form(alpha, beta) > T::zero();
    let label = match (in_g, f2m_ok) {
        (true, true) => RegionLabel::C,
        (true, false) => RegionLabel::B,
        (false, true) if alpha <= bounds.lower => RegionLabel::A,
        (false, true) => RegionLabel::D,
        (false, false) => RegionLabel::None,
    };
    RegionCell {
        alpha,
        beta,
        in_g,
        f2m_ok,
        label,
    }
}

/// Grid coordinates on the half-open range `(lo, hi]`.
fn axis<T: Scalar>(lo: T, hi: T, n: usize) -> Vec<T> {
    let step = (hi - lo) / T::count(n);
    (1..=n)
        .map(|i| if i == n { hi } else { lo + step * T::count(i) })
        .collect()
}

/// Labels an `nx` by `ny` grid over `alpha` in `(a0, a1]`, `beta` in `(b0, b1]`.
pub fn scan<T: Scalar>(
    alpha_range: (T, T),
    beta_range: (T, T),
    nx: usize,
    ny: usize,
) -> Result<RegionGrid<T>> {
    if nx < 16 || ny < 16 {
        return Err(Error::invalid(format!(
            "region grid must be at least 16x16, got {nx}x{ny}"
        )));
    }
    let ok = |(lo, hi): (T, T)| lo >= T::zero() && hi > lo && hi.is_finite();
    if !ok(alpha_range) || !ok(beta_range) {
        return Err(Error::invalid("ranges must satisfy 0 <= lo < hi"));
    }
    let alphas = axis(alpha_range.0, alpha_range.1, nx);
    let betas = axis(beta_range.0, beta_range.1, ny);
    let cells = betas
        .par_iter()
        .flat_map_iter(|&beta| alphas.iter().map(move |&alpha| label_cell(alpha, beta)))
        .collect();
    Ok(RegionGrid { nx, ny, cells })
}
