//! The odd-cycle / turbulence criterion for maps in the admissible class.
//!
//! With `m` the peak and Pi the period-two set on the decreasing branch:
//!
//! * an odd-period cycle exists iff `f^2(m) < m` and `f^3(m) < min Pi`;
//! * `f^2` is turbulent iff `f^2(m) < m` and `f^3(m) <= max Pi`.

use serde::{Deserialize, Serialize};

use crate::class_g::check_membership;
use crate::error::{Error, Result};
use crate::map::PollutionMap;
use crate::period::compute_pi_with;
use crate::scalar::{real_pow, tol, Scalar};
use crate::tolerance::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChaosStatus {
    NotInG,
    NoOddCycleNoTurbulence,
    TurbulentOnly,
    OddCycleAndTurbulent,
}

impl ChaosStatus {
    pub fn has_odd_cycle(&self) -> bool {
        matches!(self, ChaosStatus::OddCycleAndTurbulent)
    }

    pub fn second_iterate_turbulent(&self) -> bool {
        matches!(
            self,
            ChaosStatus::OddCycleAndTurbulent | ChaosStatus::TurbulentOnly
        )
    }
}

/// Signed distances behind the verdict; positive means the strict inequality holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Margins<T> {
    pub m_minus_f2m: T,
    pub min_pi_minus_f3m: T,
    pub max_pi_minus_f3m: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChaosVerdict<T> {
    pub alpha: T,
    pub beta: T,
    pub status: ChaosStatus,
    pub m: T,
    pub f2m: Option<T>,
    pub f3m: Option<T>,
    pub min_pi: Option<T>,
    pub max_pi: Option<T>,
    pub margins: Option<Margins<T>>,
}

/// `f^2(m) < m`, evaluated both directly and through the expanded closed form
/// `1 - alpha^2 (beta/(beta+1))^beta ((beta + 1 - alpha (beta/(beta+1))^beta) / (beta+1))^beta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct F2mCondition<T> {
    pub satisfied: bool,
    /// Closed-form value; positive iff `f^2(m) < m`.
    pub lhs: T,
    /// `m - f^2(m)` from two evaluations of the map.
    pub direct: T,
}

/// The closed-form left-hand side on its own.
pub fn f2m_closed_form<T: Scalar>(alpha: T, beta: T) -> T {
    let b1 = beta + T::one();
    let q = real_pow(beta / b1, beta);
    T::one() - alpha * alpha * q * real_pow((b1 - alpha * q) / b1, beta)
}

pub fn f2m_condition<T: Scalar>(map: &PollutionMap<T>) -> Result<F2mCondition<T>> {
    let (alpha, beta) = (map.alpha(), map.beta());
    if !(beta > T::zero()) {
        return Err(Error::invalid("f^2(m) condition needs beta > 0"));
    }
    let m = map.peak_location();
    let direct = m - map.value(map.value(m));
    let lhs = f2m_closed_form(alpha, beta);

    // lhs == (beta + 1) * direct identically; only the signs are compared.
    let band = tol::<T>(F2M_AGREEMENT);
    let scaled = direct * (beta + T::one());
    let disagree = match (lhs.is_nan(), direct.is_nan()) {
        (true, true) => false,
        (false, false) => {
            lhs.abs() > band && scaled.abs() > band && lhs.signum() != scaled.signum()
        }
        _ => true,
    };
    if disagree {
        return Err(Error::InconsistentFormulation {
            direct: direct.as_f64(),
            closed_form: lhs.as_f64(),
        });
    }
    Ok(F2mCondition {
        satisfied: lhs > T::zero(),
        lhs,
        direct,
    })
}

/// Resolution used by [`classify_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub grid_size: usize,
    pub subdivisions: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            grid_size: DEFAULT_GRID,
            subdivisions: DEFAULT_SUBDIVISIONS,
        }
    }
}

pub fn classify<T: Scalar>(map: &PollutionMap<T>) -> Result<ChaosVerdict<T>> {
    classify_with(map, ClassifyOptions::default())
}

/// Issues the chaos verdict for any parameter pair; maps outside the class get `NotInG`.
///
/// `f^3(m)` is compared against Pi inside an absolute equality band of
/// `VERDICT_BAND`: strictly below `min Pi` minus the band is an odd cycle,
/// at most `max Pi` plus the band is turbulence of `f^2`.
pub fn classify_with<T: Scalar>(
    map: &PollutionMap<T>,
    opts: ClassifyOptions,
) -> Result<ChaosVerdict<T>> {
    let (alpha, beta) = (map.alpha(), map.beta());
    let m = map.peak_location();
    let mut verdict = ChaosVerdict {
        alpha,
        beta,
        status: ChaosStatus::NotInG,
        m,
        f2m: None,
        f3m: None,
        min_pi: None,
        max_pi: None,
        margins: None,
    };
    if !(beta > T::zero()) || !check_membership(map, opts.grid_size).in_class {
        return Ok(verdict);
    }

    let cond = f2m_condition(map)?;
    let f2m = map.iterate(m, 2)?;
    let f3m = map.iterate(m, 3)?;
    let pi = compute_pi_with(map, opts.grid_size, opts.subdivisions).map_err(|e| match e {
        Error::EmptyPi { .. } => Error::Inconclusive {
            alpha: alpha.as_f64(),
            beta: beta.as_f64(),
            reason: e.to_string(),
        },
        other => other,
    })?;

    let band = tol::<T>(VERDICT_BAND);
    let margins = Margins {
        m_minus_f2m: m - f2m,
        min_pi_minus_f3m: pi.min_pi - f3m,
        max_pi_minus_f3m: pi.max_pi - f3m,
    };
    let odd = cond.satisfied && margins.min_pi_minus_f3m > band;
    let turbulent = cond.satisfied && margins.max_pi_minus_f3m >= -band;

    verdict.status = if odd {
        ChaosStatus::OddCycleAndTurbulent
    } else if turbulent {
        ChaosStatus::TurbulentOnly
    } else {
        ChaosStatus::NoOddCycleNoTurbulence
    };
    verdict.f2m = Some(f2m);
    verdict.f3m = Some(f3m);
    verdict.min_pi = Some(pi.min_pi);
    verdict.max_pi = Some(pi.max_pi);
    verdict.margins = Some(margins);
    Ok(verdict)
}

/// Classifies at `alpha_star - epsilon` and `alpha_star + epsilon`.
pub fn verdict_boundary_probe<T: Scalar>(
    beta: T,
    alpha_star: T,
    epsilon: T,
) -> Result<(ChaosVerdict<T>, ChaosVerdict<T>)> {
    if !(epsilon > T::zero()) {
        return Err(Error::invalid("probe epsilon must be > 0"));
    }
    let below = classify(&PollutionMap::new(alpha_star - epsilon, beta)?)?;
    let above = classify(&PollutionMap::new(alpha_star + epsilon, beta)?)?;
    Ok((below, above))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(a: f64, b: f64) -> PollutionMap<f64> {
        PollutionMap::new(a, b).unwrap()
    }

    #[test]
    fn f2m_examples() {
        assert!(f2m_condition(&map(3.5, 1.0)).unwrap().satisfied);
        assert!(!f2m_condition(&map(4.4, 2.0)).unwrap().satisfied);
        let edge = f2m_condition(&map(1.0 + 5.0_f64.sqrt(), 1.0)).unwrap();
        assert!(edge.lhs.abs() < 1e-12, "{}", edge.lhs);
    }

    #[test]
    fn closed_form_matches_published_beta_2_and_3_polynomials() {
        for &a in &[3.0_f64, 4.5, 5.2, 6.75] {
            let poly = -4.0 * a * a * (4.0 * a - 27.0).powi(2) / 6561.0 + 1.0;
            assert!((f2m_closed_form(a, 2.0) - poly).abs() < 1e-12);
        }
        for &a in &[3.0_f64, 5.347, 8.0, 9.4] {
            let poly = 27.0 * a * a * (27.0 * a - 256.0).powi(3) / 1_073_741_824.0 + 1.0;
            assert!((f2m_closed_form(a, 3.0) - poly).abs() < 1e-12);
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&map(3.9, 1.0)).unwrap().status,
            ChaosStatus::OddCycleAndTurbulent
        );
        assert_eq!(
            classify(&map(3.5, 1.0)).unwrap().status,
            ChaosStatus::NoOddCycleNoTurbulence
        );
        assert_eq!(
            classify(&map(12.0, 10.0)).unwrap().status,
            ChaosStatus::OddCycleAndTurbulent
        );
        let v = classify(&map(5.0, 2.0)).unwrap();
        assert_eq!(v.status, ChaosStatus::NoOddCycleNoTurbulence);
        assert!(v.margins.unwrap().m_minus_f2m > 0.0);
        assert!(v.margins.unwrap().max_pi_minus_f3m < 0.0);
    }

    #[test]
    fn out_of_class_is_not_in_g() {
        for &(a, b) in &[(4.5, 1.0), (1.5, 1.0), (7.0, 2.0), (3.0, 0.0)] {
            let v = classify(&map(a, b)).unwrap();
            assert_eq!(v.status, ChaosStatus::NotInG);
            assert!(v.f2m.is_none() && v.margins.is_none());
        }
    }

    #[test]
    fn probe_examples() {
        let (lo, hi) = verdict_boundary_probe(1.0, 3.679, 1e-3).unwrap();
        assert_eq!(lo.status, ChaosStatus::NoOddCycleNoTurbulence);
        assert_eq!(hi.status, ChaosStatus::OddCycleAndTurbulent);
        let (lo, hi) = verdict_boundary_probe(2.0, 5.574, 1e-3).unwrap();
        assert_eq!(lo.status, ChaosStatus::NoOddCycleNoTurbulence);
        assert_eq!(hi.status, ChaosStatus::OddCycleAndTurbulent);
        let (lo, hi) = verdict_boundary_probe(1.0, 3.236, 1e-3).unwrap();
        assert!(lo.margins.unwrap().m_minus_f2m < 0.0);
        assert!(hi.margins.unwrap().m_minus_f2m > 0.0);
        assert!(verdict_boundary_probe(1.0, 3.6, 0.0).is_err());
    }

    #[test]
    fn equality_band_gives_turbulent_only() {
        // bisect z - f^3(m) to the last representable alpha
        let (mut lo, mut hi) = (3.6_f64, 3.7_f64);
        let c = |a: f64| {
            let f = map(a, 1.0);
            f.fixed_point_unchecked() - f.value_iter(0.5, 3)
        };
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if c(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let v = classify(&map(hi, 1.0)).unwrap();
        assert_eq!(v.status, ChaosStatus::TurbulentOnly);
        assert!(v.margins.unwrap().min_pi_minus_f3m.abs() <= 1e-10);
    }
}
