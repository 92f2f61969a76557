//! The pollution-effect growth map `f(k) = alpha * k * (1 - k)^beta` on `[0, 1]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{one_minus_pow, Scalar};
use crate::tolerance::DOMAIN_EPS_FACTOR;

/// `k_{t+1} = alpha * k_t * (1 - k_t)^beta`.
///
/// `alpha` is the vertical stretch (saving ratio times productivity) and `beta`
/// the strength of the pollution effect. Capital is normalised so its ceiling is 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PollutionMap<T> {
    alpha: T,
    beta: T,
}

/// The peak of the map, `m = 1 / (1 + beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint<T> {
    pub m: T,
}

/// The interior fixed point `z = 1 - alpha^(-1/beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedPoint<T> {
    pub z: T,
}

impl<T: Scalar> PollutionMap<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        if !alpha.is_finite() || alpha <= T::zero() {
            return Err(Error::invalid(format!(
                "alpha must be finite and > 0, got {alpha}"
            )));
        }
        if !beta.is_finite() || beta < T::zero() {
            return Err(Error::invalid(format!(
                "beta must be finite and >= 0, got {beta}"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    /// Raw `alpha * k * (1 - k)^beta` with no domain checks.
    ///
    /// Outside `[0, 1]` the power follows [`real_pow`](crate::scalar) conventions, so
    /// non-integral `beta` with `k > 1` yields NaN.
    #[inline]
    pub fn value(&self, k: T) -> T {
        self.alpha * k * one_minus_pow(k, self.beta)
    }

    /// `n`-fold composition of [`value`](Self::value).
    pub fn value_iter(&self, mut k: T, n: usize) -> T {
        for _ in 0..n {
            k = self.value(k);
        }
        k
    }

    fn domain_slack(&self) -> T {
        T::epsilon() * T::lit(DOMAIN_EPS_FACTOR)
    }

    /// Evaluates the map on `[0, 1]`.
    ///
    /// Results above 1 by at most a few epsilons are clamped to 1; anything
    /// larger is a [`Error::DomainEscape`].
    pub fn eval(&self, k: T) -> Result<T> {
        let slack = self.domain_slack();
        if !(k >= -slack && k <= T::one() + slack) {
            return Err(Error::invalid(format!("k = {k} outside [0, 1]")));
        }
        let k = k.max(T::zero()).min(T::one());
        let v = self.value(k);
        if v > T::one() + slack || v.is_nan() {
            return Err(Error::DomainEscape {
                k: k.as_f64(),
                value: v.as_f64(),
            });
        }
        Ok(v.min(T::one()).max(T::zero()))
    }

    /// `f'(k) = alpha * (1 - k)^(beta - 1) * (1 - k - beta * k)`.
    pub fn derivative(&self, k: T) -> Result<T> {
        if !(k >= T::zero() && k <= T::one()) {
            return Err(Error::invalid(format!("k = {k} outside [0, 1]")));
        }
        if k == T::one() && self.beta < T::one() {
            return Err(Error::SingularPoint { k: k.as_f64() });
        }
        Ok(self.derivative_unchecked(k))
    }

    #[inline]
    pub(crate) fn derivative_unchecked(&self, k: T) -> T {
        let b = self.beta;
        self.alpha * one_minus_pow(k, b - T::one()) * (T::one() - k - b * k)
    }

    /// `f^n(k0)`; every intermediate value must stay in `[0, 1]`.
    pub fn iterate(&self, k0: T, n: usize) -> Result<T> {
        let mut k = k0;
        if n == 0 {
            self.eval(k0)?;
            return Ok(k0);
        }
        for _ in 0..n {
            k = self.eval(k)?;
        }
        Ok(k)
    }

    pub fn critical_point(&self) -> Result<CriticalPoint<T>> {
        if self.beta <= T::zero() {
            return Err(Error::invalid("critical point needs beta > 0"));
        }
        Ok(CriticalPoint {
            m: self.peak_location(),
        })
    }

    /// `1 / (1 + beta)`, without the `beta > 0` check.
    #[inline]
    pub(crate) fn peak_location(&self) -> T {
        T::one() / (T::one() + self.beta)
    }

    pub fn fixed_point(&self) -> Result<FixedPoint<T>> {
        if self.alpha <= T::one() {
            return Err(Error::NoInteriorFixedPoint {
                alpha: self.alpha.as_f64(),
            });
        }
        if self.beta <= T::zero() {
            return Err(Error::invalid("fixed point needs beta > 0"));
        }
        Ok(FixedPoint {
            z: self.fixed_point_unchecked(),
        })
    }

    /// `1 - alpha^(-1/beta)` via `expm1` for accuracy near `alpha = 1`.
    #[inline]
    pub(crate) fn fixed_point_unchecked(&self) -> T {
        -(-self.alpha.ln() / self.beta).exp_m1()
    }
}
