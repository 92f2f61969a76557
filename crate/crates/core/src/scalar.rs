use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar the certification routines are generic over: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable as scalar")
    }

    /// Lossy conversion used for reporting and serialization.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn count(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("usize representable as scalar")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// An absolute tolerance given in `f64`, floored at a small multiple of the
/// scalar's epsilon so `f32` callers do not get unreachable targets.
pub(crate) fn tol<T: Scalar>(v: f64) -> T {
    T::lit(v).max(T::epsilon() * T::lit(16.0))
}

/// `x^p` for real `p`, computed as `exp(p * ln x)`.
///
/// A zero base gives 0 for `p > 0` and 1 for `p == 0`. A negative base is only
/// defined for integral `p`; otherwise NaN.
pub(crate) fn real_pow<T: Scalar>(base: T, p: T) -> T {
    if let Some(n) = small_integer(p) {
        return base.powi(n);
    }
    if base > T::zero() {
        (p * base.ln()).exp()
    } else if base == T::zero() {
        if p > T::zero() {
            T::zero()
        } else if p == T::zero() {
            T::one()
        } else {
            T::infinity()
        }
    } else if p.fract() == T::zero() {
        let magnitude = (p * (-base).ln()).exp();
        let odd = (p * T::lit(0.5)).fract() != T::zero();
        if odd {
            -magnitude
        } else {
            magnitude
        }
    } else {
        T::nan()
    }
}

/// Integral exponents up to 64 in magnitude go through `powi`, which is exact
/// for the small integer cases (`beta = 1, 2, 3`) the boundary tests rely on.
fn small_integer<T: Scalar>(p: T) -> Option<i32> {
    if p.fract() == T::zero() && p.abs() <= T::lit(64.0) {
        p.to_i32()
    } else {
        None
    }
}

/// `(1 - k)^p` using `ln_1p` so small `k` keeps full precision.
pub(crate) fn one_minus_pow<T: Scalar>(k: T, p: T) -> T {
    if let Some(n) = small_integer(p) {
        return (T::one() - k).powi(n);
    }
    if k < T::one() {
        (p * (-k).ln_1p()).exp()
    } else {
        real_pow(T::one() - k, p)
    }
}

/// `n` uniformly spaced points on the closed interval `[lo, hi]`.
pub(crate) fn linspace<T: Scalar>(lo: T, hi: T, n: usize) -> impl Iterator<Item = T> {
    let steps = T::count(n.saturating_sub(1).max(1));
    (0..n).map(move |i| {
        if i + 1 == n && n > 1 {
            hi
        } else {
            lo + (hi - lo) * T::count(i) / steps
        }
    })
}
