//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All math is written against [`Real`], which is implemented for `f32` and
//! `f64`. Tolerances are stated in `f64` and lifted with [`Real::tol`], which
//! never goes below a small multiple of the type's machine epsilon.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point scalar usable throughout the crate.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal. Panics only if the value is not representable,
    /// which cannot happen for finite literals with `f32`/`f64`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar type")
    }

    /// A tolerance of `x`, clamped from below to `64 * EPSILON`.
    #[inline]
    fn tol(x: f64) -> Self {
        let floor = Self::epsilon() * Self::lit(64.0);
        Self::lit(x).max(floor)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Weights below this are treated as exactly zero in entropy sums.
    #[inline]
    fn negligible_weight() -> Self {
        // 1e-300 underflows in f32; use the smallest positive normal there.
        Self::from_f64(1e-300)
            .filter(|v| *v > Self::zero())
            .unwrap_or_else(Self::min_positive_value)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Pairwise (cascade) summation: deterministic and with `O(log n)` error growth.
pub fn pairwise_sum<T: Real>(values: &[T]) -> T {
    const BLOCK: usize = 32;
    if values.len() <= BLOCK {
        let mut acc = T::zero();
        for &v in values {
            acc += v;
        }
        return acc;
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Pairwise sum of `f(i)` for `i in 0..len`, without allocating `len` values
/// up front for short inputs.
pub fn pairwise_sum_by<T: Real, F: Fn(usize) -> T>(len: usize, f: F) -> T {
    fn go<T: Real, F: Fn(usize) -> T>(lo: usize, hi: usize, f: &F) -> T {
        const BLOCK: usize = 32;
        if hi - lo <= BLOCK {
            let mut acc = T::zero();
            for i in lo..hi {
                acc += f(i);
            }
            return acc;
        }
        let mid = lo + (hi - lo) / 2;
        go(lo, mid, f) + go(mid, hi, f)
    }
    go(0, len, &f)
}

/// `log(sum(exp(x)))` with max-shift. Returns `-inf` for an empty slice.
pub fn log_sum_exp<T: Real>(xs: &[T]) -> T {
    let max = xs.iter().copied().fold(T::neg_infinity(), T::max);
    if !max.is_finite() {
        return max;
    }
    max + pairwise_sum_by(xs.len(), |i| (xs[i] - max).exp()).ln()
}

/// `x * ln(1/x)` with the convention `0 ln(1/0) = 0`.
#[inline]
pub fn entropy_term<T: Real>(x: T) -> T {
    if x <= T::negligible_weight() {
        T::zero()
    } else {
        -x * x.ln()
    }
}
