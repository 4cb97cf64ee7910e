use crate::error::{Error, Result};
use crate::scalar::Real;

/// Equal-ratio linear system on `m` symbols with a first-symbol potential.
#[derive(Debug, Clone, PartialEq)]
pub struct BesicovitchSpec<T> {
    pub ratio: T,
    pub values: Vec<T>,
}

impl<T: Real> BesicovitchSpec<T> {
    pub fn new(ratio: T, values: Vec<T>) -> Result<Self> {
        let m = T::from_usize_lossy(values.len());
        if values.len() < 2 {
            return Err(Error::InvalidOptions("need at least two symbols".into()));
        }
        if !(ratio > T::zero() && ratio < T::one()) || m * ratio > T::one() + T::tol(1e-12) {
            return Err(Error::InvalidOptions(format!(
                "ratio {ratio} must lie in (0, 1/m]"
            )));
        }
        if values.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidOptions("values must be finite".into()));
        }
        Ok(Self { ratio, values })
    }

    fn range(&self) -> (T, T) {
        let lo = self.values.iter().copied().fold(T::infinity(), T::min);
        let hi = self.values.iter().copied().fold(T::neg_infinity(), T::max);
        (lo, hi)
    }

    /// Probabilities `p_i(q) ∝ exp(q (c_i - alpha))` and their mean offset.
    fn tilt(&self, q: T, alpha: T) -> (Vec<T>, T) {
        let xs: Vec<T> = self.values.iter().map(|&c| q * (c - alpha)).collect();
        let max = xs.iter().copied().fold(T::neg_infinity(), T::max);
        let e: Vec<T> = xs.iter().map(|&x| (x - max).exp()).collect();
        let z: T = e.iter().copied().sum();
        let p: Vec<T> = e.iter().map(|&x| x / z).collect();
        let mean = p
            .iter()
            .zip(&self.values)
            .map(|(&pi, &c)| pi * (c - alpha))
            .sum();
        (p, mean)
    }
}

fn entropy<T: Real>(p: &[T]) -> T {
    p.iter()
        .filter(|&&x| x > T::zero())
        .map(|&x| -x * x.ln())
        .sum()
}

/// `max { H(p) : sum p_i c_i = alpha } / log(1/r)`.
pub fn besicovitch_spectrum<T: Real>(spec: &BesicovitchSpec<T>, alpha: T) -> Result<T> {
    let (lo, hi) = spec.range();
    let scale = T::one().max(lo.abs()).max(hi.abs());
    let edge = T::tol(1e-12) * scale;
    if alpha < lo - edge || alpha > hi + edge {
        return Err(Error::Infeasible {
            alpha: alpha.as_f64(),
            depth: 1,
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    }
    let denom = -spec.ratio.ln();
    let extreme = if alpha >= hi - edge {
        Some(hi)
    } else if alpha <= lo + edge {
        Some(lo)
    } else {
        None
    };
    if let Some(v) = extreme {
        let count = spec
            .values
            .iter()
            .filter(|&&c| (c - v).abs() <= edge)
            .count();
        return Ok(T::from_usize_lossy(count).ln() / denom);
    }
    // Mean offset is increasing in q: bracket, then bisect.
    let mut a = -T::one();
    let mut b = T::one();
    while spec.tilt(a, alpha).1 > T::zero() {
        a *= T::lit(2.0);
    }
    while spec.tilt(b, alpha).1 < T::zero() {
        b *= T::lit(2.0);
    }
    let target = T::tol(1e-12) * scale;
    let mut q = (a + b) / T::lit(2.0);
    for _ in 0..400 {
        q = (a + b) / T::lit(2.0);
        let mean = spec.tilt(q, alpha).1;
        if mean.abs() <= target {
            break;
        }
        if mean < T::zero() {
            a = q;
        } else {
            b = q;
        }
    }
    let (p, _) = spec.tilt(q, alpha);
    Ok(entropy(&p) / denom)
}
