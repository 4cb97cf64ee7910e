use std::fmt::Debug;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::interval::Interval;
use crate::scalar::Real;

/// Grid resolution used by the sampled (not proven) branch checks.
pub(crate) const CHECK_GRID: usize = 256;

/// An increasing `C^1` self-map of `[0,1]` together with its derivative.
pub trait BranchMap<T: Real>: Send + Sync + Debug {
    fn apply(&self, x: T) -> T;
    fn derivative(&self, x: T) -> T;

    /// Length of the image of `[lo, hi]`, where `len` is that interval's
    /// length carried separately. Overrides avoid cancellation in
    /// `apply(hi) - apply(lo)` once the interval is far below an ulp of `lo`.
    fn image_length(&self, lo: T, hi: T, _len: T) -> T {
        self.apply(hi) - self.apply(lo)
    }
}

/// `x -> offset + ratio * x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine<T> {
    pub ratio: T,
    pub offset: T,
}

impl<T: Real> BranchMap<T> for Affine<T> {
    fn apply(&self, x: T) -> T {
        self.offset + self.ratio * x
    }

    fn derivative(&self, _x: T) -> T {
        self.ratio
    }

    fn image_length(&self, _lo: T, _hi: T, len: T) -> T {
        self.ratio * len
    }
}

/// Left inverse branch of `x / (1 - x)`: `y -> y / (1 + y)`, parabolic at 0.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ParabolicLeft;

impl<T: Real> BranchMap<T> for ParabolicLeft {
    fn apply(&self, y: T) -> T {
        y / (T::one() + y)
    }

    fn derivative(&self, y: T) -> T {
        let d = T::one() + y;
        T::one() / (d * d)
    }

    fn image_length(&self, lo: T, hi: T, len: T) -> T {
        len / ((T::one() + lo) * (T::one() + hi))
    }
}

/// Right inverse branch of `(2x - 1) / x`: `y -> 1 / (2 - y)`, parabolic at 1.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ParabolicRight;

impl<T: Real> BranchMap<T> for ParabolicRight {
    fn apply(&self, y: T) -> T {
        T::one() / (T::lit(2.0) - y)
    }

    fn derivative(&self, y: T) -> T {
        let d = T::lit(2.0) - y;
        T::one() / (d * d)
    }

    fn image_length(&self, lo: T, hi: T, len: T) -> T {
        let two = T::lit(2.0);
        len / ((two - lo) * (two - hi))
    }
}

/// One inverse branch of the Manneville–Pomeau map `x + x^(1+beta) mod 1`.
///
/// On `domain`, the forward map is `x + x^(1+beta) - shift`, increasing from
/// 0 to 1. The inverse has no closed form and is solved by bracketed Newton
/// iteration (bisection whenever a Newton step leaves the bracket).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MannevillePomeauInverse<T> {
    pub beta: T,
    pub shift: T,
    pub domain: Interval<T>,
}

impl<T: Real> MannevillePomeauInverse<T> {
    pub fn forward(&self, x: T) -> T {
        x + x.powf(T::one() + self.beta) - self.shift
    }

    pub fn forward_derivative(&self, x: T) -> T {
        T::one() + (T::one() + self.beta) * x.powf(self.beta)
    }

    /// Solves `forward(x) = y` on the branch domain.
    pub fn solve(&self, y: T) -> T {
        solve_increasing(
            |x| self.forward(x) - y,
            |x| self.forward_derivative(x),
            self.domain.lo,
            self.domain.hi,
        )
    }
}

impl<T: Real> BranchMap<T> for MannevillePomeauInverse<T> {
    fn apply(&self, y: T) -> T {
        self.solve(y)
    }

    fn derivative(&self, y: T) -> T {
        T::one() / self.forward_derivative(self.solve(y))
    }
}

/// Root of an increasing `f` on `[lo, hi]` with `f(lo) <= 0 <= f(hi)`.
///
/// Iterates until the step is below a few ulps of the iterate, which leaves a
/// residual at machine precision (well under `1e-14` in `f64`).
pub(crate) fn solve_increasing<T: Real>(
    f: impl Fn(T) -> T,
    df: impl Fn(T) -> T,
    lo: T,
    hi: T,
) -> T {
    let (mut a, mut b) = (lo, hi);
    let fa = f(a);
    if fa >= T::zero() {
        return a;
    }
    let fb = f(b);
    if fb <= T::zero() {
        return b;
    }
    let mut x = a - fa * (b - a) / (fb - fa);
    let ulps = T::epsilon() * T::lit(4.0);
    for _ in 0..200 {
        let fx = f(x);
        if fx == T::zero() {
            return x;
        }
        if fx < T::zero() {
            a = x;
        } else {
            b = x;
        }
        let d = df(x);
        let newton = x - fx / d;
        let next = if d > T::zero() && newton > a && newton < b {
            newton
        } else {
            a + (b - a) / T::lit(2.0)
        };
        let step = (next - x).abs();
        x = next;
        if step <= ulps * x.abs().max(T::min_positive_value()) || b - a <= ulps * b.abs() {
            break;
        }
    }
    x
}

/// A branch `T_i` of an interval IFS.
#[derive(Debug, Clone)]
pub struct Branch<T: Real> {
    map: Arc<dyn BranchMap<T>>,
    image: Interval<T>,
    parabolic: bool,
    fixed_point: Option<T>,
}

impl<T: Real> Branch<T> {
    /// Validates monotonicity and the declared parabolic/hyperbolic type on a
    /// sampled grid. Parabolic branches need a fixed point with derivative 1.
    pub fn new(
        map: Arc<dyn BranchMap<T>>,
        parabolic: bool,
        fixed_point: Option<T>,
    ) -> Result<Self> {
        let image = Interval {
            lo: map.apply(T::zero()),
            hi: map.apply(T::one()),
        };
        if !(image.lo >= T::zero() && image.hi <= T::one() && image.lo < image.hi) {
            return Err(Error::InvalidSystem(format!(
                "branch image [{}, {}] is not an increasing subinterval of [0,1]",
                image.lo, image.hi
            )));
        }
        let one = T::one();
        for k in 0..=CHECK_GRID {
            let x = T::from_usize_lossy(k) / T::from_usize_lossy(CHECK_GRID);
            let d = map.derivative(x);
            if !(d > T::zero()) || !d.is_finite() {
                return Err(Error::InvalidSystem(format!(
                    "derivative {d} at {x} is not positive"
                )));
            }
            if !parabolic && d >= one {
                return Err(Error::InvalidSystem(format!(
                    "hyperbolic branch has derivative {d} >= 1 at {x}"
                )));
            }
        }
        if let Some(p) = fixed_point {
            if (map.apply(p) - p).abs() > T::tol(1e-9) {
                return Err(Error::InvalidSystem(format!("{p} is not a fixed point")));
            }
        }
        if parabolic {
            let p = fixed_point.ok_or_else(|| {
                Error::InvalidSystem("parabolic branch needs a fixed point".into())
            })?;
            let d = map.derivative(p);
            if (d - one).abs() > T::tol(1e-9) {
                return Err(Error::InvalidSystem(format!(
                    "parabolic branch has derivative {d} at its fixed point"
                )));
            }
        }
        Ok(Self {
            map,
            image,
            parabolic,
            fixed_point,
        })
    }

    #[inline]
    pub fn apply(&self, x: T) -> T {
        self.map.apply(x)
    }

    #[inline]
    pub fn derivative(&self, x: T) -> T {
        self.map.derivative(x)
    }

    /// Image of an interval (branches are increasing).
    #[inline]
    pub fn apply_interval(&self, i: Interval<T>) -> Interval<T> {
        Interval {
            lo: self.map.apply(i.lo),
            hi: self.map.apply(i.hi),
        }
    }

    /// Image of an interval together with its length, given the length of `i`.
    #[inline]
    pub fn apply_cylinder(&self, i: Interval<T>, len: T) -> (Interval<T>, T) {
        (
            self.apply_interval(i),
            self.map.image_length(i.lo, i.hi, len),
        )
    }

    pub fn image(&self) -> Interval<T> {
        self.image
    }

    pub fn is_parabolic(&self) -> bool {
        self.parabolic
    }

    pub fn fixed_point(&self) -> Option<T> {
        self.fixed_point
    }

    /// Sampled modulus of continuity: `max_x T(x + delta) - T(x)`.
    pub(crate) fn map_modulus(&self, delta: T) -> T {
        if delta >= T::one() {
            return self.image.diameter();
        }
        let span = T::one() - delta;
        (0..=CHECK_GRID)
            .map(|k| {
                let x = span * T::from_usize_lossy(k) / T::from_usize_lossy(CHECK_GRID);
                self.apply(x + delta) - self.apply(x)
            })
            .fold(T::zero(), T::max)
    }

    /// Sampled modulus of `log T'` at scale `h`.
    pub(crate) fn log_derivative_modulus(&self, h: T) -> T {
        let h = h.min(T::one());
        let span = T::one() - h;
        (0..=CHECK_GRID)
            .map(|k| {
                let x = span * T::from_usize_lossy(k) / T::from_usize_lossy(CHECK_GRID);
                (self.derivative(x + h).ln() - self.derivative(x).ln()).abs()
            })
            .fold(T::zero(), T::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(beta: f64) -> (MannevillePomeauInverse<f64>, MannevillePomeauInverse<f64>) {
        let c = solve_increasing(
            |x: f64| x + x.powf(1.0 + beta) - 1.0,
            |x: f64| 1.0 + (1.0 + beta) * x.powf(beta),
            0.0,
            1.0,
        );
        (
            MannevillePomeauInverse {
                beta,
                shift: 0.0,
                domain: Interval { lo: 0.0, hi: c },
            },
            MannevillePomeauInverse {
                beta,
                shift: 1.0,
                domain: Interval { lo: c, hi: 1.0 },
            },
        )
    }

    #[test]
    fn mp_inverse_branches_invert_the_forward_map() {
        let (left, right) = mp(0.5);
        for k in 0..=1000 {
            let y = k as f64 / 1000.0;
            let xl = left.apply(y);
            let xr = right.apply(y);
            assert!((left.forward(xl) - y).abs() < 1e-10, "left at {y}");
            assert!((right.forward(xr) - y).abs() < 1e-10, "right at {y}");
            assert!((left.forward(xl) - y).abs() < 1e-14);
        }
    }

    #[test]
    fn mp_branch_boundary_solves_golden_equation_for_beta_one() {
        // beta = 1: c + c^2 = 1, c = (sqrt 5 - 1) / 2
        let (left, _) = mp(1.0);
        assert!((left.domain.hi - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn solver_handles_endpoints() {
        let (left, right) = mp(0.5);
        assert_eq!(left.apply(0.0), 0.0);
        assert_eq!(right.apply(1.0), 1.0);
        assert!((right.apply(0.0) - left.domain.hi).abs() < 1e-15);
    }

    #[test]
    fn branch_rejects_wrong_type_declarations() {
        let steep: Arc<dyn BranchMap<f64>> = Arc::new(ParabolicLeft);
        assert!(Branch::new(steep.clone(), false, Some(0.0)).is_err());
        assert!(Branch::new(steep.clone(), true, None).is_err());
        assert!(Branch::new(steep, true, Some(0.0)).is_ok());
        let contracting: Arc<dyn BranchMap<f64>> = Arc::new(Affine {
            ratio: 0.5,
            offset: 0.0,
        });
        assert!(Branch::new(contracting.clone(), true, Some(0.0)).is_err());
        assert!(Branch::new(contracting, false, Some(0.0)).is_ok());
    }

    #[test]
    fn affine_modulus_is_exact() {
        let b = Branch::new(
            Arc::new(Affine {
                ratio: 0.25,
                offset: 0.5,
            }),
            false,
            None,
        )
        .unwrap();
        assert!((b.map_modulus(0.5) - 0.125f64).abs() < 1e-15);
        assert_eq!(b.log_derivative_modulus(0.3), 0.0);
    }
}
