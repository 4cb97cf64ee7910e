use crate::error::{Error, Result};
use crate::geometry::IfsSystem;
use crate::scalar::Real;
use crate::symbolic::DEFAULT_ENUMERATION_CAP;

/// Working depth, cover window and tolerances for the estimators.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions<T> {
    /// Block length `n`; also the depth of the Moran cover.
    pub depth: usize,
    /// Window half-width for the upper bound. `None` picks
    /// `max(0.05, 2 * variation slack)`.
    pub rho: Option<T>,
    /// Lyapunov floor: words with `lambda_n < delta` are excluded. `None`
    /// picks 0 for hyperbolic systems and `1e-3 log m` for parabolic ones.
    pub delta: Option<T>,
    /// Stopping tolerance on `|H - t L|` in the fractional outer loop.
    pub ratio_tol: T,
    /// Tolerance on `|sum nu phi - n alpha|`, relative to `max(1, max|phi|)`.
    pub constraint_tol: T,
    /// Bisection width for Moran roots.
    pub moran_tol: T,
    pub max_iterations: usize,
    pub enumeration_cap: usize,
}

impl<T: Real> SolverOptions<T> {
    pub fn with_depth(depth: usize) -> Self {
        Self {
            depth,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.depth < 2 {
            return Err(Error::InvalidOptions(format!(
                "depth {} must be >= 2",
                self.depth
            )));
        }
        let positive = [
            ("ratio_tol", self.ratio_tol),
            ("constraint_tol", self.constraint_tol),
            ("moran_tol", self.moran_tol),
        ];
        for (name, v) in positive {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::InvalidOptions(format!(
                    "{name} = {v} must be positive"
                )));
            }
        }
        if let Some(rho) = self.rho {
            if !(rho > T::zero()) {
                return Err(Error::InvalidOptions(format!(
                    "rho = {rho} must be positive"
                )));
            }
        }
        if let Some(delta) = self.delta {
            if !(delta >= T::zero()) {
                return Err(Error::InvalidOptions(format!(
                    "delta = {delta} must be >= 0"
                )));
            }
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidOptions(
                "max_iterations must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn resolved_delta(&self, sys: &IfsSystem<T>) -> T {
        self.delta.unwrap_or_else(|| {
            if sys.has_parabolic_branch() {
                T::lit(1e-3) * T::from_usize_lossy(sys.alphabet().size()).ln()
            } else {
                T::zero()
            }
        })
    }

    pub fn resolved_rho(&self, variation_slack: T) -> T {
        self.rho
            .unwrap_or_else(|| T::lit(0.05).max(variation_slack * T::lit(2.0)))
    }
}

impl<T: Real> Default for SolverOptions<T> {
    fn default() -> Self {
        Self {
            depth: 10,
            rho: None,
            delta: None,
            ratio_tol: T::tol(1e-8),
            constraint_tol: T::tol(1e-10),
            moran_tol: T::tol(1e-10),
            max_iterations: 200,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}
