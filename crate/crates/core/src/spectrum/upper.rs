use crate::error::{Error, Result};
use crate::geometry::{IfsSystem, Potential};
use crate::scalar::Real;
use crate::spectrum::context::DepthContext;
use crate::spectrum::moran::{moran_root, with_depth};
use crate::spectrum::options::SolverOptions;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperBound<T> {
    pub dim: T,
    /// Number of cylinders in the cover.
    pub cover_size: usize,
    pub rho: T,
    pub delta: T,
}

/// Moran root over words with `|S_n f / n - alpha| < rho` and `lambda_n >= delta`.
pub fn upper_bound<T: Real>(
    sys: &IfsSystem<T>,
    potential: &Potential<T>,
    alpha: T,
    options: &SolverOptions<T>,
) -> Result<UpperBound<T>> {
    let ctx = DepthContext::new(sys, potential, options)?;
    upper_bound_in(&ctx, alpha)
}

pub(crate) fn upper_bound_in<T: Real>(ctx: &DepthContext<T>, alpha: T) -> Result<UpperBound<T>> {
    let n = ctx.depth();
    if ctx.rho <= ctx.variation_slack {
        return Err(Error::WindowTooNarrow {
            rho: ctx.rho.as_f64(),
            slack: ctx.variation_slack.as_f64(),
            depth: n,
        });
    }
    let nt = T::from_usize_lossy(n);
    let phi = ctx.table.potential_sums();
    let ld = ctx.table.log_diameters();
    let cover: Vec<T> = ctx
        .admissible
        .iter()
        .filter(|&&i| (phi[i] / nt - alpha).abs() < ctx.rho)
        .map(|&i| ld[i])
        .collect();
    if cover.is_empty() {
        let (lo, hi) = ctx
            .achievable_range()
            .map_or((f64::NAN, f64::NAN), |(a, b)| (a.as_f64(), b.as_f64()));
        return Err(Error::AlphaUnreachable {
            alpha: alpha.as_f64(),
            depth: n,
            rho: ctx.rho.as_f64(),
            lo,
            hi,
        });
    }
    let dim = moran_root(&cover, ctx.options.moran_tol).map_err(|e| with_depth(e, n))?;
    Ok(UpperBound {
        dim,
        cover_size: cover.len(),
        rho: ctx.rho,
        delta: ctx.delta,
    })
}
