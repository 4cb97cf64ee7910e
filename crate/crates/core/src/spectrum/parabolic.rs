use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{IfsSystem, Interval, Potential};
use crate::scalar::Real;
use crate::spectrum::context::DepthContext;
use crate::spectrum::lower::lower_bound_in;
use crate::spectrum::moran::{moran_root, with_depth};
use crate::spectrum::options::SolverOptions;
use crate::spectrum::upper::upper_bound_in;

/// `[min F(x_i), max F(x_i)]` over the fixed points of parabolic branches, or
/// `None` when every branch is hyperbolic.
pub fn parabolic_interval<T: Real>(
    sys: &IfsSystem<T>,
    potential: &Potential<T>,
) -> Option<Interval<T>> {
    sys.branches()
        .iter()
        .enumerate()
        .filter(|(_, b)| b.is_parabolic())
        .filter_map(|(i, b)| {
            b.fixed_point()
                .map(|x| potential.value_at_fixed_point(i, x))
        })
        .fold(None, |acc: Option<Interval<T>>, v| {
            Some(match acc {
                None => Interval::point(v),
                Some(iv) => Interval::new(iv.lo.min(v), iv.hi.max(v)),
            })
        })
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointDiagnostics<T> {
    pub depth: usize,
    pub rho: T,
    pub delta: T,
    pub lemma1_gap: T,
    pub variation_slack: T,
    pub iterations: usize,
    pub t: Option<T>,
    pub q: Option<T>,
    pub cover_size: Option<usize>,
    pub achieved_alpha: Option<T>,
    pub achieved_lambda: Option<T>,
}

/// One row of a spectrum sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumPoint<T> {
    pub alpha: T,
    pub lower: Option<T>,
    pub upper: Option<T>,
    pub in_parabolic_interval: bool,
    pub diagnostics: PointDiagnostics<T>,
    /// First failure at this point; the other bound may still be present.
    pub error: Option<Error>,
}

/// Lower and upper estimates at each `alpha`, sorted by `alpha`. Points in the
/// parabolic interval get the attractor estimate for both.
pub fn full_spectrum<T: Real>(
    sys: &IfsSystem<T>,
    potential: &Potential<T>,
    alphas: &[T],
    options: &SolverOptions<T>,
) -> Result<Vec<SpectrumPoint<T>>> {
    let ctx = DepthContext::new(sys, potential, options)?;
    let interval = parabolic_interval(sys, potential);
    let in_interval = |a: T| interval.is_some_and(|iv| a >= iv.lo && a <= iv.hi);
    let attractor = if alphas.iter().any(|&a| in_interval(a)) {
        Some(
            moran_root(ctx.table.log_diameters(), options.moran_tol)
                .map_err(|e| with_depth(e, options.depth)),
        )
    } else {
        None
    };

    let mut points: Vec<SpectrumPoint<T>> = alphas
        .par_iter()
        .map(|&alpha| {
            let mut diagnostics = PointDiagnostics {
                depth: ctx.depth(),
                rho: ctx.rho,
                delta: ctx.delta,
                lemma1_gap: ctx.lemma1_gap,
                variation_slack: ctx.variation_slack,
                ..PointDiagnostics::default()
            };
            if in_interval(alpha) {
                let (value, error) = match attractor.as_ref().expect("computed when needed") {
                    Ok(s) => (Some(*s), None),
                    Err(e) => (None, Some(e.clone())),
                };
                diagnostics.cover_size = Some(ctx.table.len());
                return SpectrumPoint {
                    alpha,
                    lower: value,
                    upper: value,
                    in_parabolic_interval: true,
                    diagnostics,
                    error,
                };
            }
            let mut error = None;
            let lower = match lower_bound_in(&ctx, alpha) {
                Ok(lb) => {
                    diagnostics.iterations = lb.iterations;
                    diagnostics.t = Some(lb.t);
                    diagnostics.q = Some(lb.q);
                    diagnostics.achieved_alpha = Some(lb.achieved_alpha);
                    diagnostics.achieved_lambda = Some(lb.achieved_lambda);
                    Some(lb.dim)
                }
                Err(e) => {
                    error = Some(e);
                    None
                }
            };
            let upper = match upper_bound_in(&ctx, alpha) {
                Ok(ub) => {
                    diagnostics.cover_size = Some(ub.cover_size);
                    Some(ub.dim)
                }
                Err(e) => {
                    error.get_or_insert(e);
                    None
                }
            };
            SpectrumPoint {
                alpha,
                lower,
                upper,
                in_parabolic_interval: false,
                diagnostics,
                error,
            }
        })
        .collect();
    points.sort_by(|a, b| {
        a.alpha
            .partial_cmp(&b.alpha)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(points)
}
