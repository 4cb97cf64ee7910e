//! Dimension estimates for Birkhoff level sets at a fixed depth.

pub mod context;
pub mod lower;
pub mod moran;
pub mod options;
pub mod parabolic;
pub mod sampler;
pub mod upper;

pub use context::DepthContext;
pub use lower::{lower_bound, LowerBound};
pub use moran::{moran_dimension, moran_root};
pub use options::SolverOptions;
pub use parabolic::{full_spectrum, parabolic_interval, PointDiagnostics, SpectrumPoint};
pub use sampler::{alternating_sampler, BlockSource, Checkpoint, SamplerConfig};
pub use upper::{upper_bound, UpperBound};

impl<T: crate::scalar::Real> DepthContext<T> {
    /// Lower bound at `alpha` reusing this table.
    pub fn lower_bound(&self, alpha: T) -> crate::Result<LowerBound<T>> {
        lower::lower_bound_in(self, alpha)
    }

    /// Upper bound at `alpha` reusing this table.
    pub fn upper_bound(&self, alpha: T) -> crate::Result<UpperBound<T>> {
        upper::upper_bound_in(self, alpha)
    }
}
