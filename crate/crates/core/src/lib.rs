//! Numerical Birkhoff-average multifractal spectra for iterated function
//! systems on `[0,1]`, including systems with parabolic fixed points.
//!
//! The estimators combine a variational lower bound (entropy over Lyapunov
//! exponent, maximized over `n`-block measures) with a Moran-equation cover
//! upper bound. Everything is generic over [`Real`]; the `*F64` aliases at the
//! crate root are the types the CLI works with.

// Negated comparisons are how NaN inputs get rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geometry;
pub mod oracle;
pub mod scalar;
pub mod spectrum;
pub mod symbolic;

pub use error::{Error, Result};
pub use geometry::{CylinderTable, IfsSystem, Interval, Potential};
pub use scalar::Real;
pub use spectrum::{SolverOptions, SpectrumPoint};
pub use symbolic::{Alphabet, BlockMeasure, MarkovChain, Word};

pub type IfsSystemF64 = IfsSystem<f64>;
pub type IfsSystemF32 = IfsSystem<f32>;
pub type PotentialF64 = Potential<f64>;
pub type BlockMeasureF64 = BlockMeasure<f64>;
pub type MarkovChainF64 = MarkovChain<f64>;
pub type SolverOptionsF64 = SolverOptions<f64>;
pub type SpectrumPointF64 = SpectrumPoint<f64>;
pub type IntervalF64 = Interval<f64>;
