//! Conversion of `sigma^n`-level statistics of an `n`-th level Bernoulli
//! measure into `sigma`-level statistics of its shift average.

use crate::scalar::Real;
use crate::symbolic::function::{birkhoff_sum, WordFunction};
use crate::symbolic::measure::{shannon_entropy, BlockMeasure};

#[derive(Debug, Clone, PartialEq)]
pub struct AbramovStats<T> {
    /// `H(nu) / n`, the entropy of the shift-averaged measure.
    pub entropy_rate: T,
    /// `(1/n) sum_w nu(w) S_n f(w)` for each supplied function.
    pub averages: Vec<T>,
}

pub fn abramov_stats<T: Real>(
    nu: &BlockMeasure<T>,
    functions: &[&dyn WordFunction<T>],
) -> AbramovStats<T> {
    let n = T::from_usize_lossy(nu.block_length());
    let entropy_rate = shannon_entropy(nu) / n;
    let averages = functions
        .iter()
        .map(|f| nu.expectation(|w| birkhoff_sum(*f, w.symbols())) / n)
        .collect();
    AbramovStats {
        entropy_rate,
        averages,
    }
}
