//! Independent references for tests and the `validate` suites.
//!
//! Nothing here depends on [`crate::spectrum`]; comparisons between the two
//! are comparisons between separate code paths.

pub mod besicovitch;
pub mod brute_force;
pub mod markov_exact;

pub use besicovitch::{besicovitch_spectrum, BesicovitchSpec};
pub use brute_force::brute_force_ratio;
pub use markov_exact::{markov_block_entropy_exact, MarkovEntropy};

/// Root of `sum_i r_i^s = 1` by plain bisection on `[0, 64]`.
pub fn similarity_dimension(ratios: &[f64]) -> f64 {
    let f = |s: f64| ratios.iter().map(|r| r.powf(s)).sum::<f64>() - 1.0;
    let (mut a, mut b) = (0.0f64, 64.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if f(mid) > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn similarity_dimension_of_half_third() {
        let s = similarity_dimension(&[0.5, 1.0 / 3.0]);
        assert!((2f64.powf(-s) + 3f64.powf(-s) - 1.0).abs() < 1e-14);
        assert!((s - 0.7878).abs() < 1e-4);
        assert!((similarity_dimension(&[0.5, 0.5]) - 1.0).abs() < 1e-14);
    }
}
