use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::symbolic::MarkovChain;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkovEntropy<T> {
    /// `H_n = H(p) + (n - 1) h`.
    pub block_entropy: T,
    /// `h = -sum_i p_i sum_j P_ij log P_ij`.
    pub rate: T,
}

/// Closed-form block entropy of a stationary chain; no enumeration.
pub fn markov_block_entropy_exact<T: Real>(
    chain: &MarkovChain<T>,
    n: usize,
) -> Result<MarkovEntropy<T>> {
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    let residual = chain.stationarity_residual();
    if residual > T::tol(1e-10) {
        return Err(Error::NotStationary {
            residual: residual.as_f64(),
        });
    }
    let xlogx = |x: T| if x > T::zero() { x * x.ln() } else { T::zero() };
    let p = chain.initial();
    let m = p.len();
    let initial_entropy: T = -p.iter().map(|&x| xlogx(x)).sum::<T>();
    let rate: T = -(0..m)
        .map(|i| p[i] * (0..m).map(|j| xlogx(chain.p(i, j))).sum::<T>())
        .sum::<T>();
    Ok(MarkovEntropy {
        block_entropy: initial_entropy + T::from_usize_lossy(n - 1) * rate,
        rate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sticky_chain_rate() {
        let chain = MarkovChain::new(
            vec![vec![0.9, 0.1], vec![0.2, 0.8]],
            vec![2.0 / 3.0, 1.0 / 3.0],
            true,
        )
        .unwrap();
        let e = markov_block_entropy_exact(&chain, 1).unwrap();
        // (2/3) H(0.1) + (1/3) H(0.2) with H in nats
        let h01 = -(0.1f64 * 0.1f64.ln() + 0.9 * 0.9f64.ln());
        let h02 = -(0.2f64 * 0.2f64.ln() + 0.8 * 0.8f64.ln());
        assert!((e.rate - (2.0 * h01 + h02) / 3.0).abs() < 1e-15);
        assert!((e.rate - 0.383523).abs() < 1e-6);
    }

    #[test]
    fn iid_and_permutation_chains() {
        let p = vec![0.2, 0.3, 0.5];
        let hp = -p.iter().map(|x: &f64| x * x.ln()).sum::<f64>();
        let iid = MarkovChain::iid(p).unwrap();
        let e = markov_block_entropy_exact(&iid, 5).unwrap();
        assert!((e.rate - hp).abs() < 1e-15);
        assert!((e.block_entropy - 5.0 * hp).abs() < 1e-14);

        let third = 1.0 / 3.0;
        let cycle = MarkovChain::new(
            vec![
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0],
                vec![1.0, 0.0, 0.0],
            ],
            vec![third; 3],
            true,
        )
        .unwrap();
        let e = markov_block_entropy_exact(&cycle, 7).unwrap();
        assert_eq!(e.rate, 0.0);
        assert!((e.block_entropy - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn non_stationary_is_rejected() {
        let chain =
            MarkovChain::new(vec![vec![0.9, 0.1], vec![0.2, 0.8]], vec![0.5, 0.5], false).unwrap();
        assert!(matches!(
            markov_block_entropy_exact(&chain, 3),
            Err(Error::NotStationary { .. })
        ));
    }
}
