use crate::error::{Error, Result};
use crate::scalar::{pairwise_sum, Real};
use crate::symbolic::measure::BlockMeasure;
use crate::symbolic::word::{Alphabet, Word};

/// A finite-state Markov chain used to generate test block measures.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovChain<T> {
    alphabet: Alphabet,
    transition: Vec<Vec<T>>,
    initial: Vec<T>,
    stationary: bool,
}

impl<T: Real> MarkovChain<T> {
    /// Builds a chain from a row-stochastic matrix and an initial vector.
    ///
    /// When `stationary` is set, `initial * P = initial` is checked to `1e-10`.
    pub fn new(transition: Vec<Vec<T>>, initial: Vec<T>, stationary: bool) -> Result<Self> {
        let m = transition.len();
        let alphabet = Alphabet::new(m)
            .map_err(|_| Error::InvalidChain(format!("chain needs 2..=256 states, got {m}")))?;
        if initial.len() != m {
            return Err(Error::InvalidChain(format!(
                "initial vector has {} entries, expected {m}",
                initial.len()
            )));
        }
        for (i, row) in transition.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidChain(format!(
                    "row {i} has {} entries",
                    row.len()
                )));
            }
            if row.iter().any(|&p| !(p >= T::zero()) || !p.is_finite()) {
                return Err(Error::InvalidChain(format!("row {i} has a negative entry")));
            }
            let s = pairwise_sum(row);
            if (s - T::one()).abs() > T::tol(1e-12) {
                return Err(Error::InvalidChain(format!("row {i} sums to {s}")));
            }
        }
        if initial.iter().any(|&p| !(p >= T::zero()))
            || (pairwise_sum(&initial) - T::one()).abs() > T::tol(1e-12)
        {
            return Err(Error::InvalidChain(
                "initial vector is not a probability".into(),
            ));
        }
        let chain = Self {
            alphabet,
            transition,
            initial,
            stationary,
        };
        if stationary {
            let residual = chain.stationarity_residual();
            if residual > T::tol(1e-10) {
                return Err(Error::NotStationary {
                    residual: residual.as_f64(),
                });
            }
        }
        Ok(chain)
    }

    /// Chain with every row equal to `p` (an i.i.d. source).
    pub fn iid(p: Vec<T>) -> Result<Self> {
        let rows = vec![p.clone(); p.len()];
        Self::new(rows, p, true)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn transition(&self) -> &[Vec<T>] {
        &self.transition
    }

    pub fn initial(&self) -> &[T] {
        &self.initial
    }

    pub fn is_stationary(&self) -> bool {
        self.stationary
    }

    pub fn p(&self, i: usize, j: usize) -> T {
        self.transition[i][j]
    }

    /// `max_j |(pP)_j - p_j|`.
    pub fn stationarity_residual(&self) -> T {
        let m = self.alphabet.size();
        (0..m)
            .map(|j| {
                let terms: Vec<T> = (0..m)
                    .map(|i| self.initial[i] * self.transition[i][j])
                    .collect();
                (pairwise_sum(&terms) - self.initial[j]).abs()
            })
            .fold(T::zero(), T::max)
    }

    /// Probability of the cylinder `[w]`.
    pub fn word_probability(&self, word: &[u8]) -> T {
        let mut p = self.initial[word[0] as usize];
        for pair in word.windows(2) {
            p *= self.transition[pair[0] as usize][pair[1] as usize];
        }
        p
    }
}

/// Length-`n` marginal of the chain: `p_{w1} P_{w1 w2} ... P_{w(n-1) wn}`.
pub fn block_marginal<T: Real>(
    chain: &MarkovChain<T>,
    n: usize,
    cap: usize,
) -> Result<BlockMeasure<T>> {
    let alphabet = chain.alphabet();
    let words = alphabet.words(n, cap)?;
    BlockMeasure::from_weights(
        alphabet,
        n,
        words.map(|w: Word| {
            let p = chain.word_probability(w.symbols());
            (w, p)
        }),
    )
}
