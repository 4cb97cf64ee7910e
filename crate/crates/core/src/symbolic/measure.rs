use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{entropy_term, pairwise_sum, Real};
use crate::symbolic::word::{Alphabet, Word};

/// Default cap on the number of enumerated words (`2^24`).
pub const DEFAULT_ENUMERATION_CAP: usize = 1 << 24;

/// A probability vector on words of a fixed length `n`.
///
/// Storage is sparse: words of weight zero need not be present. The `n`-th
/// level Bernoulli extension (i.i.d. concatenation of blocks) is never
/// materialized; statistics of it are computed from the block weights.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMeasure<T> {
    alphabet: Alphabet,
    n: usize,
    weights: BTreeMap<Word, T>,
}

impl<T: Real> BlockMeasure<T> {
    /// Validates nonnegativity, word length and total mass `1 +- 1e-12`.
    pub fn from_weights<I>(alphabet: Alphabet, n: usize, weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, T)>,
    {
        let map = Self::collect(alphabet, n, weights)?;
        let values: Vec<T> = map.values().copied().collect();
        let total = pairwise_sum(&values);
        if (total - T::one()).abs() > T::tol(1e-12) {
            return Err(Error::InvalidMeasure(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        Ok(Self {
            alphabet,
            n,
            weights: map,
        })
    }

    /// Rescales nonnegative weights to total mass one.
    pub fn normalized<I>(alphabet: Alphabet, n: usize, weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, T)>,
    {
        let mut map = Self::collect(alphabet, n, weights)?;
        let values: Vec<T> = map.values().copied().collect();
        let total = pairwise_sum(&values);
        if !(total > T::zero()) || !total.is_finite() {
            return Err(Error::InvalidMeasure(format!(
                "total mass {total} is not positive"
            )));
        }
        for w in map.values_mut() {
            *w /= total;
        }
        Ok(Self {
            alphabet,
            n,
            weights: map,
        })
    }

    fn collect<I>(alphabet: Alphabet, n: usize, weights: I) -> Result<BTreeMap<Word, T>>
    where
        I: IntoIterator<Item = (Word, T)>,
    {
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        let mut map = BTreeMap::new();
        for (word, w) in weights {
            if word.len() != n {
                return Err(Error::InvalidMeasure(format!(
                    "word {word} has length {}, expected {n}",
                    word.len()
                )));
            }
            if let Some(&s) = word
                .symbols()
                .iter()
                .find(|&&s| s as usize >= alphabet.size())
            {
                return Err(Error::SymbolOutOfRange {
                    symbol: s as usize,
                    m: alphabet.size(),
                });
            }
            if !(w >= T::zero()) || !w.is_finite() {
                return Err(Error::InvalidMeasure(format!(
                    "weight {w} of {word} is invalid"
                )));
            }
            if w > T::zero() {
                *map.entry(word).or_insert_with(T::zero) += w;
            }
        }
        if map.is_empty() {
            return Err(Error::InvalidMeasure(
                "no word carries positive weight".into(),
            ));
        }
        Ok(map)
    }

    pub fn uniform(alphabet: Alphabet, n: usize, cap: usize) -> Result<Self> {
        let count = alphabet.checked_word_count(n, cap)?;
        let w = T::one() / T::from_usize_lossy(count);
        Self::from_weights(alphabet, n, alphabet.words(n, cap)?.map(|word| (word, w)))
    }

    pub fn dirac(alphabet: Alphabet, word: Word) -> Result<Self> {
        let n = word.len();
        Self::from_weights(alphabet, n, [(word, T::one())])
    }

    /// The `n`-fold product of a one-symbol distribution `q`.
    pub fn product(alphabet: Alphabet, q: &[T], n: usize, cap: usize) -> Result<Self> {
        if q.len() != alphabet.size() {
            return Err(Error::InvalidMeasure(format!(
                "one-block distribution has {} entries, alphabet has {}",
                q.len(),
                alphabet.size()
            )));
        }
        let words = alphabet.words(n, cap)?;
        Self::from_weights(
            alphabet,
            n,
            words.map(|word| {
                let w = word
                    .symbols()
                    .iter()
                    .fold(T::one(), |acc, &s| acc * q[s as usize]);
                (word, w)
            }),
        )
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn block_length(&self) -> usize {
        self.n
    }

    pub fn support_size(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, word: &Word) -> T {
        self.weights.get(word).copied().unwrap_or_else(T::zero)
    }

    /// Support words with their weights, in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, T)> + '_ {
        self.weights.iter().map(|(w, &p)| (w, p))
    }

    /// Pairwise sum of `weight(w) * f(w)` over the support.
    pub fn expectation<F: Fn(&Word) -> T>(&self, f: F) -> T {
        let terms: Vec<T> = self.weights.iter().map(|(w, &p)| p * f(w)).collect();
        pairwise_sum(&terms)
    }

    /// Marginal on the first `k <= n` symbols.
    pub fn prefix_marginal(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.n {
            return Err(Error::InvalidMeasure(format!(
                "prefix length {k} outside 1..={}",
                self.n
            )));
        }
        let mut map: BTreeMap<Word, Vec<T>> = BTreeMap::new();
        for (w, &p) in &self.weights {
            map.entry(Word::from_vec(w.symbols()[..k].to_vec()))
                .or_default()
                .push(p);
        }
        let weights = map.into_iter().map(|(w, ps)| (w, pairwise_sum(&ps)));
        Self::from_weights(self.alphabet, k, weights)
    }
}

/// Shannon entropy `sum nu(w) ln(1/nu(w))` in nats.
pub fn shannon_entropy<T: Real>(nu: &BlockMeasure<T>) -> T {
    let terms: Vec<T> = nu.weights.values().map(|&p| entropy_term(p)).collect();
    pairwise_sum(&terms)
}

/// Entropy of a plain probability vector, in nats.
pub fn vector_entropy<T: Real>(p: &[T]) -> T {
    let terms: Vec<T> = p.iter().map(|&x| entropy_term(x)).collect();
    pairwise_sum(&terms)
}
