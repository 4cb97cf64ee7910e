use std::fmt;

use crate::error::{Error, Result};

/// Number of symbols of a full shift. Symbols are `0..m` internally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    m: usize,
}

impl Alphabet {
    pub fn new(m: usize) -> Result<Self> {
        if !(2..=256).contains(&m) {
            return Err(Error::InvalidAlphabet { m });
        }
        Ok(Self { m })
    }

    pub fn size(self) -> usize {
        self.m
    }

    /// `m^n`, or `None` on overflow.
    pub fn word_count(self, n: usize) -> Option<u128> {
        (self.m as u128).checked_pow(u32::try_from(n).ok()?)
    }

    /// `m^n` as a `usize`, failing if it exceeds `cap`.
    pub fn checked_word_count(self, n: usize, cap: usize) -> Result<usize> {
        match self.word_count(n) {
            Some(c) if c <= cap as u128 => Ok(c as usize),
            Some(c) => Err(Error::EnumerationLimit { requested: c, cap }),
            None => Err(Error::EnumerationLimit {
                requested: u128::MAX,
                cap,
            }),
        }
    }

    /// Lexicographic enumeration of all words of length `n`.
    pub fn words(self, n: usize, cap: usize) -> Result<impl Iterator<Item = Word>> {
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        let count = self.checked_word_count(n, cap)?;
        let m = self.m;
        Ok((0..count).map(move |i| Word::from_index(i, n, m)))
    }
}

/// A finite word `w_1 ... w_n`, naming the cylinder `[w_1 ... w_n]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: Vec<u8>, alphabet: Alphabet) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&s) = symbols.iter().find(|&&s| s as usize >= alphabet.size()) {
            return Err(Error::SymbolOutOfRange {
                symbol: s as usize,
                m: alphabet.size(),
            });
        }
        Ok(Self(symbols))
    }

    /// Unchecked constructor for internal enumeration.
    pub(crate) fn from_vec(symbols: Vec<u8>) -> Self {
        debug_assert!(!symbols.is_empty());
        Self(symbols)
    }

    /// The constant word `(a, a, ..., a)` of length `n`.
    pub fn constant(a: u8, n: usize, alphabet: Alphabet) -> Result<Self> {
        Self::new(vec![a; n], alphabet)
    }

    /// Word whose base-`m` digits (most significant first) spell `index`.
    pub fn from_index(mut index: usize, n: usize, m: usize) -> Self {
        let mut symbols = vec![0u8; n];
        for slot in symbols.iter_mut().rev() {
            *slot = (index % m) as u8;
            index /= m;
        }
        Self(symbols)
    }

    /// Inverse of [`Word::from_index`].
    pub fn index(&self, m: usize) -> usize {
        self.0.iter().fold(0usize, |acc, &s| acc * m + s as usize)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn first(&self) -> u8 {
        self.0[0]
    }

    /// `w_{k+1} ... w_n`, i.e. the word of `sigma^k`. `k < len`.
    pub fn suffix(&self, k: usize) -> &[u8] {
        &self.0[k..]
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn extended(&self, symbol: u8) -> Word {
        let mut v = self.0.clone();
        v.push(symbol);
        Word(v)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

/// Words are reported with 1-based symbols, e.g. `[1,2,2]`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", *s as usize + 1)?;
        }
        f.write_str("]")
    }
}

impl AsRef<[u8]> for Word {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_rejects_degenerate_sizes() {
        assert!(Alphabet::new(1).is_err());
        assert!(Alphabet::new(257).is_err());
        assert_eq!(Alphabet::new(3).unwrap().size(), 3);
    }

    #[test]
    fn word_validates_symbols() {
        let a = Alphabet::new(2).unwrap();
        assert_eq!(Word::new(vec![], a), Err(Error::EmptyWord));
        assert_eq!(
            Word::new(vec![0, 2], a),
            Err(Error::SymbolOutOfRange { symbol: 2, m: 2 })
        );
    }

    #[test]
    fn index_round_trip_is_lexicographic() {
        let a = Alphabet::new(3).unwrap();
        let words: Vec<Word> = a.words(3, 1000).unwrap().collect();
        assert_eq!(words.len(), 27);
        assert!(words.windows(2).all(|p| p[0] < p[1]));
        for (i, w) in words.iter().enumerate() {
            assert_eq!(w.index(3), i);
        }
    }

    #[test]
    fn enumeration_cap_fails_loudly() {
        let a = Alphabet::new(2).unwrap();
        assert!(matches!(
            a.words(11, 1024),
            Err(Error::EnumerationLimit {
                requested: 2048,
                cap: 1024
            })
        ));
    }

    #[test]
    fn display_is_one_based() {
        let a = Alphabet::new(2).unwrap();
        assert_eq!(Word::new(vec![0, 1], a).unwrap().to_string(), "[1,2]");
    }
}
