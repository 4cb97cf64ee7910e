//! Exhaustive per-word statistics at a fixed depth.
//!
//! Cylinders are built by prepending symbols to suffixes, so every suffix
//! cylinder is computed once and shared by the `m^(n-j)` words ending in it.
//! Total work is `O(m^n)` branch evaluations rather than `O(n^2 m^n)`.

use crate::error::{Error, Result};
use crate::geometry::interval::Interval;
use crate::geometry::potential::Potential;
use crate::geometry::system::IfsSystem;
use crate::scalar::Real;
use crate::symbolic::Word;

/// Statistics of a single word, computed by one backward pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WordStats<T> {
    /// `log D_n(w)`.
    pub log_diameter: T,
    /// `S_n f(w)`; zero when no potential was supplied.
    pub potential_sum: T,
    /// `S_n g(w)`.
    pub geometric_sum: T,
}

pub fn word_stats<T: Real>(
    sys: &IfsSystem<T>,
    potential: Option<&Potential<T>>,
    word: &[u8],
) -> Result<WordStats<T>> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut cyl = Interval::unit();
    let mut d = T::one();
    let mut potential_sum = T::zero();
    let mut geometric_sum = T::zero();
    for &a in word.iter().rev() {
        let branch = sys.branch(a as usize);
        geometric_sum += -branch.derivative(cyl.midpoint()).ln();
        (cyl, d) = branch.apply_cylinder(cyl, d);
        if let Some(p) = potential {
            potential_sum += p.eval_on_cylinder(a, cyl);
        }
    }
    if !(d > T::zero()) {
        return Err(Error::DegenerateCylinder {
            word: word.to_vec(),
        });
    }
    Ok(WordStats {
        log_diameter: d.ln(),
        potential_sum,
        geometric_sum,
    })
}

/// `log D_n`, `S_n f` and `S_n g` for every word of length `n`, indexed
/// lexicographically.
#[derive(Debug, Clone)]
pub struct CylinderTable<T> {
    depth: usize,
    m: usize,
    log_diameter: Vec<T>,
    potential_sum: Vec<T>,
    geometric_sum: Vec<T>,
}

struct Builder<'a, T: Real> {
    sys: &'a IfsSystem<T>,
    potential: Option<&'a Potential<T>>,
    depth: usize,
    m: usize,
    powers: Vec<usize>,
    table: CylinderTable<T>,
}

impl<T: Real> Builder<'_, T> {
    fn visit(
        &mut self,
        len: usize,
        cyl: Interval<T>,
        diam: T,
        suffix_index: usize,
        pot: T,
        geo: T,
    ) -> Result<()> {
        let x = cyl.midpoint();
        for a in 0..self.m {
            let branch = self.sys.branch(a);
            let (child, child_diam) = branch.apply_cylinder(cyl, diam);
            let g = -branch.derivative(x).ln();
            let f = match self.potential {
                Some(p) => p.eval_on_cylinder(a as u8, child),
                None => T::zero(),
            };
            let index = a * self.powers[len] + suffix_index;
            if len + 1 == self.depth {
                let d = child_diam;
                if !(d > T::zero()) {
                    let word = Word::from_index(index, self.depth, self.m);
                    return Err(Error::DegenerateCylinder {
                        word: word.symbols().to_vec(),
                    });
                }
                self.table.log_diameter[index] = d.ln();
                self.table.potential_sum[index] = pot + f;
                self.table.geometric_sum[index] = geo + g;
            } else {
                self.visit(len + 1, child, child_diam, index, pot + f, geo + g)?;
            }
        }
        Ok(())
    }
}

impl<T: Real> CylinderTable<T> {
    pub fn build(
        sys: &IfsSystem<T>,
        potential: Option<&Potential<T>>,
        depth: usize,
        cap: usize,
    ) -> Result<Self> {
        if depth == 0 {
            return Err(Error::EmptyWord);
        }
        let alphabet = sys.alphabet();
        let count = alphabet.checked_word_count(depth, cap)?;
        let m = alphabet.size();
        let powers = (0..depth).map(|k| m.pow(k as u32)).collect();
        let mut builder = Builder {
            sys,
            potential,
            depth,
            m,
            powers,
            table: CylinderTable {
                depth,
                m,
                log_diameter: vec![T::zero(); count],
                potential_sum: vec![T::zero(); count],
                geometric_sum: vec![T::zero(); count],
            },
        };
        builder.visit(0, Interval::unit(), T::one(), 0, T::zero(), T::zero())?;
        Ok(builder.table)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn alphabet_size(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.log_diameter.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_diameter.is_empty()
    }

    pub fn word(&self, index: usize) -> Word {
        Word::from_index(index, self.depth, self.m)
    }

    pub fn log_diameters(&self) -> &[T] {
        &self.log_diameter
    }

    pub fn potential_sums(&self) -> &[T] {
        &self.potential_sum
    }

    pub fn geometric_sums(&self) -> &[T] {
        &self.geometric_sum
    }

    /// `lambda_n(w) = -(1/n) log D_n(w)`.
    pub fn lambda(&self, index: usize) -> T {
        -self.log_diameter[index] / T::from_usize_lossy(self.depth)
    }

    /// `max_w |lambda_n(w) - (1/n) S_n g(w)|`.
    pub fn lemma1_gap(&self) -> T {
        let n = T::from_usize_lossy(self.depth);
        self.log_diameter
            .iter()
            .zip(&self.geometric_sum)
            .map(|(&ld, &gs)| ((-ld - gs) / n).abs())
            .fold(T::zero(), T::max)
    }

    /// `[min_w S_n f(w) / n, max_w S_n f(w) / n]` over words selected by `keep`.
    pub fn average_range(&self, keep: impl Fn(usize) -> bool) -> Option<(T, T)> {
        let n = T::from_usize_lossy(self.depth);
        let mut range: Option<(T, T)> = None;
        for (i, &s) in self.potential_sum.iter().enumerate() {
            if !keep(i) {
                continue;
            }
            let a = s / n;
            range = Some(match range {
                None => (a, a),
                Some((lo, hi)) => (lo.min(a), hi.max(a)),
            });
        }
        range
    }
}
