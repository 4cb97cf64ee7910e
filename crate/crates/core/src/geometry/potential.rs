use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::geometry::interval::Interval;
use crate::geometry::system::{IfsSystem, DIAMETER_TABLE_DEPTH};
use crate::scalar::Real;
use crate::symbolic::WordFunction;

/// A target potential `F`, inducing `f = F o Pi` on the shift.
///
/// Point potentials are evaluated at cylinder midpoints; word-local ones read
/// the first symbol and are exact on every cylinder.
#[derive(Clone)]
pub enum Potential<T> {
    /// `f(omega) = values[omega_1]`.
    FirstSymbol(Vec<T>),
    /// Indicator of the image of one branch, i.e. `omega_1 == branch`.
    IndicatorBranch(usize),
    /// `F(x) = x`.
    Coordinate,
    /// `F(x) = sum_k c_k x^k`.
    Polynomial(Vec<T>),
    /// An arbitrary continuous `F` with a Lipschitz constant on `[0,1]`.
    Custom {
        f: Arc<dyn Fn(T) -> T + Send + Sync>,
        lipschitz: T,
    },
}

impl<T: Real> fmt::Debug for Potential<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::FirstSymbol(v) => f.debug_tuple("FirstSymbol").field(v).finish(),
            Self::IndicatorBranch(i) => f.debug_tuple("IndicatorBranch").field(i).finish(),
            Self::Coordinate => f.write_str("Coordinate"),
            Self::Polynomial(c) => f.debug_tuple("Polynomial").field(c).finish(),
            Self::Custom { lipschitz, .. } => f
                .debug_struct("Custom")
                .field("lipschitz", lipschitz)
                .finish(),
        }
    }
}

impl<T: Real> Potential<T> {
    pub fn validate(&self, sys: &IfsSystem<T>) -> Result<()> {
        let m = sys.alphabet().size();
        match self {
            Self::FirstSymbol(v) if v.len() != m => Err(Error::InvalidOptions(format!(
                "first_symbol potential has {} values for {m} symbols",
                v.len()
            ))),
            Self::FirstSymbol(v) if v.iter().any(|x| !x.is_finite()) => Err(Error::InvalidOptions(
                "first_symbol values must be finite".into(),
            )),
            Self::IndicatorBranch(i) if *i >= m => Err(Error::InvalidOptions(format!(
                "indicator_branch({i}) out of range for {m} branches"
            ))),
            Self::Polynomial(c) if c.is_empty() => Err(Error::InvalidOptions(
                "polynomial needs at least one coefficient".into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn is_word_local(&self) -> bool {
        matches!(self, Self::FirstSymbol(_) | Self::IndicatorBranch(_))
    }

    /// `F(x)`, or the word-local value for a sequence starting with `first`.
    pub fn eval_at(&self, first: u8, x: T) -> T {
        match self {
            Self::FirstSymbol(v) => v[first as usize],
            Self::IndicatorBranch(i) => {
                if first as usize == *i {
                    T::one()
                } else {
                    T::zero()
                }
            }
            Self::Coordinate => x,
            Self::Polynomial(c) => c.iter().rev().fold(T::zero(), |acc, &ck| acc * x + ck),
            Self::Custom { f, .. } => f(x),
        }
    }

    /// Value assigned to a cylinder with first symbol `first`.
    #[inline]
    pub fn eval_on_cylinder(&self, first: u8, cylinder: Interval<T>) -> T {
        self.eval_at(first, cylinder.midpoint())
    }

    /// Lipschitz constant on `[0,1]`; zero for word-local potentials.
    pub fn lipschitz(&self) -> T {
        match self {
            Self::FirstSymbol(_) | Self::IndicatorBranch(_) => T::zero(),
            Self::Coordinate => T::one(),
            Self::Polynomial(c) => c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &ck)| ck.abs() * T::from_usize_lossy(k))
                .fold(T::zero(), |a, b| a + b),
            Self::Custom { lipschitz, .. } => *lipschitz,
        }
    }

    /// `f(i, i, i, ...)`: the value at the fixed point of branch `i`.
    pub fn value_at_fixed_point(&self, branch: usize, x: T) -> T {
        self.eval_at(branch as u8, x)
    }
}

fn diameter_table<'c, T: Real>(cache: &'c OnceLock<Vec<T>>, sys: &IfsSystem<T>) -> &'c [T] {
    cache.get_or_init(|| sys.diameter_bounds(DIAMETER_TABLE_DEPTH))
}

fn diameter_at<T: Real>(table: &[T], k: usize) -> T {
    table[k.min(table.len() - 1)]
}

/// `f = F o Pi` as a [`WordFunction`], evaluated at cylinder midpoints.
pub struct ProjectedPotential<'a, T: Real> {
    sys: &'a IfsSystem<T>,
    potential: &'a Potential<T>,
    diameters: OnceLock<Vec<T>>,
}

impl<'a, T: Real> ProjectedPotential<'a, T> {
    pub fn new(sys: &'a IfsSystem<T>, potential: &'a Potential<T>) -> Self {
        Self {
            sys,
            potential,
            diameters: OnceLock::new(),
        }
    }
}

impl<T: Real> WordFunction<T> for ProjectedPotential<'_, T> {
    fn eval(&self, word: &[u8]) -> T {
        let cyl = self.sys.cylinder_interval(word);
        self.potential.eval_on_cylinder(word[0], cyl)
    }

    fn error_bound(&self, len: usize) -> T {
        if self.potential.is_word_local() {
            return T::zero();
        }
        let d = diameter_at(diameter_table(&self.diameters, self.sys), len);
        self.potential.lipschitz() * d / T::lit(2.0)
    }
}

/// The geometric potential `g(omega) = -log T'_{omega_1}(Pi(sigma omega))`,
/// with `Pi(sigma omega)` replaced by the midpoint of the suffix cylinder.
pub struct GeometricPotential<'a, T: Real> {
    sys: &'a IfsSystem<T>,
    diameters: OnceLock<Vec<T>>,
}

impl<'a, T: Real> GeometricPotential<'a, T> {
    pub fn new(sys: &'a IfsSystem<T>) -> Self {
        Self {
            sys,
            diameters: OnceLock::new(),
        }
    }
}

impl<T: Real> WordFunction<T> for GeometricPotential<'_, T> {
    fn eval(&self, word: &[u8]) -> T {
        self.sys.g_unchecked(word)
    }

    fn error_bound(&self, len: usize) -> T {
        let d = diameter_at(
            diameter_table(&self.diameters, self.sys),
            len.saturating_sub(1),
        );
        self.sys.log_derivative_modulus(d / T::lit(2.0))
    }
}
