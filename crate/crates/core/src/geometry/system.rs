use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::branch::{
    solve_increasing, Affine, Branch, BranchMap, MannevillePomeauInverse, ParabolicLeft,
    ParabolicRight,
};
use crate::geometry::interval::Interval;
use crate::scalar::Real;
use crate::symbolic::Alphabet;

/// Depths for which diameter bounds are tabulated; deeper words reuse the last.
pub(crate) const DIAMETER_TABLE_DEPTH: usize = 64;

/// An iterated function system of increasing branches on `[0,1]` with
/// pairwise disjoint open images.
#[derive(Debug, Clone)]
pub struct IfsSystem<T: Real> {
    name: String,
    parameters: Vec<(String, f64)>,
    alphabet: Alphabet,
    branches: Vec<Branch<T>>,
}

impl<T: Real> IfsSystem<T> {
    pub fn new(
        name: impl Into<String>,
        parameters: Vec<(String, f64)>,
        branches: Vec<Branch<T>>,
    ) -> Result<Self> {
        let alphabet = Alphabet::new(branches.len()).map_err(|_| {
            Error::InvalidSystem(format!("need 2..=256 branches, got {}", branches.len()))
        })?;
        let slack = T::tol(1e-12);
        for i in 0..branches.len() {
            for j in i + 1..branches.len() {
                if !branches[i]
                    .image()
                    .interiors_disjoint(&branches[j].image(), slack)
                {
                    return Err(Error::InvalidSystem(format!(
                        "open images of branches {} and {} overlap",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let sys = Self {
            name: name.into(),
            parameters,
            alphabet,
            branches,
        };
        let d = sys.diameter_bounds(8);
        if !(d[8] < d[1]) {
            return Err(Error::InvalidSystem(
                "cylinder diameters do not shrink on sampled words".into(),
            ));
        }
        Ok(sys)
    }

    /// Affine branches with the given ratios, laid out left to right from 0.
    pub fn linear(ratios: &[T]) -> Result<Self> {
        let mut offset = T::zero();
        let mut branches = Vec::with_capacity(ratios.len());
        for &r in ratios {
            if !(r > T::zero() && r < T::one()) {
                return Err(Error::InvalidSystem(format!("ratio {r} is not in (0,1)")));
            }
            let map: Arc<dyn BranchMap<T>> = Arc::new(Affine { ratio: r, offset });
            branches.push(Branch::new(map, false, None)?);
            offset += r;
        }
        if offset > T::one() + T::tol(1e-12) {
            return Err(Error::InvalidSystem(format!("ratios sum to {offset} > 1")));
        }
        let parameters = ratios
            .iter()
            .enumerate()
            .map(|(i, r)| (format!("ratio{}", i + 1), r.as_f64()))
            .collect();
        Self::new("linear", parameters, branches)
    }

    /// Inverse branches of `x/(1-x)` on `[0,1/2]` and `(2x-1)/x` on `(1/2,1]`,
    /// with parabolic fixed points at 0 and 1.
    pub fn example2() -> Result<Self> {
        let left: Arc<dyn BranchMap<T>> = Arc::new(ParabolicLeft);
        let right: Arc<dyn BranchMap<T>> = Arc::new(ParabolicRight);
        Self::new(
            "example2",
            Vec::new(),
            vec![
                Branch::new(left, true, Some(T::zero()))?,
                Branch::new(right, true, Some(T::one()))?,
            ],
        )
    }

    /// Inverse branches of `x + x^(1+beta) mod 1`; parabolic at 0.
    pub fn manneville_pomeau(beta: T) -> Result<Self> {
        if !(beta > T::zero()) || !beta.is_finite() {
            return Err(Error::InvalidSystem(format!(
                "beta = {beta} must be positive"
            )));
        }
        let one = T::one();
        let exponent = one + beta;
        // Boundary between the two branch domains: c + c^(1+beta) = 1.
        let c = solve_increasing(
            |x: T| x + x.powf(exponent) - one,
            |x: T| one + exponent * x.powf(beta),
            T::zero(),
            one,
        );
        let left = MannevillePomeauInverse {
            beta,
            shift: T::zero(),
            domain: Interval {
                lo: T::zero(),
                hi: c,
            },
        };
        let right = MannevillePomeauInverse {
            beta,
            shift: one,
            domain: Interval { lo: c, hi: one },
        };
        Self::new(
            "manneville_pomeau",
            vec![("beta".into(), beta.as_f64())],
            vec![
                Branch::new(Arc::new(left), true, Some(T::zero()))?,
                Branch::new(Arc::new(right), false, Some(one))?,
            ],
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn parameters(&self) -> &[(String, f64)] {
        &self.parameters
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn branches(&self) -> &[Branch<T>] {
        &self.branches
    }

    pub fn branch(&self, i: usize) -> &Branch<T> {
        &self.branches[i]
    }

    pub fn has_parabolic_branch(&self) -> bool {
        self.branches.iter().any(Branch::is_parabolic)
    }

    /// `T_{w1} o ... o T_{wn} ([0,1])`; the empty word gives `[0,1]`.
    pub fn cylinder_interval(&self, word: &[u8]) -> Interval<T> {
        word.iter().rev().fold(Interval::unit(), |acc, &s| {
            self.branches[s as usize].apply_interval(acc)
        })
    }

    /// Cylinder interval and its diameter `D_n(w)`, the latter accumulated
    /// separately so it keeps full relative precision at depth.
    pub fn cylinder(&self, word: &[u8]) -> (Interval<T>, T) {
        word.iter()
            .rev()
            .fold((Interval::unit(), T::one()), |(acc, len), &s| {
                self.branches[s as usize].apply_cylinder(acc, len)
            })
    }

    /// `-(1/n) log D_n(w)`.
    pub fn lambda_n(&self, word: &[u8]) -> Result<T> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        let d = self.cylinder(word).1;
        if !(d > T::zero()) {
            return Err(Error::DegenerateCylinder {
                word: word.to_vec(),
            });
        }
        Ok(-d.ln() / T::from_usize_lossy(word.len()))
    }

    /// `g(w) = -log T'_{w1}(x)` with `x` the midpoint of the cylinder of `w_2...w_n`.
    pub fn g_eval(&self, word: &[u8]) -> Result<T> {
        if word.len() < 2 {
            return Err(Error::InsufficientDepth {
                len: word.len(),
                needed: 2,
            });
        }
        Ok(self.g_unchecked(word))
    }

    /// As [`IfsSystem::g_eval`], using the midpoint of `[0,1]` for one-symbol words.
    pub(crate) fn g_unchecked(&self, word: &[u8]) -> T {
        let x = self.cylinder_interval(&word[1..]).midpoint();
        -self.branches[word[0] as usize].derivative(x).ln()
    }

    /// Midpoint of the cylinder and its half-diameter: every `Pi(omega)` with
    /// `omega in [w]` lies within `error` of `point`.
    pub fn project(&self, word: &[u8]) -> (T, T) {
        let (i, d) = self.cylinder(word);
        (i.midpoint(), d / T::lit(2.0))
    }

    /// Upper bounds `d_0 = 1, d_k >= max_{|w| = k} D_k(w)` for `k <= depth`,
    /// from the recursion `d_k = max_i modulus_i(d_{k-1})` with sampled moduli.
    pub fn diameter_bounds(&self, depth: usize) -> Vec<T> {
        let mut d = Vec::with_capacity(depth + 1);
        d.push(T::one());
        for k in 1..=depth {
            let prev = d[k - 1];
            let next = self
                .branches
                .iter()
                .map(|b| b.map_modulus(prev))
                .fold(T::zero(), T::max);
            d.push(next.min(prev));
        }
        d
    }

    /// Sampled bound on `|log T'_i(x) - log T'_i(y)|` for `|x - y| <= h`, over all branches.
    pub fn log_derivative_modulus(&self, h: T) -> T {
        self.branches
            .iter()
            .map(|b| b.log_derivative_modulus(h))
            .fold(T::zero(), T::max)
    }
}
