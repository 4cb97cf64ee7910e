use crate::error::Result;
use crate::geometry::{CylinderTable, IfsSystem, Potential, ProjectedPotential};
use crate::scalar::Real;
use crate::spectrum::options::SolverOptions;
use crate::symbolic::birkhoff_variation_slack;

/// Everything about a (system, potential, depth) triple that does not depend
/// on `alpha`. Built once per sweep.
#[derive(Debug, Clone)]
pub struct DepthContext<T: Real> {
    pub(crate) table: CylinderTable<T>,
    pub(crate) options: SolverOptions<T>,
    pub(crate) lemma1_gap: T,
    pub(crate) variation_slack: T,
    pub(crate) delta: T,
    pub(crate) rho: T,
    /// Indices of words with `lambda_n >= delta`.
    pub(crate) admissible: Vec<usize>,
}

impl<T: Real> DepthContext<T> {
    pub fn new(
        sys: &IfsSystem<T>,
        potential: &Potential<T>,
        options: &SolverOptions<T>,
    ) -> Result<Self> {
        options.validate()?;
        potential.validate(sys)?;
        let table =
            CylinderTable::build(sys, Some(potential), options.depth, options.enumeration_cap)?;
        let lemma1_gap = table.lemma1_gap();
        let variation_slack =
            birkhoff_variation_slack(&ProjectedPotential::new(sys, potential), options.depth);
        let delta = options.resolved_delta(sys);
        let rho = options.resolved_rho(variation_slack);
        let admissible = (0..table.len())
            .filter(|&i| delta <= T::zero() || table.lambda(i) >= delta)
            .collect();
        Ok(Self {
            table,
            options: options.clone(),
            lemma1_gap,
            variation_slack,
            delta,
            rho,
            admissible,
        })
    }

    pub fn table(&self) -> &CylinderTable<T> {
        &self.table
    }

    pub fn depth(&self) -> usize {
        self.table.depth()
    }

    pub fn lemma1_gap(&self) -> T {
        self.lemma1_gap
    }

    /// Bound on the oscillation of `A_n f` over an `n`-cylinder.
    pub fn variation_slack(&self) -> T {
        self.variation_slack
    }

    pub fn delta(&self) -> T {
        self.delta
    }

    pub fn rho(&self) -> T {
        self.rho
    }

    pub fn admissible_count(&self) -> usize {
        self.admissible.len()
    }

    /// Achievable range of word averages `S_n f / n` over admissible words.
    pub fn achievable_range(&self) -> Option<(T, T)> {
        let n = T::from_usize_lossy(self.depth());
        let phi = self.table.potential_sums();
        self.admissible.iter().fold(None, |acc, &i| {
            let a = phi[i] / n;
            Some(match acc {
                None => (a, a),
                Some((lo, hi)) => (lo.min(a), hi.max(a)),
            })
        })
    }
}
