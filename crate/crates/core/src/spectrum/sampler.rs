use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{IfsSystem, Potential};
use crate::scalar::{pairwise_sum, Real};
use crate::symbolic::{BlockMeasure, MarkovChain};

/// Where the non-constant blocks come from.
#[derive(Debug, Clone)]
pub enum BlockSource<T> {
    /// A block of length `i` is a path of the chain started from its initial law.
    Markov(MarkovChain<T>),
    /// A block of length `i` concatenates independent draws, truncated to `i`.
    Blocks(BlockMeasure<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig<T> {
    pub parabolic_symbol: u8,
    /// `k_i` for stages `i = 1, 2, ...`.
    pub k_schedule: Vec<usize>,
    /// `eps_i`, paired with `k_schedule`.
    pub eps_schedule: Vec<T>,
    /// Largest sequence length; stages that would overrun it are dropped.
    pub horizon: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Checkpoint<T> {
    pub stage: usize,
    /// `n_q = sum_{i <= q} i (1 + k_i)`.
    pub n: usize,
    pub average_f: T,
    pub average_g: T,
}

fn validate<T: Real>(
    sys: &IfsSystem<T>,
    source: &BlockSource<T>,
    config: &SamplerConfig<T>,
) -> Result<()> {
    let m = sys.alphabet().size();
    let source_m = match source {
        BlockSource::Markov(c) => c.alphabet().size(),
        BlockSource::Blocks(b) => b.alphabet().size(),
    };
    if source_m != m {
        return Err(Error::InvalidSchedule(format!(
            "source alphabet {source_m} differs from system alphabet {m}"
        )));
    }
    let a = config.parabolic_symbol as usize;
    if a >= m {
        return Err(Error::SymbolOutOfRange { symbol: a, m });
    }
    if !sys.branch(a).is_parabolic() {
        return Err(Error::InvalidSchedule(format!(
            "branch {} is not parabolic",
            a + 1
        )));
    }
    let (k, eps) = (&config.k_schedule, &config.eps_schedule);
    if k.is_empty() || k.len() != eps.len() {
        return Err(Error::InvalidSchedule(format!(
            "k and eps schedules must be nonempty and equal length ({} vs {})",
            k.len(),
            eps.len()
        )));
    }
    if eps.iter().any(|&e| !(e >= T::zero())) {
        return Err(Error::InvalidSchedule(
            "eps values must be nonnegative".into(),
        ));
    }
    let tol = T::tol(1e-12);
    for i in 1..k.len() {
        if k[i] < k[i - 1] {
            return Err(Error::InvalidSchedule(format!(
                "k decreases at stage {}",
                i + 1
            )));
        }
        if eps[i] > eps[i - 1] + tol {
            return Err(Error::InvalidSchedule(format!(
                "eps increases at stage {}",
                i + 1
            )));
        }
        let prev = T::from_usize_lossy(k[i - 1]) * eps[i - 1];
        let cur = T::from_usize_lossy(k[i]) * eps[i];
        if cur > prev + tol * T::one().max(prev) {
            return Err(Error::InvalidSchedule(format!(
                "k*eps increases at stage {}",
                i + 1
            )));
        }
    }
    Ok(())
}

fn draw<T: Real, R: Rng>(rng: &mut R, p: &[T]) -> usize {
    let u = T::lit(rng.gen::<f64>());
    let mut acc = T::zero();
    for (i, &w) in p.iter().enumerate() {
        acc += w;
        if u < acc {
            return i;
        }
    }
    p.iter().rposition(|&w| w > T::zero()).unwrap_or(0)
}

fn push_block<T: Real, R: Rng>(
    rng: &mut R,
    source: &BlockSource<T>,
    len: usize,
    out: &mut Vec<u8>,
) {
    match source {
        BlockSource::Markov(chain) => {
            let mut s = draw(rng, chain.initial());
            out.push(s as u8);
            for _ in 1..len {
                s = draw(rng, &chain.transition()[s]);
                out.push(s as u8);
            }
        }
        BlockSource::Blocks(measure) => {
            let words: Vec<_> = measure.iter().collect();
            let weights: Vec<T> = words.iter().map(|(_, p)| *p).collect();
            let mut remaining = len;
            while remaining > 0 {
                let w = words[draw(rng, &weights)].0.symbols();
                let take = remaining.min(w.len());
                out.extend_from_slice(&w[..take]);
                remaining -= take;
            }
        }
    }
}

/// Builds the alternating sequence (a `source` block of length `i`, then `i k_i`
/// copies of the parabolic symbol) and reports `A_n f`, `A_n g` at the end of
/// every completed stage.
pub fn alternating_sampler<T: Real>(
    sys: &IfsSystem<T>,
    potential: &Potential<T>,
    source: &BlockSource<T>,
    config: &SamplerConfig<T>,
) -> Result<Vec<Checkpoint<T>>> {
    validate(sys, source, config)?;
    potential.validate(sys)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut sequence = Vec::new();
    let mut ends = Vec::new();
    for (idx, &k) in config.k_schedule.iter().enumerate() {
        let i = idx + 1;
        let stage_len = i * (1 + k);
        if sequence.len() + stage_len > config.horizon {
            break;
        }
        push_block(&mut rng, source, i, &mut sequence);
        sequence.extend(std::iter::repeat_n(config.parabolic_symbol, i * k));
        ends.push((i, sequence.len()));
    }
    if ends.is_empty() {
        return Ok(Vec::new());
    }

    // Project every shifted sequence from the tail, starting at the midpoint.
    let total = sequence.len();
    let mut f = vec![T::zero(); total];
    let mut g = vec![T::zero(); total];
    let mut x = T::lit(0.5);
    for k in (0..total).rev() {
        let symbol = sequence[k];
        let branch = sys.branch(symbol as usize);
        g[k] = -branch.derivative(x).ln();
        x = branch.apply(x);
        f[k] = potential.eval_at(symbol, x);
    }

    Ok(ends
        .into_iter()
        .map(|(stage, n)| {
            let nt = T::from_usize_lossy(n);
            Checkpoint {
                stage,
                n,
                average_f: pairwise_sum(&f[..n]) / nt,
                average_g: pairwise_sum(&g[..n]) / nt,
            }
        })
        .collect())
}
