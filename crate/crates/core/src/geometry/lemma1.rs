use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::geometry::system::IfsSystem;
use crate::geometry::table::{word_stats, CylinderTable};
use crate::scalar::Real;

/// Which words the uniform gap is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingPlan {
    /// Every word of the given length (subject to the enumeration cap).
    Exhaustive,
    /// `samples` uniformly random words from a seeded generator.
    Random { samples: usize, seed: u64 },
}

/// `max_w |lambda_n(w) - (1/n) S_n g(w)|` over the sampled words.
///
/// Exhaustive mode returns the exact word-level supremum.
pub fn lemma1_gap<T: Real>(
    sys: &IfsSystem<T>,
    depth: usize,
    plan: SamplingPlan,
    cap: usize,
) -> Result<T> {
    match plan {
        SamplingPlan::Exhaustive => Ok(CylinderTable::build(sys, None, depth, cap)?.lemma1_gap()),
        SamplingPlan::Random { samples, seed } => {
            let m = sys.alphabet().size();
            let n = T::from_usize_lossy(depth);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut word = vec![0u8; depth];
            let mut gap = T::zero();
            for _ in 0..samples {
                for s in word.iter_mut() {
                    *s = rng.gen_range(0..m) as u8;
                }
                let st = word_stats(sys, None, &word)?;
                gap = gap.max(((-st.log_diameter - st.geometric_sum) / n).abs());
            }
            Ok(gap)
        }
    }
}
