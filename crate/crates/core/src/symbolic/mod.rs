//! Words, block measures, Birkhoff sums and entropy accounting on the full shift.

pub mod abramov;
pub mod function;
pub mod markov;
pub mod measure;
pub mod word;

pub use abramov::{abramov_stats, AbramovStats};
pub use function::{
    birkhoff_error_bound, birkhoff_sum, birkhoff_variation_slack, variation_bound,
    ConstantFunction, FirstSymbolFunction, FnWordFunction, WordFunction,
};
pub use markov::{block_marginal, MarkovChain};
pub use measure::{shannon_entropy, vector_entropy, BlockMeasure, DEFAULT_ENUMERATION_CAP};
pub use word::{Alphabet, Word};
