use thiserror::Error;

/// Errors raised by the symbolic, geometric and estimator layers.
///
/// Scalar payloads are carried as `f64` regardless of the working precision.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alphabet must have between 2 and 256 symbols, got {m}")]
    InvalidAlphabet { m: usize },

    #[error("symbol {symbol} out of range for alphabet of size {m}")]
    SymbolOutOfRange { symbol: usize, m: usize },

    #[error("words must be nonempty")]
    EmptyWord,

    #[error("invalid block measure: {0}")]
    InvalidMeasure(String),

    #[error("enumerating {requested} words exceeds the cap of {cap}")]
    EnumerationLimit { requested: u128, cap: usize },

    #[error("invalid Markov chain: {0}")]
    InvalidChain(String),

    #[error("initial vector is not stationary (residual {residual:e})")]
    NotStationary { residual: f64 },

    #[error("cylinder of word {word:?} has collapsed to zero diameter")]
    DegenerateCylinder { word: Vec<u8> },

    #[error("word of length {len} is too short; need at least {needed} symbols")]
    InsufficientDepth { len: usize, needed: usize },

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("no cylinders pass the filter")]
    NoCylinders,

    #[error(
        "cylinders at depth {depth} are not yet contracting (max diameter {max_diameter}); \
         increase the depth"
    )]
    NotContracting { depth: usize, max_diameter: f64 },

    #[error(
        "alpha = {alpha} is unreachable at depth {depth} within window {rho}; \
         achievable word averages span [{lo}, {hi}]"
    )]
    AlphaUnreachable {
        alpha: f64,
        depth: usize,
        rho: f64,
        lo: f64,
        hi: f64,
    },

    #[error("alpha = {alpha} is infeasible at depth {depth}; achievable range is [{lo}, {hi}]")]
    Infeasible {
        alpha: f64,
        depth: usize,
        lo: f64,
        hi: f64,
    },

    #[error("window rho = {rho} does not exceed the variation slack {slack} at depth {depth}")]
    WindowTooNarrow { rho: f64, slack: f64, depth: usize },

    #[error("solver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("oracle instance too large: {0}")]
    OracleTooLarge(String),

    #[error("invalid options: {0}")]
    InvalidOptions(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
