//! Error type shared by every module of the engine.

use crate::embedding::LemmaReport;
use crate::topology::AxiomVerdict;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("operands live over different contexts")]
    ContextMismatch,

    #[error("family of soft sets is empty")]
    EmptyFamily,

    #[error("subset of the universe must be nonempty")]
    EmptySubset,

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error(
        "product too large: {universe_size} tuple elements x {param_size} tuple parameters \
         = {cells} cells exceeds the budget of {budget}"
    )]
    BudgetExceeded {
        cells: usize,
        budget: usize,
        universe_size: usize,
        param_size: usize,
    },

    #[error("expected one soft set per factor ({expected}), got {got}")]
    FactorArityMismatch { expected: usize, got: usize },

    #[error("invalid mapping: {0}")]
    InvalidMapping(String),

    #[error("cannot compose: inner mapping's target context differs from outer mapping's source")]
    ChainMismatch,

    #[error("mapping is not bijective")]
    NotBijective,

    #[error("slab payload is not open in its factor space")]
    NotOpenPayload,

    #[error("duplicate factor index {0} in slab specification")]
    DuplicateSlabIndex(usize),

    #[error("base candidate contains a soft set that is not open in the space")]
    NotOpenMember,

    #[error("topology size cap {cap} exceeded; generation stopped at {reached} soft sets")]
    SizeCapExceeded { cap: usize, reached: usize },

    #[error("context too large: {cells} cells exceeds the exhaustive limit of {max}")]
    TooLarge { cells: usize, max: usize },

    #[error("collection is not a soft topology: {0}")]
    AxiomsViolated(AxiomVerdict),

    #[error(
        "embedding lemma violated: hypotheses hold but the diagonal mapping is not an embedding"
    )]
    LemmaViolation(Box<LemmaReport>),
}
