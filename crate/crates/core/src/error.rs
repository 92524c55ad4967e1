use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} has {size} elements, exceeding the cap of {cap} (raise it with --cap)")]
    CapExceeded { what: String, size: String, cap: usize },

    #[error("budget exceeded: {needed} candidates > budget {budget}")]
    BudgetExceeded { needed: String, budget: u64 },

    #[error("unsupported group specification: {0}")]
    UnsupportedSpec(String),

    #[error("order self-check failed for {spec}: expected {expected}, computed {computed}")]
    OrderCheck {
        spec: String,
        expected: String,
        computed: String,
    },

    #[error("group is not 2-generated: no generating pairs")]
    NotTwoGenerated,

    #[error("pair does not generate the group")]
    NonGenerating,

    #[error("incompatible structures: {0}")]
    Incompatible(String),

    #[error("empty generator list")]
    EmptyGenerators,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
