use thiserror::Error;

/// Errors produced by the symbolic kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: expected {}, found {found}", expected.join(" | "))]
    Parse {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("ladder operators may only be raised to nonnegative integer powers")]
    NonIntegerLadderPower,

    #[error("unsupported scalar power: {0}")]
    UnsupportedScalarPower(String),

    #[error("exp() argument must be a sum of I*rational*symbol terms, got {0}")]
    UnsupportedExp(String),

    #[error("sum/prod bounds must be integer literals with lo <= hi (got {lo}..{hi})")]
    UnsupportedBounds { lo: String, hi: String },

    #[error("divisor must be a nonzero scalar")]
    InvalidDivisor,

    #[error("cannot conjugate complex symbol `{0}`")]
    ComplexSymbolUnsupported(String),

    #[error("observable is zero")]
    EmptyObservable,

    #[error("dissipator operators must be nonzero")]
    InvalidDissipator,

    #[error("no substitution provided for `{0}`")]
    MissingSubstitution(String),

    #[error("invalid parallel configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid record: {0}")]
    Record(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
