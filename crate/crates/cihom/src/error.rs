use thiserror::Error;

/// Errors surfaced by the engine. Anything tagged "internal consistency"
/// indicates a state that is mathematically impossible for valid inputs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("attempt to invert zero in F_{0}")]
    ZeroInverse(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("exponent overflow: {0}")]
    ExponentOverflow(String),

    #[error("input must be homogeneous: {0}")]
    InhomogeneousInput(String),

    #[error("not a regular sequence at position {index}: witness {witness}")]
    NotRegularSequence { index: usize, witness: String },

    #[error("map is not well defined: {0}")]
    IllFormedMap(String),

    #[error("composition is not zero: {0}")]
    ComposeNotZero(String),

    #[error("ideal is improper (contains a unit)")]
    ImproperIdeal,

    #[error("lift failed: {0}")]
    LiftFailure(String),

    #[error("resolution not extended far enough: need step {need}, have {have}")]
    ResolutionTooShort { need: usize, have: usize },

    #[error("grid window too small: {0}")]
    WindowTooSmall(String),

    #[error("recurrence tail starts outside the grid")]
    TailOutsideGrid,

    #[error("no polynomial fit: max nonvanishing difference order {max_order}{}",
            .failed_cell.map(|c| format!(", validation failed at ({}, {})", c.0, c.1)).unwrap_or_default())]
    NoFit {
        max_order: usize,
        failed_cell: Option<(i64, i64)>,
    },

    #[error("grid contains a non-finite value at ({0}, {1})")]
    NonFiniteGrid(i64, i64),

    #[error("syntax error at line {line}, column {col}: {msg}")]
    SyntaxError { line: usize, col: usize, msg: String },

    #[error("unknown reference: {0}")]
    UnknownReference(String),

    #[error("internal consistency failure: {0}")]
    ConsistencyFailure(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
