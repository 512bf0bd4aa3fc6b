use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{name}` at byte {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("zero denominator in coefficient at byte {position}")]
    ZeroDenominator { position: usize },
    #[error("invalid variable set: {0}")]
    InvalidVariables(String),
    #[error("variable index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("not a singular germ: {0}")]
    NotSingular(String),
    #[error("ideal is not zero-dimensional at the origin (no stabilization up to degree {cap})")]
    NonIsolated { cap: u32 },
    #[error("empty generator list")]
    EmptyInput,
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("subspace is not contained in the outer subspace")]
    NotContained,
    #[error("prime {prime} divides a denominator")]
    BadPrime { prime: u64 },
    #[error("invalid prime list: {0}")]
    InvalidPrimes(String),
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
    #[error("Briancon-Skoda violation: f^{arity} is not zero in the Milnor algebra")]
    BsViolation { arity: usize },
    #[error("germ is not quasi-homogeneous in the given coordinates")]
    NotQuasiHomogeneous,
    #[error("dimension mismatch for {what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        got: usize,
    },
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("profile mismatch: {0}")]
    ProfileMismatch(String),
    #[error("line {line}: {message}")]
    Catalog { line: usize, message: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
