use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("modulus {0} exceeds the supported range")]
    ModulusTooLarge(u64),
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("quadratic form is degenerate")]
    DegenerateForm,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no null vector satisfies the requested constraints")]
    NoNullVector,
    #[error("requested {requested} mutually orthogonal null vectors, at most {max} are possible")]
    InfeasibleCount { requested: usize, max: usize },
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },
    #[error("the unit sphere is empty at recursion depth {0}")]
    EmptyUnitSphere(usize),
    #[error("point set does not lie on a sphere of nonzero radius")]
    NotOnSphere,
    #[error("function takes a negative value")]
    NegativeValue,
    #[error("exponent must be at least 2, got {0}")]
    BadExponent(u32),
    #[error("q = {q} must be {expected} mod 4")]
    WrongResidueClass { q: u32, expected: u32 },
    #[error("Gram system G is singular")]
    SingularGram,
    #[error("epsilon must lie in (0, 1/d), got {0}")]
    BadEpsilon(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
