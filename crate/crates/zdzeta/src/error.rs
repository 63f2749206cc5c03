use thiserror::Error;

/// Errors surfaced by the engine. Domain errors (bad mathematical input)
/// and usage errors (unparseable text) are kept in one enum so callers can
/// match on the exact failure.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension {0} is outside the supported range 1..=3")]
    UnsupportedDimension(usize),
    #[error("index must be a positive integer (got {0})")]
    InvalidIndex(i64),
    #[error("generators span a rank-{rank} subgroup of Z^{d}: not of finite index")]
    NotFiniteIndex { d: usize, rank: usize },
    #[error("the zero polynomial cannot be factored")]
    ZeroPolynomial,
    #[error("the zero function has no valuation")]
    ZeroArgument,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("expected two distinct primes (got {0} twice)")]
    EqualPrimes(u64),
    #[error("element has valuation {0} at the place, so it is not a unit there")]
    NotAUnit(i64),
    #[error("the congruence system has no solution")]
    NoSolution,
    #[error("characteristic mismatch: {0} vs {1}")]
    CharMismatch(u64, u64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("action is not mixing: u^{witness:?} = 1")]
    NotMixing { witness: Vec<i64> },
    #[error("fixed-point set is infinite: u^{generator:?} maps to 1")]
    InfiniteFixedSet { generator: Vec<i64> },
    #[error("curve component carries no defining polynomial")]
    NoDefiningPoly,
    #[error("inverted polynomial {0} has no expression in the coordinate images")]
    UnliftableInversion(String),
    #[error("group order {0} exceeds the matrix budget {1}")]
    OutOfBudget(u64, u64),
    #[error("zeta coefficient c_{0} is not an integer: orbit data is inconsistent")]
    NonIntegerCoefficient(usize),
    #[error("spec has a principal component: the prime-index scan requires entropy rank one")]
    NotEntropyRankOne,
    #[error("curve image {0} is not the normalized coordinate t")]
    UnnormalizedImage(String),
    #[error("operation requires a suspended spec")]
    NotSuspended,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("spec file: {0}")]
    SpecFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to: 1 for usage errors,
    /// 3 for internal assertions, 2 for everything in the domain.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::SpecFile(_) => 1,
            Error::NonIntegerCoefficient(_) => 3,
            _ => 2,
        }
    }
}
