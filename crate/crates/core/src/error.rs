use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("zero polynomial has no denominator vector")]
    ZeroPolynomial,
    #[error("inexact division")]
    InexactDivision,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("quiver has an oriented cycle")]
    NotAcyclic,
    #[error("quiver is not affine (radical of the symmetrized Euler form is not one-dimensional)")]
    NotAffine,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("counting budget exceeded: {needed} candidates, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("dimension vector {e:?} is not between 0 and {dims:?}")]
    OutOfRange { e: Vec<i64>, dims: Vec<i64> },
    #[error("point counts for e = {0:?} are not given by an integer polynomial")]
    NonPolynomialCount(Vec<i64>),
    #[error("no exceptional representation of dimension {dims:?} found over F_{p}")]
    ExceptionalSearchFailed { dims: Vec<i64>, p: u64 },
    #[error("no knitted entry with dimension vector {0:?}")]
    NotKnitted(Vec<i64>),
    #[error("quasi-length {len} exceeds the cap {cap}")]
    CapExceeded { len: usize, cap: usize },
    #[error("parameters outside the theorem's domain: {0}")]
    DomainViolation(String),
    #[error("two basis elements share the dimension vector {0:?}")]
    DuplicateDimVector(Vec<i64>),
    #[error("no basis element with dimension vector {0:?} in the table")]
    MissingBasisElement(Vec<i64>),
    #[error("elimination did not terminate within {0} steps")]
    NonTerminating(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ill-formed object: {0}")]
    IllFormedObject(String),
}

impl Error {
    /// True for errors that indicate a broken internal invariant rather than an
    /// unsupported or out-of-range request.
    pub fn is_invariant_breach(&self) -> bool {
        matches!(
            self,
            Error::InexactDivision | Error::DuplicateDimVector(_) | Error::NonPolynomialCount(_)
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;
