//! Crate-wide error type.

use std::fmt;

/// Errors raised by the arithmetic layers and the relation solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division by zero in a field or ring operation.
    DivisionByZero,
    /// Valuation requested for the zero element or an all-zero vector.
    ValuationOfZero,
    /// Frobenius twisting by a negative amount would need q-th roots.
    NegativeTwist,
    /// gcd of two zero polynomials.
    GcdOfZeros,
    /// Factorization of the zero polynomial.
    FactorZero,
    /// A field description failed validation (p not prime, bad modulus, ...).
    InvalidField(String),
    /// A Drinfeld module failed validation (zero top coefficient, ...).
    InvalidModule(String),
    /// The j-invariant is only defined in rank 2.
    JInvariantRank(usize),
    /// An isomorphism twist by the zero unit.
    ZeroUnit,
    /// Input points violate the theorem hypothesis (zero or duplicate points).
    HypothesisViolated(String),
    /// Coordinate expansion of an element outside the Riemann-Roch space.
    NotInRiemannRochSpace,
    /// Witness recovery called on the all-zero candidate.
    TrivialCandidate,
    /// An internal theorem-derived assertion failed. Must never fire.
    TheoremBoundViolated(String),
    /// The solver and the brute-force oracle disagree. Must never fire.
    SolverOracleDisagreement(String),
    /// Text input failed to parse; `pos` is the byte offset into the input.
    Parse { pos: usize, msg: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ValuationOfZero => write!(f, "valuation of zero"),
            Error::NegativeTwist => write!(f, "negative twist unsupported"),
            Error::GcdOfZeros => write!(f, "gcd of two zero polynomials"),
            Error::FactorZero => write!(f, "factorization of zero"),
            Error::InvalidField(msg) => write!(f, "invalid field: {msg}"),
            Error::InvalidModule(msg) => write!(f, "invalid Drinfeld module: {msg}"),
            Error::JInvariantRank(r) => {
                write!(f, "j-invariant defined for rank 2 only (rank {r})")
            }
            Error::ZeroUnit => write!(f, "isomorphism twist by zero"),
            Error::HypothesisViolated(msg) => {
                write!(f, "theorem hypothesis violated: {msg}")
            }
            Error::NotInRiemannRochSpace => write!(f, "not in Riemann-Roch space"),
            Error::TrivialCandidate => write!(f, "trivial candidate"),
            Error::TheoremBoundViolated(msg) => {
                write!(f, "theorem bound violated: {msg}")
            }
            Error::SolverOracleDisagreement(msg) => {
                write!(f, "solver/oracle disagreement: {msg}")
            }
            Error::Parse { pos, msg } => write!(f, "parse error at position {pos}: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
