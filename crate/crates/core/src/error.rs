use thiserror::Error;

use crate::rational::Rational;

/// Errors produced by the analysis library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown user label {0:?}")]
    UnknownUser(String),

    #[error("duplicate user label {0:?}")]
    DuplicateUser(String),

    #[error("a source needs at least two users, got {0}")]
    TooFewUsers(usize),

    #[error("enumeration limit: {n} users exceeds the cap of {cap}")]
    EnumerationLimit { n: usize, cap: usize },

    #[error("edge has no members")]
    EmptyEdge,

    #[error("self-loop on user {0:?}")]
    SelfLoop(String),

    #[error("negative weight {0}")]
    NegativeWeight(Rational),

    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(Rational),

    #[error("source does not have edge of sufficient entropy: available {available}, requested {requested}")]
    InsufficientEdge {
        available: Box<Rational>,
        requested: Box<Rational>,
    },

    #[error("source does not have edge {0}")]
    NoSuchEdge(String),

    #[error("edge operations need a hypergraphical source")]
    NotHypergraphical,

    #[error("partition must have at least two blocks")]
    SingleBlockPartition,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partitions are over different ground sets")]
    GroundMismatch,

    #[error("invalid lattice family: lower bound is not contained in upper bound")]
    InvalidFamily,

    #[error("brute-force minimization over {size} free elements exceeds the cap of {cap}")]
    MinimizationLimit { size: usize, cap: usize },

    #[error("rounding unit must be positive, got {0}")]
    InvalidRoundingUnit(Rational),

    #[error("invalid source: {0}")]
    InvalidSource(String),

    #[error("malformed source document: {0}")]
    Document(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("entropy values are too fine-grained for exact enumeration")]
    Overflow,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
