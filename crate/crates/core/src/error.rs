//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a usable prime (need a prime below 2^31)")]
    BadPrime(u64),
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("matrix is not invertible")]
    NotInvertible,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown module name `{0}`")]
    UnknownModule(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("{0}")]
    Scalar(#[from] LinAlgError),
    #[error("bad relation: {0}")]
    BadRelation(String),
    #[error("bad module data: {0}")]
    BadModule(String),
}

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("relation ideal is not admissible: {0}")]
    NotAdmissible(String),
    #[error("path basis exceeds cap of {0}; relation ideal is not admissible within bound")]
    BasisCapExceeded(usize),
    #[error("{0}")]
    LinAlg(#[from] LinAlgError),
}

#[derive(Debug, Error)]
pub enum ComputeError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("{0}")]
    LinAlg(#[from] LinAlgError),
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("not representation-finite within bound ({0})")]
    NotRepFinite(String),
    #[error("iteration cap exceeded in {0}")]
    CapExceeded(&'static str),
    #[error("chain order violated: {0}")]
    ChainOrderViolated(String),
    #[error("no factorization: {0}")]
    NoFactorization(String),
    #[error("not silting: {0}")]
    NotSilting(String),
    #[error("member of a localizing set is not exceptional: {0}")]
    NotExceptional(String),
    #[error("input is not basic: {0}")]
    NotBasic(String),
    #[error("morphism shapes are not composable: {0}")]
    NotComposable(String),
    #[error("projective/injective dimension computation exceeded its cap on {0}")]
    DimensionCapExceeded(String),
    #[error("{0}")]
    Unsupported(String),
}
