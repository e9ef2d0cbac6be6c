//! Crate-wide error types.

use thiserror::Error;

/// Failure to parse exact data (rationals, intervals, schemas).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{msg}")]
pub struct ParseError {
    msg: String,
}

impl ParseError {
    pub fn new(msg: impl Into<String>) -> Self {
        ParseError { msg: msg.into() }
    }
}

/// Errors raised by the polytope kernel.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("operation requires a feasible polytope")]
    Infeasible,
    #[error("operation requires a bounded polytope")]
    Unbounded,
    #[error("operation requires a full-dimensional polytope (dim {found} < ambient {ambient})")]
    NotFullDimensional { found: i64, ambient: usize },
    #[error("ambient dimension {0} exceeds the supported limit of {1}")]
    DimensionTooLarge(usize, usize),
    #[error("{0}")]
    Invalid(String),
}

/// Errors raised by the LCT layer (resolution data, segment problems).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LctError {
    #[error("invalid resolution datum: {0}")]
    InvalidDatum(String),
    #[error("base point lies outside the LCT-polytope: {0}")]
    BaseOutside(String),
    #[error("lc hypothesis fails at tau = 0: {0}")]
    LcHypothesis(String),
    #[error("no row bounds the test divisor; lct is identically +infinity")]
    EmptyEffectiveRows,
    #[error("adjunction coefficient exceeds 1 on the interval: {0}")]
    NotBoundary(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Errors raised by the coefficient-set algebra.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SetError {
    #[error("operation requires a DCC set; found a violating family")]
    NotDcc,
    #[error("empty set has no extremal element")]
    Empty,
    #[error("enumeration requires strictly positive members: {0}")]
    NonPositiveMember(String),
    #[error("the constant function 1 must belong to the family")]
    MissingOne,
    #[error("invalid function family: {0}")]
    InvalidFamily(String),
    #[error("cut point must lie in (a, b]: {0}")]
    BadCut(String),
    #[error("sum of second components vanishes; relation does not determine t")]
    DegenerateRelation,
}

/// Errors raised by the parametric-chain laboratory.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("chain instantiation at m = {m} is infeasible (data error)")]
    InfeasibleInstance { m: u64 },
    #[error("chain instantiation at m = {m} is unbounded (data error)")]
    UnboundedInstance { m: u64 },
    #[error("base point lies outside every queried instance")]
    BaseOutsideChain,
    #[error("query range is empty")]
    EmptyRange,
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}
