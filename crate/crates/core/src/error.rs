use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(
        "dimension mismatch in {op}: left object has size {left}, right object has size {right}"
    )]
    DimensionMismatch {
        op: &'static str,
        left: usize,
        right: usize,
    },

    #[error("endpoint mismatch in {op}: {left_src}->{left_dst} vs {right_src}->{right_dst}")]
    EndpointMismatch {
        op: &'static str,
        left_src: usize,
        left_dst: usize,
        right_src: usize,
        right_dst: usize,
    },

    #[error("{op} needs an endomorphism, got {src}->{dst}")]
    NotSquare {
        op: &'static str,
        src: usize,
        dst: usize,
    },

    #[error("index {index} out of range for object of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("invalid classical structure: {0}")]
    InvalidClassical(String),

    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),

    #[error("invalid convolution algebra: {0}")]
    InvalidConvolutionAlgebra(String),

    #[error("invalid orthocomplemented algebra: {0}")]
    InvalidOrthoAlgebra(String),

    #[error("invalid operation table: {0}")]
    InvalidTable(String),

    #[error("relation is not single-valued: {0}")]
    NotSingleValued(String),

    #[error("vector is not unbiased for this monoid")]
    NotUnbiased,

    #[error("no consistent unit: {0}")]
    NoConsistentUnit(String),

    #[error("square does not commute: {0}")]
    NonCommutingSquare(String),

    #[error("witness search infeasible: {bits} candidate bits exceeds the cap of {cap}")]
    SearchInfeasible { bits: usize, cap: usize },

    #[error("size {requested} exceeds the bound {bound}{hint}")]
    BoundExceeded {
        requested: usize,
        bound: usize,
        hint: &'static str,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("wiring table: {0}")]
    Wiring(String),
}
