use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("field order {order} exceeds the bound {bound}")]
    FieldTooLarge { order: u128, bound: u64 },
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("dimension mismatch in {op}: {detail}")]
    DimensionMismatch { op: &'static str, detail: String },
    #[error("matrix is singular")]
    Singular,
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("duplicate index {0}")]
    DuplicateIndex(usize),
    #[error("rank deficient: rank {rank}, need {needed}")]
    RankDeficient { rank: usize, needed: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("guard exceeded: {what} = {value} > {limit}")]
    Guard { what: &'static str, value: u128, limit: u128 },
    #[error("linear program is {0}")]
    Lp(&'static str),
    #[error("field of order {q} too small for N = {n}")]
    FieldTooSmall { q: u32, n: usize },
    #[error("invalid N-sum box: {0}")]
    InvalidBox(String),
    #[error("encoder search failed after {retries} retries")]
    EncoderSearch { retries: u32 },
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("scheme check failed: {0}")]
    SchemeCheck(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub(crate) fn guard(what: &'static str, value: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::Guard { what, value: value.into(), limit: limit.into() }
    }

    pub(crate) fn dims(op: &'static str, detail: impl Into<String>) -> Self {
        Error::DimensionMismatch { op, detail: detail.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
