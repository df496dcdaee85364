use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("root index must be at least 1")]
    ZeroRootIndex,
    #[error("even root (k={k}) of negative number {n}")]
    EvenRootOfNegative { n: String, k: u32 },
    #[error("squarefree table limit {0} is below 2")]
    TableTooSmall(u64),
    #[error("squarefree table limit {0} does not fit in memory")]
    TableTooLarge(u64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CfError {
    #[error("g = {0} must be at least 2")]
    RadicandTooSmall(String),
    #[error("g = {g} is a perfect square ({root}^2); its fourth root is not irrational")]
    PerfectSquare { g: String, root: String },
    #[error("precision must be at least one digit, got {0}")]
    PrecisionTooLow(u32),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThueError {
    #[error("g = {0} must be at least 2")]
    InvalidCoefficient(String),
    #[error("height bound must be at least 1")]
    InvalidHeight,
    #[error("solver invariant violated for g = {g}: {detail}")]
    Invariant { g: String, detail: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("Bennett bound violated for g = {g}: positive solutions {pairs:?}")]
pub struct BennettViolation {
    pub g: String,
    pub pairs: Vec<(String, String)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PibError {
    #[error("m = {0} is not allowed (m must differ from 0 and ±1)")]
    UnitParameter(String),
    #[error("|m| = {m} is beyond the squarefree table limit {limit}")]
    OutOfTable { m: String, limit: u64 },
    #[error("m = {0} is not admissible")]
    Inadmissible(String),
    #[error("expected {expected} m, got {m}")]
    WrongSign { m: String, expected: &'static str },
    #[error("element ({x}, {y}, {z}) is not primitive in Q(m^(1/4)), m = {m}")]
    Degenerate { m: String, x: String, y: String, z: String },
    #[error("discriminant quotient for ({x}, {y}, {z}), m = {m} is not a perfect square: {quotient}")]
    NonSquareIndex { m: String, x: String, y: String, z: String, quotient: String },
    #[error("generator ({x}, {y}, {z}) of m = {m} failed verification: {detail}")]
    VerificationFailed { m: String, x: String, y: String, z: String, detail: String },
    #[error(transparent)]
    Thue(#[from] ThueError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("audit box {0} exceeds the limit of 100")]
    BoxTooLarge(u64),
    #[error("g = {0} is a perfect square")]
    SquareCoefficient(String),
    #[error(transparent)]
    Thue(#[from] ThueError),
    #[error(transparent)]
    Pib(#[from] PibError),
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("checkpoint {path} belongs to a different configuration (hash {found}, expected {expected})")]
    ConfigMismatch { path: PathBuf, found: String, expected: String },
    #[error("checkpoint {path} is unreadable: {detail}")]
    BadCheckpoint { path: PathBuf, detail: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("worker failed: {0}")]
    Worker(String),
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {detail}")]
    Malformed { line: usize, detail: String },
}
