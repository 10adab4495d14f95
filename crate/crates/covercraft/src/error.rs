use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("{what}: {value} exceeds cap {cap}")]
    CapExceeded { what: &'static str, value: u128, cap: u128 },
    #[error("division by zero")]
    DivByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("{0} is not the order of a subfield")]
    NotSubfieldOrder(u64),
    #[error("GF({dst}) is not an extension of GF({src})")]
    NotExtension { src: u64, dst: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("value {value} is not an element of GF({q})")]
    OutOfRange { value: u64, q: u64 },
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("a line needs two distinct points")]
    SamePoint,
    #[error("point set contains a repeated point")]
    DuplicatePoint,
    #[error("empty point set")]
    EmptySet,
    #[error("parity-check column {0} is zero")]
    ZeroColumn(usize),
    #[error("parity-check matrix must have at least one row and one column")]
    EmptyCode,
    #[error("columns of the parity-check matrix do not span the syndrome space")]
    RankDeficient,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition does not satisfy the required (R,l) property")]
    PartitionInvalid,
    #[error("point set is not a {t}-fold strong blocking set")]
    NotStrongBlocking { t: usize },
    #[error("search exhausted without a result: {0}")]
    SearchExhausted(String),
    #[error("no suitable c exists for p = {0}")]
    NoSuitableC(u64),
    #[error("no suitable k for q = {0}")]
    NoWitnessK(u64),
    #[error("no combination of {u} points found")]
    NoWitness { u: usize },
    #[error("{variant} constraint violated: {which}")]
    ConstraintViolated { variant: String, which: String },
    #[error("auxiliary matrix missing or malformed: {0}")]
    AuxMissing(String),
    #[error("indicator universe of size {universe} is smaller than {needed} subsets")]
    UniverseTooSmall { universe: usize, needed: usize },
    #[error("covering every indicator needs {universe} columns, code has {n}")]
    CsiInfeasible { universe: usize, n: usize },
    #[error("operation requires {0}")]
    WrongField(String),
    #[error("no table entry for {0}")]
    MissingTableEntry(String),
    #[error("outside formula domain: {0}")]
    DomainViolation(String),
    #[error("formula value is not an integer: {0}")]
    NonIntegralResult(String),
    #[error("budget exhausted; minimum lies in [{lower}, {}]", upper.map(|u| u.to_string()).unwrap_or_else(|| "?".into()))]
    BudgetExceeded { lower: usize, upper: Option<usize> },
    #[error("no builder for family {0}")]
    NotConstructible(String),
    #[error("parse error: {0}")]
    Parse(String),
}
