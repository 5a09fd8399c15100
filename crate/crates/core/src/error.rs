use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderOverflow { order: usize, cap: usize },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not cyclic")]
    NotCyclic,
    #[error("element {0} is not in the subgroup")]
    NotInSubgroup(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{a} is not coprime to the conductor {n}")]
    NotCoprime { a: i64, n: u64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{m} does not divide {n}")]
    NotDivisible { m: u64, n: u64 },
    #[error("value is not in Z[1/{n}]: {value}")]
    NotLocalized { value: String, n: u64 },
    #[error("invalid G-set: {0}")]
    InvalidGSet(String),
    #[error("owner mismatch: {0}")]
    OwnerMismatch(String),
    #[error("cocycle identity fails at ({0}, {1}, {2})")]
    CocycleIdentity(usize, usize, usize),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("action is not by algebra automorphisms: {0}")]
    NotAutomorphism(String),
    #[error("certificate failure: {0}")]
    Certificate(String),
    #[error("not an Azumaya model: {0}")]
    NotAzumaya(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
