//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: no edges found")]
    EmptyInput,

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph is disconnected ({components} components); rerun with largest-component extraction to proceed")]
    Disconnected { components: usize },

    #[error("unknown vertex id {id}")]
    UnknownVertex { id: u64 },

    #[error("invalid vertex set: {0}")]
    InvalidSet(String),

    #[error("shortest-path count overflowed the 64-bit counter")]
    PathCountOverflow,

    #[error("centrality accumulator overflowed")]
    CountOverflow,

    #[error("size {size} exceeds the enumeration guard ({guard})")]
    GuardExceeded { size: usize, guard: usize },

    #[error("enumeration guard exceeded: {count} items where the cap is {cap}")]
    CapExceeded { count: u64, cap: usize },

    #[error("target {to} is unreachable from source {from}")]
    Unreachable { from: usize, to: usize },

    #[error("degenerate pair space: fewer than two vertices outside the set")]
    DegeneratePairSpace,

    #[error("correlation undefined: input column is constant")]
    ConstantInput,

    #[error("invalid probability table: {0}")]
    InvalidDistribution(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
