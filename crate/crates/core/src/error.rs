use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("size mismatch: expected {expected} vertices, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },
    #[error("refusing to enumerate graphs on {n} vertices (limit is {limit})")]
    EnumerationLimit { n: usize, limit: usize },
    #[error("refusing to enumerate models over {vars} projected variables (limit is {limit})")]
    ProjectionLimit { vars: usize, limit: usize },
    #[error("invalid variable index {0}")]
    InvalidVariable(i64),
    #[error("duplicate variable role `{0}`")]
    DuplicateRole(String),
    #[error("variable {0} is mapped to more than one role")]
    DuplicateVariable(u32),
    #[error("edge variable x[{i},{j}] (var {var}) is unassigned")]
    UnassignedEdge { i: usize, j: usize, var: u32 },
    #[error("circuit contains a cycle through node {0}")]
    CyclicCircuit(usize),
    #[error("circuit references unknown node {0}")]
    UnknownNode(usize),
    #[error("circuit input variable {0} is unassigned")]
    MissingInput(u32),
    #[error("width plan violated: value range [{lo}, {hi}] needs {needed} bits, plan allows {width}")]
    WidthPlan { lo: i64, hi: i64, needed: usize, width: usize },
    #[error("gate budget of {budget} exceeded")]
    GateBudget { budget: u64 },
    #[error("{0}")]
    InvalidArgument(String),
    #[error("instance generation gave up after {attempts} attempts (n={n}, p={p}, seed={seed})")]
    RetryCap { attempts: usize, n: usize, p: f64, seed: u64 },
    #[error("DIMACS parse error on line {line}: {message}")]
    Dimacs { line: usize, message: String },
    #[error("metadata: {0}")]
    Metadata(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}
