// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("operation undefined at the apex: {0}")]
    ApexInput(&'static str),
    #[error("zero-length path has no initial direction")]
    ZeroLengthPath,
    #[error("points are not on a common ray")]
    NotOnCommonRay,
    #[error("tangent vectors have different base points")]
    BaseMismatch,
    #[error("tangent vector lies outside the exponential validity radius ({0})")]
    OutOfRange(String),
    #[error("vector must have unit norm, got {0}")]
    NotUnit(f64),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("hull iteration did not reach a fixpoint within {0} rounds")]
    HullDiverged(usize),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
