//! File formats, generators and batch runs around `triflow-core`.

pub mod analyze;
pub mod cli;
pub mod corpus;
pub mod dot;
pub mod gen;
pub mod json;

use std::fmt;

/// Why a command failed; each kind has its own exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// Unreadable or invalid input.
    Input(String),
    /// A verification or cross-check failed.
    Check(String),
    /// An oracle refused the input as too large.
    Guardrail(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Check(_) => 2,
            Failure::Guardrail(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Check(m) => write!(f, "check failed: {m}"),
            Failure::Guardrail(m) => write!(f, "guardrail: {m}"),
        }
    }
}

impl std::error::Error for Failure {}
