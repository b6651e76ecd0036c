use std::fmt;

use thiserror::Error;

use crate::instance::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {}", ViolationList(.0))]
    InvalidInstance(Vec<Violation>),

    #[error("assignment has {actual} bits, expected {expected}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("variable index {index} out of range for {num_variables} variables")]
    IndexOutOfRange { index: usize, num_variables: usize },

    #[error("invalid quadratic key ({i}, {j}) for {num_variables} variables")]
    InvalidCoupling { i: usize, j: usize, num_variables: usize },

    #[error("invalid generator config: {0}")]
    InvalidConfig(String),

    #[error("invalid anneal schedule: {0}")]
    InvalidSchedule(String),

    #[error("{num_variables} variables exceeds the exhaustive-search limit of {limit}")]
    Capacity { num_variables: usize, limit: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("parse error: {0}")]
    Toml(#[from] toml::de::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

struct ViolationList<'a>(&'a [Violation]);

impl fmt::Display for ViolationList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, v) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
