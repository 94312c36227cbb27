use std::io;
use std::path::PathBuf;

use mmp_core::MmpError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid benchmark spec: {0}")]
    Spec(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("parse error in `{field}`{}: {message}", location(*line, *column))]
    Parse {
        field: String,
        line: Option<usize>,
        column: Option<usize>,
        message: String,
    },

    #[error("unsupported schema `{found}`, expected `{expected}`")]
    SchemaVersion { found: String, expected: &'static str },

    #[error(transparent)]
    Solver(#[from] MmpError),
}

fn location(line: Option<usize>, column: Option<usize>) -> String {
    match (line, column) {
        (Some(l), Some(c)) => format!(" at line {l}, column {c}"),
        (Some(l), None) => format!(" at line {l}"),
        _ => String::new(),
    }
}

impl BenchError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Parse {
            field: field.into(),
            line: None,
            column: None,
            message: message.into(),
        }
    }
}

pub type Result<T, E = BenchError> = std::result::Result<T, E>;
