use std::path::PathBuf;

use thiserror::Error;

/// Problems with a scenario document, before any physics runs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid scenario:{}", bullet_list(.0))]
    Invalid(Vec<String>),
}

fn bullet_list(items: &[String]) -> String {
    items.iter().map(|e| format!("\n  - {e}")).collect()
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Document {
        path: PathBuf,
        #[source]
        source: DocumentError,
    },
    #[error(transparent)]
    Model(#[from] qclock_core::Error),
    #[error("cannot start worker threads: {0}")]
    Threads(String),
}

impl CliError {
    /// 2 for bad input, 3 for numerical faults, 4 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Threads(_) => 4,
            CliError::Document { .. } => 2,
            CliError::Model(e) if e.is_validation() => 2,
            CliError::Model(_) => 3,
        }
    }
}
