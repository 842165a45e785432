//! File formats and command implementations behind the `ncres` binary.

pub mod commands;
pub mod formats;
pub mod spec;

use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, unreadable files, parse errors.
    #[error("{0}")]
    Input(String),
    /// The computation itself failed.
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            // treated like a failed verification: the output cannot be trusted
            CliError::Internal(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Internal(_) => "internal",
        }
    }

    /// One-line JSON for stderr.
    pub fn report(&self) -> String {
        #[derive(Serialize)]
        struct Report<'a> {
            status: &'static str,
            kind: &'static str,
            message: &'a str,
        }
        serde_json::to_string(&Report {
            status: "error",
            kind: self.kind(),
            message: &self.to_string(),
        })
        .expect("plain strings serialize")
    }
}

impl From<ncres_core::AlgebraError> for CliError {
    fn from(e: ncres_core::AlgebraError) -> Self {
        CliError::Internal(e.to_string())
    }
}
