use serde::Serialize;
use thiserror::Error;

use ciperiod_core::Error as CoreError;

/// Failure classes; each maps to one exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    Usage,
    Io,
    Config,
    Parse,
    Charge,
    Dimension,
    Document,
    Input,
    Singular,
    Independence,
    MaurerCartan,
    Invariant,
}

impl ErrorKind {
    /// 2 input error, 3 failed mathematical assumption, 4 invariant violation.
    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default()
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Self::Singular | Self::Independence | Self::MaurerCartan => 3,
            Self::Invariant => 4,
            _ => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Error)]
#[error("{message}")]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: ErrorKind, message: impl Into<String>) -> Self {
        Self {
            kind,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(ErrorKind::Usage, message)
    }

    pub fn config(message: impl Into<String>) -> Self {
        Self::new(ErrorKind::Config, message)
    }

    pub fn exit_code(&self) -> u8 {
        self.kind.exit_code()
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let kind = match &e {
            CoreError::Parse(_) => ErrorKind::Parse,
            CoreError::Charge(_) => ErrorKind::Charge,
            CoreError::Dimension(_) => ErrorKind::Dimension,
            CoreError::Document(_) => ErrorKind::Document,
            CoreError::Singular(_) => ErrorKind::Singular,
            CoreError::Dependent(_) => ErrorKind::Independence,
            CoreError::MaurerCartan(_) => ErrorKind::MaurerCartan,
            CoreError::Internal(_) => ErrorKind::Invariant,
            _ => ErrorKind::Input,
        };
        Self::new(kind, e.to_string())
    }
}
