use std::fmt;

use rsp_core::RspError;

/// Failure of one CLI invocation, carrying its exit code class.
#[derive(Debug)]
pub enum CliError {
    /// Bad input, arguments or graph: exit 2.
    Validation { reason: String, message: String },
    /// Singular system or inconsistent flows: exit 3.
    Numerical { reason: String, message: String },
    /// Oracle deviation beyond tolerance: exit 1.
    OracleFailure { message: String },
}

impl CliError {
    pub fn validation(reason: &str, message: impl Into<String>) -> Self {
        CliError::Validation {
            reason: reason.to_string(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::OracleFailure { .. } => 1,
            CliError::Validation { .. } => 2,
            CliError::Numerical { .. } => 3,
        }
    }

    pub fn reason(&self) -> &str {
        match self {
            CliError::Validation { reason, .. } | CliError::Numerical { reason, .. } => reason,
            CliError::OracleFailure { .. } => "oracle-deviation",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let message = match self {
            CliError::Validation { message, .. }
            | CliError::Numerical { message, .. }
            | CliError::OracleFailure { message } => message,
        };
        write!(f, "error: reason={}: {}", self.reason(), message)
    }
}

impl From<RspError> for CliError {
    fn from(e: RspError) -> Self {
        let reason = e.reason().to_string();
        let message = e.to_string();
        if e.is_numerical() {
            CliError::Numerical { reason, message }
        } else {
            CliError::Validation { reason, message }
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::validation("io-error", e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
