use std::fmt;
use std::path::Path;

use serde_json::json;

/// Failure of a subcommand; printed as one JSON line on stderr.
#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(kind: &'static str, message: impl Into<String>) -> Self {
        CliError { kind, message: message.into() }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        CliError::new("io", format!("{}: {err}", path.display()))
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError::new("usage", message)
    }

    pub fn line(&self) -> String {
        json!({ "error": self.kind, "message": self.message }).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl From<convskel::Error> for CliError {
    fn from(e: convskel::Error) -> Self {
        use convskel::Error as E;
        let kind = match &e {
            E::Io { .. } => "io",
            E::Parse { .. } => "parse",
            E::EmptyGraph => "empty-graph",
            E::Disconnected { .. } | E::DisconnectedSeed => "disconnected",
            E::NodeOutOfRange(_) => "node-out-of-range",
            E::InvalidParameter(_) => "invalid-parameter",
            E::NodeSetMismatch(_) => "node-set-mismatch",
        };
        CliError::new(kind, e.to_string())
    }
}
