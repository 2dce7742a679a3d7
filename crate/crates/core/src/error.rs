use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("graph is disconnected ({components} components); use the corrected measure on the largest component")]
    Disconnected { components: usize },

    #[error("node set does not induce a connected subgraph")]
    DisconnectedSeed,

    #[error("node {0} is out of range")]
    NodeOutOfRange(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("node sets differ: {0}")]
    NodeSetMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
