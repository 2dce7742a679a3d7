use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::args::Cli;
use crate::error::CliError;

pub const FILE: &str = "manifest.json";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: PathBuf,
    pub sha256: String,
}

/// Everything needed to regenerate the artifacts of a run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub invocation: Cli,
    pub params: Value,
    pub seed: u64,
    pub inputs: Vec<InputDigest>,
    pub version: String,
    pub duration_secs: f64,
}

pub fn digest(path: &Path) -> Result<InputDigest, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    Ok(InputDigest { path: path.to_path_buf(), sha256: hex::encode(Sha256::digest(&bytes)) })
}

impl RunManifest {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::new("parse", format!("{}: {e}", path.display())))
    }

    /// Fails when an input changed since the manifest was written.
    pub fn verify_inputs(&self) -> Result<(), CliError> {
        for recorded in &self.inputs {
            let now = digest(&recorded.path)?;
            if now.sha256 != recorded.sha256 {
                return Err(CliError::new(
                    "input-changed",
                    format!("{} no longer matches its recorded digest", recorded.path.display()),
                ));
            }
        }
        Ok(())
    }
}
