use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{AppError, AppResult};

/// Everything needed to rerun a command: written as `<output>.manifest.json`
/// next to each output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    /// Command line after config-file expansion.
    pub argv: Vec<String>,
    pub parameters: serde_json::Value,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub version: String,
    pub outputs: Vec<PathBuf>,
    pub wall_seconds: f64,
}

impl RunManifest {
    pub fn path_for(output: &Path) -> PathBuf {
        let mut name = output.file_name().map(|n| n.to_os_string()).unwrap_or_default();
        name.push(".manifest.json");
        output.with_file_name(name)
    }

    pub fn write(&self) -> AppResult<Vec<PathBuf>> {
        let text = serde_json::to_string_pretty(self)? + "\n";
        let mut written = Vec::new();
        for out in &self.outputs {
            let path = Self::path_for(out);
            fs::write(&path, &text).map_err(AppError::io(&path))?;
            written.push(path);
        }
        Ok(written)
    }

    pub fn read(path: &Path) -> AppResult<Self> {
        let text = fs::read_to_string(path).map_err(AppError::io(path))?;
        Ok(serde_json::from_str(&text)?)
    }
}
