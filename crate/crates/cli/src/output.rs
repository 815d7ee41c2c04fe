//! Writing reports and curves to the output directory.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use superharm::verifier::CurveSample;

use crate::CliError;

/// Name of the marker written when a run stops on an error.
pub const FAILURE_MARKER: &str = "FAILED.json";

/// Output directory with serialized writes.
#[derive(Debug, Clone)]
pub struct OutputDir {
    root: PathBuf,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(root).map_err(|source| CliError::Io {
            path: root.to_path_buf(),
            source,
        })?;
        Ok(Self {
            root: root.to_path_buf(),
        })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    fn write(&self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        let path = self.path(name);
        fs::write(&path, contents).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        Ok(path)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn json<T: Serialize>(&self, name: &str, value: &T) -> Result<PathBuf, CliError> {
        let mut text = serde_json::to_string_pretty(value)
            .map_err(|e| CliError::Config(format!("cannot serialize {name}: {e}")))?;
        text.push('\n');
        self.write(name, &text)
    }

    pub fn csv(&self, name: &str, curve: &CurveSample) -> Result<PathBuf, CliError> {
        self.write(name, &curve.to_csv())
    }

    /// Records why a run stopped; outputs written before the error are kept.
    pub fn failure(&self, error: &CliError) -> Result<PathBuf, CliError> {
        #[derive(Serialize)]
        struct Marker {
            error: String,
            exit_code: u8,
        }
        self.json(
            FAILURE_MARKER,
            &Marker {
                error: error.to_string(),
                exit_code: error.status().code(),
            },
        )
    }
}
