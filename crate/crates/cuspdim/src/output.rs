use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;
use crate::error::CliError;

pub const TOOL: &str = "cuspdim";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance written at the top of every output file.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub config_sha256: String,
    pub seed: u64,
    pub command: String,
}

impl Header {
    pub fn new(config: &RunConfig, command: impl Into<String>) -> Self {
        Self { tool: TOOL, version: VERSION, config_sha256: config.hash(), seed: config.seed, command: command.into() }
    }

    /// The header as CSV comment lines.
    pub fn csv_lines(&self) -> String {
        format!(
            "# {} {}\n# config_sha256 {}\n# seed {}\n# command {}\n",
            self.tool, self.version, self.config_sha256, self.seed, self.command
        )
    }
}

/// Writes files into one directory, each stamped with the same header.
pub struct Output {
    dir: PathBuf,
    header: Header,
    written: Vec<PathBuf>,
}

impl Output {
    pub fn new(dir: &Path, header: Header) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        Ok(Self { dir: dir.to_path_buf(), header, written: Vec::new() })
    }

    pub fn header(&self) -> &Header {
        &self.header
    }

    fn write(&mut self, name: &str, body: &[u8]) -> Result<(), CliError> {
        let path = self.dir.join(name);
        fs::write(&path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        self.written.push(path);
        Ok(())
    }

    /// `body` fills in the CSV proper; the header goes above it.
    pub fn csv<F>(&mut self, name: &str, body: F) -> Result<(), CliError>
    where
        F: FnOnce(&mut Vec<u8>) -> Result<(), CliError>,
    {
        let mut buf = self.header.csv_lines().into_bytes();
        body(&mut buf)?;
        self.write(name, &buf)
    }

    /// `{"header": ..., "result": ...}`, pretty-printed.
    pub fn json(&mut self, name: &str, result: Value) -> Result<(), CliError> {
        let doc = serde_json::json!({ "header": self.header, "result": result });
        let mut text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Io(e.to_string()))?;
        text.push('\n');
        self.write(name, text.as_bytes())
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }

    pub fn into_written(self) -> Vec<PathBuf> {
        self.written
    }
}
