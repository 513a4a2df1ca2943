//! Series manifest: an ordered list of labeled snapshot files.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "snapshots": [
//!     { "label": "2007-01", "path": "2007-01.txt" },
//!     { "label": "2007-02", "path": "2007-02.txt" }
//!   ]
//! }
//! ```
//!
//! Relative snapshot paths resolve against the manifest's directory. The
//! list order defines the time indices `1..=n`; whatever cadence the files
//! were captured at becomes the model's time unit.

use std::fs;
use std::path::{Path, PathBuf};

use evograph::{GraphSeries, SeriesError};
use serde::{Deserialize, Serialize};

use crate::edgelist;
use crate::error::CliError;

/// Supported manifest format version.
pub const FORMAT_VERSION: u32 = 1;

/// One labeled snapshot file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    /// Free-form time label, e.g. a month.
    pub label: String,
    /// Snapshot file path, relative to the manifest.
    pub path: PathBuf,
}

/// Ordered list of snapshot files making up a series.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesManifest {
    /// Must equal [`FORMAT_VERSION`].
    pub format_version: u32,
    /// Snapshots in time order.
    pub snapshots: Vec<ManifestEntry>,
}

impl SeriesManifest {
    /// Reads and validates a manifest file.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let manifest: SeriesManifest =
            serde_json::from_str(&text).map_err(|e| CliError::Format {
                path: path.to_path_buf(),
                line: e.line(),
                message: e.to_string(),
            })?;
        if manifest.format_version != FORMAT_VERSION {
            return Err(CliError::Format {
                path: path.to_path_buf(),
                line: 0,
                message: format!(
                    "unsupported format_version {} (expected {FORMAT_VERSION})",
                    manifest.format_version
                ),
            });
        }
        if manifest.snapshots.is_empty() {
            return Err(CliError::Format {
                path: path.to_path_buf(),
                line: 0,
                message: "manifest lists no snapshots".to_string(),
            });
        }
        Ok(manifest)
    }

    /// Writes the manifest as pretty JSON.
    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        fs::write(path, text).map_err(|e| CliError::io(path, e))
    }
}

/// Loads the whole series behind a manifest, assigning time indices from
/// the list order.
pub fn load_series(manifest_path: &Path) -> Result<GraphSeries, CliError> {
    let manifest = SeriesManifest::load(manifest_path)?;
    let base = manifest_path.parent().unwrap_or(Path::new("."));
    let mut snaps = Vec::with_capacity(manifest.snapshots.len());
    for (i, entry) in manifest.snapshots.iter().enumerate() {
        let path = if entry.path.is_absolute() {
            entry.path.clone()
        } else {
            base.join(&entry.path)
        };
        snaps.push(edgelist::load_snapshot(&path, i + 1)?);
    }
    GraphSeries::new(snaps).map_err(|e: SeriesError| CliError::Input(e.to_string()))
}
