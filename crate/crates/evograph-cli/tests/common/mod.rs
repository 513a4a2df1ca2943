//! Helpers shared by the command-line suites: temp workspaces and manifest
//! fixtures written from synthetic series.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use evograph::fixture::synth_fixture;
use evograph::{GraphSeries, ModelParams};
use evograph_cli::edgelist::save_snapshot;
use evograph_cli::manifest::{ManifestEntry, SeriesManifest, FORMAT_VERSION};

/// Fresh scratch directory under the target-managed temp root.
pub fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "evograph-test-{tag}-{}-{}",
        std::process::id(),
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .unwrap()
            .as_nanos()
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

/// Writes every snapshot of a series as an edge list plus a manifest;
/// returns the manifest path.
pub fn write_series(series: &GraphSeries, dir: &Path) -> PathBuf {
    let mut entries = Vec::new();
    for snap in series.snapshots() {
        let file = format!("t{:03}.txt", snap.time_index());
        save_snapshot(snap, &dir.join(&file)).unwrap();
        entries.push(ManifestEntry {
            label: format!("t{:03}", snap.time_index()),
            path: file.into(),
        });
    }
    let manifest = SeriesManifest {
        format_version: FORMAT_VERSION,
        snapshots: entries,
    };
    let path = dir.join("series.json");
    manifest.save(&path).unwrap();
    path
}

/// A small realistic series with ground-truth parameters.
pub fn small_fixture(seed: u64) -> (GraphSeries, ModelParams) {
    let params = ModelParams {
        delta_n: 25,
        a_n: 0.8,
        a_e: 0.85,
        p: 0.6,
    };
    let series = synth_fixture(params, 120, 6, seed).unwrap();
    (series, params)
}

/// Runs the built binary with the given arguments.
pub fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_evograph"))
        .args(args)
        .output()
        .expect("binary runs")
}
