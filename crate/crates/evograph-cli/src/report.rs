//! Structured report documents emitted by the commands.
//!
//! Reports are JSON with stable field order and no timestamps, so equal
//! inputs give byte-identical output. Every numeric block carries a
//! `describes` string naming the quantity it holds.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use evograph::patterns::{
    ClusteringProfile, DegreeDistribution, DistanceDistribution, DistanceEdgeProfile,
    InitialDegreeDistribution, PatternReport, PowerLawFit, SeriesSizes,
};
use evograph::validation::{ComparisonReport, TheoremReport};
use evograph::{ModelParams, SeriesEstimates};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Report schema version.
pub const REPORT_VERSION: u32 = 1;

/// A power-law fit with its meaning spelled out.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitBlock {
    /// What the fit describes.
    pub describes: String,
    /// The fitted law.
    pub fit: PowerLawFit,
}

/// Full `analyze` output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalyzeReport {
    /// Always "patterns".
    pub kind: String,
    /// Schema version.
    pub format_version: u32,
    /// Manifest the series came from.
    pub manifest: String,
    /// "exact" or "sampled:<sources>".
    pub distance_mode: String,
    /// Node/edge counts per snapshot and union.
    pub sizes: Vec<SeriesSizes>,
    /// Edge count against node count across snapshots.
    pub snapshot_growth: FitBlock,
    /// Union edge count against union node count.
    pub union_growth: FitBlock,
    /// Per step from the second snapshot on: share of new edges joining two
    /// new nodes; null when the step has no new edges.
    pub new_new_fraction_per_step: Vec<Option<f64>>,
    /// Initial-degree distribution of new nodes, when any arrived.
    pub initial_degrees: Option<InitialDegreeDistribution>,
    /// Power-law fit of that distribution, when fittable.
    pub initial_degree_fit: Option<FitBlock>,
    /// Pooled prior-distance profile of new old-old edges.
    pub new_edge_distances: Option<DistanceEdgeProfile>,
    /// Geometric-law factor fitted from the pooled profile.
    pub clustering_factor: Option<f64>,
    /// Degree distribution of the last snapshot.
    pub degree_distribution: DegreeDistribution,
    /// Power-law fit of the degree distribution, when fittable.
    pub degree_fit: Option<FitBlock>,
    /// Distance distribution of the last snapshot.
    pub distance_distribution: DistanceDistribution,
    /// Clustering profile of the last snapshot.
    pub clustering: ClusteringProfile,
}

impl AnalyzeReport {
    /// Wraps a pattern report for serialization.
    pub fn new(report: &PatternReport, manifest: &Path, sample_sources: Option<usize>) -> Self {
        AnalyzeReport {
            kind: "patterns".into(),
            format_version: REPORT_VERSION,
            manifest: manifest.display().to_string(),
            distance_mode: match sample_sources {
                Some(k) => format!("sampled:{k}"),
                None => "exact".into(),
            },
            sizes: report.sizes.clone(),
            snapshot_growth: FitBlock {
                describes: "edges vs nodes per snapshot".into(),
                fit: report.densification,
            },
            union_growth: FitBlock {
                describes: "union edges vs union nodes".into(),
                fit: report.total_densification,
            },
            new_new_fraction_per_step: report.new_new_fractions.clone(),
            initial_degrees: report.initial_degrees.clone(),
            initial_degree_fit: report.initial_degree_fit.map(|fit| FitBlock {
                describes: "initial-degree probability vs degree".into(),
                fit,
            }),
            new_edge_distances: report.distance_profile.clone(),
            clustering_factor: report.clustering_factor,
            degree_distribution: report.degree_distribution.clone(),
            degree_fit: report.degree_fit.map(|fit| FitBlock {
                describes: "degree probability vs degree, last snapshot".into(),
                fit,
            }),
            distance_distribution: report.distance_distribution.clone(),
            clustering: report.clustering.clone(),
        }
    }
}

/// Full `estimate` output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EstimateReport {
    /// Always "params".
    pub kind: String,
    /// Schema version.
    pub format_version: u32,
    /// Manifest the series came from.
    pub manifest: String,
    /// Median aggregation instead of mean.
    pub robust: bool,
    /// The estimates, with inversion bookkeeping.
    pub estimates: SeriesEstimates,
    /// Note set when the clustering factor was unavailable.
    pub note: Option<String>,
}

/// Full `generate` output: provenance of the inferred snapshots.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenerateReport {
    /// Always "generation".
    pub kind: String,
    /// Schema version.
    pub format_version: u32,
    /// Manifest the input series came from.
    pub manifest: String,
    /// Seed that drove the run.
    pub seed: u64,
    /// Parameters used.
    pub params: ModelParams,
    /// Whether the edge budget was scaled by the growth exponent.
    pub alpha_factor: bool,
    /// Whether the parameters came from `--auto-estimate`.
    pub auto_estimated: bool,
    /// Written snapshot files in time order.
    pub outputs: Vec<OutputFile>,
}

/// One written snapshot.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutputFile {
    /// Time index of the inferred snapshot.
    pub time: usize,
    /// File name within the output directory.
    pub file: String,
    /// Node count.
    pub nodes: usize,
    /// Edge count.
    pub edges: usize,
}

/// Full `validate` output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidateReport {
    /// Always "theorem".
    pub kind: String,
    /// Schema version.
    pub format_version: u32,
    /// Which check ran: theorem1, theorem2 or theorem3.
    pub check: String,
    /// Seed that drove the Monte Carlo replicas.
    pub seed: u64,
    /// Parameters of the synthetic base series.
    pub base_params: ModelParams,
    /// The check result.
    pub report: TheoremReport,
}

/// Full `compare` output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompareReport {
    /// Always "comparison".
    pub kind: String,
    /// Schema version.
    pub format_version: u32,
    /// First snapshot file.
    pub snapshot_a: String,
    /// Second snapshot file.
    pub snapshot_b: String,
    /// L1 distances between the static patterns.
    pub distances: ComparisonReport,
}

/// Serializes a report as pretty JSON to the path, or stdout when `None`.
pub fn write_report<T: Serialize>(report: &T, out: Option<&Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

/// Writes one `x,y` CSV per measured pattern into `dir` for external
/// plotting.
pub fn write_pattern_csvs(report: &PatternReport, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut written = Vec::new();
    let mut emit = |name: &str, header: &str, rows: Vec<String>| -> Result<(), CliError> {
        let path = dir.join(name);
        let mut text = String::from(header);
        text.push('\n');
        for row in rows {
            text.push_str(&row);
            text.push('\n');
        }
        fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
        written.push(path);
        Ok(())
    };

    emit(
        "snapshot_growth.csv",
        "nodes,edges",
        report
            .sizes
            .iter()
            .map(|s| format!("{},{}", s.nodes, s.edges))
            .collect(),
    )?;
    emit(
        "union_growth.csv",
        "total_nodes,total_edges",
        report
            .sizes
            .iter()
            .map(|s| format!("{},{}", s.total_nodes, s.total_edges))
            .collect(),
    )?;
    emit(
        "new_new_fraction.csv",
        "step,fraction",
        report
            .new_new_fractions
            .iter()
            .enumerate()
            .map(|(i, f)| match f {
                Some(f) => format!("{},{f}", i + 2),
                None => format!("{},", i + 2),
            })
            .collect(),
    )?;
    if let Some(init) = &report.initial_degrees {
        emit(
            "initial_degree_distribution.csv",
            "degree,probability",
            init.mass
                .iter()
                .map(|(k, p)| format!("{k},{p}"))
                .collect(),
        )?;
    }
    if let Some(profile) = &report.distance_profile {
        let mut rows: Vec<String> = profile
            .mass
            .iter()
            .map(|(d, f)| format!("{d},{f}"))
            .collect();
        rows.push(format!("inf,{}", profile.infinite_fraction));
        emit("new_edge_distances.csv", "distance,fraction", rows)?;
    }
    emit(
        "degree_distribution.csv",
        "degree,probability",
        report
            .degree_distribution
            .mass
            .iter()
            .map(|(k, p)| format!("{k},{p}"))
            .collect(),
    )?;
    {
        let mut rows: Vec<String> = report
            .distance_distribution
            .mass
            .iter()
            .map(|(d, f)| format!("{d},{f}"))
            .collect();
        rows.push(format!(
            "inf,{}",
            report.distance_distribution.unreachable_fraction
        ));
        emit("distance_distribution.csv", "distance,fraction", rows)?;
    }
    emit(
        "clustering_by_degree.csv",
        "degree,clustering",
        report
            .clustering
            .by_degree
            .iter()
            .map(|(k, c)| format!("{k},{c}"))
            .collect(),
    )?;
    Ok(written)
}
