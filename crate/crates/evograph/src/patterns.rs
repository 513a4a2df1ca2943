//! Static and dynamic pattern measurements over snapshots and series.
//!
//! Static patterns describe one snapshot: degree distribution, distance
//! distribution and per-degree local clustering. Dynamic patterns need the
//! whole series: the densification power laws of snapshot and total-graph
//! sizes, the scarcity of edges between two new nodes, the initial-degree
//! distribution of new nodes, and the geometric distance profile of new
//! old-old edges.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::PatternError;
use crate::graph::{Distance, NodeId, Snapshot};
use crate::math;
use crate::series::{GraphSeries, TotalGraph};
use crate::stats;

/// Result of a least-squares power-law fit `y = coefficient * x^exponent`
/// in log-log space.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PowerLawFit {
    /// Multiplicative coefficient, always positive.
    pub coefficient: f64,
    /// Power-law exponent.
    pub exponent: f64,
    /// Goodness of fit in log-log space, in `[0, 1]`.
    pub r_squared: f64,
    /// Number of fitted points.
    pub n_points: usize,
}

impl PowerLawFit {
    /// Evaluates the fitted law at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficient * math::powf(x, self.exponent)
    }
}

/// Probability that a uniformly chosen node has each degree.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DegreeDistribution {
    /// Degree to probability; probabilities sum to one.
    pub mass: BTreeMap<usize, f64>,
}

impl DegreeDistribution {
    /// L1 distance between two degree distributions.
    pub fn l1(&self, other: &DegreeDistribution) -> f64 {
        l1_map(&self.mass, &other.mass)
    }
}

/// Fraction of node pairs at each hop distance, with a separate bucket for
/// pairs in different components.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DistanceDistribution {
    /// Distance to fraction of pairs; together with the unreachable bucket
    /// this sums to one.
    pub mass: BTreeMap<u32, f64>,
    /// Fraction of pairs with no connecting path.
    pub unreachable_fraction: f64,
}

impl DistanceDistribution {
    /// L1 distance including the unreachable buckets.
    pub fn l1(&self, other: &DistanceDistribution) -> f64 {
        l1_map(&self.mass, &other.mass)
            + math::abs(self.unreachable_fraction - other.unreachable_fraction)
    }
}

/// Mean local clustering per degree class and overall.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClusteringProfile {
    /// Degree to mean clustering of nodes with that degree; degrees below
    /// two are defined as zero.
    pub by_degree: BTreeMap<usize, f64>,
    /// Probability-weighted mean over all degrees.
    pub mean: f64,
}

impl ClusteringProfile {
    /// L1 distance over the union of degree classes.
    pub fn l1(&self, other: &ClusteringProfile) -> f64 {
        l1_map(&self.by_degree, &other.by_degree)
    }
}

/// Empirical distribution of the degrees new nodes arrive with.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InitialDegreeDistribution {
    /// Initial degree to probability.
    pub mass: BTreeMap<usize, f64>,
    /// Largest observed initial degree.
    pub max_initial_degree: usize,
    /// Largest per-step count of new nodes.
    pub max_new_nodes_per_step: usize,
}

/// Distance buckets of new old-old edges, measured in the snapshot just
/// before each edge appears.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DistanceEdgeProfile {
    /// Prior distance (at least 2) to fraction of edges.
    pub mass: BTreeMap<u32, f64>,
    /// Fraction of edges whose endpoints had no connecting path.
    pub infinite_fraction: f64,
}

impl DistanceEdgeProfile {
    /// Builds a normalized profile from raw bucket counts.
    pub fn from_counts(counts: &DistanceBuckets) -> Result<Self, PatternError> {
        let total = counts.total();
        if total == 0 {
            return Err(PatternError::EmptyProfile);
        }
        let mass = counts
            .finite
            .iter()
            .map(|(&d, &c)| (d, c as f64 / total as f64))
            .collect();
        Ok(DistanceEdgeProfile {
            mass,
            infinite_fraction: counts.infinite as f64 / total as f64,
        })
    }
}

/// Raw prior-distance bucket counts for new old-old edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DistanceBuckets {
    /// Finite prior distance to edge count.
    pub finite: BTreeMap<u32, usize>,
    /// Edges whose endpoints were disconnected (or absent) just before.
    pub infinite: usize,
}

impl DistanceBuckets {
    /// Total number of bucketed edges.
    pub fn total(&self) -> usize {
        self.finite.values().sum::<usize>() + self.infinite
    }

    /// Number of edges with a finite prior distance.
    pub fn finite_total(&self) -> usize {
        self.finite.values().sum()
    }

    /// Merges another set of buckets into this one.
    pub fn merge(&mut self, other: &DistanceBuckets) {
        for (&d, &c) in &other.finite {
            *self.finite.entry(d).or_insert(0) += c;
        }
        self.infinite += other.infinite;
    }

    /// Mean finite prior distance, if any finite bucket is populated.
    pub fn mean_finite(&self) -> Option<f64> {
        let n = self.finite_total();
        if n == 0 {
            return None;
        }
        let sum: f64 = self.finite.iter().map(|(&d, &c)| d as f64 * c as f64).sum();
        Some(sum / n as f64)
    }
}

/// Geometric law for the chance that a new edge spans prior distance `d`:
/// `p * (1 - p)^(d - 2)` for `d >= 2`.
pub fn distance_preference(p: f64, d: u32) -> f64 {
    debug_assert!(d >= 2);
    let mut w = p;
    for _ in 2..d {
        w *= 1.0 - p;
    }
    w
}

/// Exact degree distribution `P(k) = n(k) / n`.
pub fn degree_distribution(g: &Snapshot) -> Result<DegreeDistribution, PatternError> {
    if g.is_empty() {
        return Err(PatternError::EmptyGraph);
    }
    let n = g.node_count() as f64;
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for v in g.nodes() {
        *counts.entry(g.degree(v).expect("node of g")).or_insert(0) += 1;
    }
    Ok(DegreeDistribution {
        mass: counts.into_iter().map(|(k, c)| (k, c as f64 / n)).collect(),
    })
}

/// Distance distribution over node pairs.
///
/// Without `sample_sources` this is exact: one traversal per node, each
/// unordered pair counted once, divided by `n(n-1)/2`. With `Some(k)` only
/// `k` evenly spaced sources are traversed and the denominator is the
/// sampled pair universe `k(n-1)`; `k >= n` falls back to exact mode.
pub fn distance_distribution(
    g: &Snapshot,
    sample_sources: Option<usize>,
) -> Result<DistanceDistribution, PatternError> {
    if g.is_empty() {
        return Err(PatternError::EmptyGraph);
    }
    if sample_sources == Some(0) {
        return Err(PatternError::ZeroSampleSources);
    }
    let n = g.node_count();
    if n == 1 {
        return Ok(DistanceDistribution {
            mass: BTreeMap::new(),
            unreachable_fraction: 0.0,
        });
    }
    let nodes: Vec<NodeId> = g.nodes().collect();
    let (sources, pairs): (Vec<NodeId>, f64) = match sample_sources {
        Some(k) if k < n => {
            // evenly spaced over the sorted node list, deterministic
            let picked = (0..k).map(|j| nodes[j * n / k]).collect();
            (picked, (k * (n - 1)) as f64)
        }
        _ => (nodes.clone(), (n * (n - 1)) as f64 / 2.0),
    };
    let exact = sources.len() == n;
    let mut finite: BTreeMap<u32, usize> = BTreeMap::new();
    let mut unreachable = 0usize;
    for &src in &sources {
        let dist = g.bfs_distances(src).expect("source is a node of g");
        for (&v, &d) in &dist {
            if v == src {
                continue;
            }
            if exact && v < src {
                continue; // count each unordered pair once
            }
            match d {
                Distance::Hops(h) => *finite.entry(h).or_insert(0) += 1,
                Distance::Unreachable => unreachable += 1,
            }
        }
    }
    Ok(DistanceDistribution {
        mass: finite
            .into_iter()
            .map(|(d, c)| (d, c as f64 / pairs))
            .collect(),
        unreachable_fraction: unreachable as f64 / pairs,
    })
}

/// Per-degree local clustering `C(k)` and its probability-weighted mean.
///
/// `C(k)` is the mean number of edges among the neighbors of degree-`k`
/// nodes divided by `k(k-1)/2`; degrees below two are defined as zero.
pub fn local_clustering(g: &Snapshot) -> Result<ClusteringProfile, PatternError> {
    if g.is_empty() {
        return Err(PatternError::EmptyGraph);
    }
    let mut per_degree: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
    for v in g.nodes() {
        let nbrs: Vec<NodeId> = g.neighbors(v).collect();
        let k = nbrs.len();
        let c = if k < 2 {
            0.0
        } else {
            let mut links = 0usize;
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    if g.has_edge(a, b) {
                        links += 1;
                    }
                }
            }
            links as f64 / (k * (k - 1) / 2) as f64
        };
        let slot = per_degree.entry(k).or_insert((0.0, 0));
        slot.0 += c;
        slot.1 += 1;
    }
    let n = g.node_count() as f64;
    let mut mean = 0.0;
    let by_degree: BTreeMap<usize, f64> = per_degree
        .into_iter()
        .map(|(k, (sum, cnt))| {
            let ck = sum / cnt as f64;
            mean += ck * (cnt as f64 / n);
            (k, ck)
        })
        .collect();
    Ok(ClusteringProfile { by_degree, mean })
}

/// Least-squares power-law fit in log-log space.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<PowerLawFit, PatternError> {
    if points.len() < 2 {
        return Err(PatternError::NotEnoughPoints);
    }
    for &(x, y) in points {
        if x <= 0.0 || y <= 0.0 {
            return Err(PatternError::NonPositiveCoordinate { x, y });
        }
    }
    let first = points[0].0;
    if points.iter().all(|&(x, _)| x == first) {
        return Err(PatternError::DegenerateFit);
    }
    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|&(x, y)| (math::ln(x), math::ln(y)))
        .collect();
    let (slope, intercept, r_squared) = stats::linear_ols(&logs);
    Ok(PowerLawFit {
        coefficient: math::exp(intercept),
        exponent: slope,
        r_squared,
        n_points: points.len(),
    })
}

/// Power law of edge count against node count across the snapshots.
pub fn densification(series: &GraphSeries) -> Result<PowerLawFit, PatternError> {
    if series.len() < 2 {
        return Err(PatternError::SeriesTooShort { needed: 2 });
    }
    let points: Vec<(f64, f64)> = series
        .snapshots()
        .iter()
        .map(|s| (s.node_count() as f64, s.edge_count() as f64))
        .collect();
    fit_power_law(&points)
}

/// Power law of total-graph edge count against total-graph node count.
pub fn total_densification(series: &GraphSeries) -> Result<PowerLawFit, PatternError> {
    if series.len() < 2 {
        return Err(PatternError::SeriesTooShort { needed: 2 });
    }
    let total = TotalGraph::from_series(series);
    let points: Vec<(f64, f64)> = (1..=series.len())
        .map(|i| {
            (
                total.node_count_through(i) as f64,
                total.edge_count_through(i) as f64,
            )
        })
        .collect();
    fit_power_law(&points)
}

/// Share of this step's new edges that connect two new nodes.
pub fn new_new_fraction(series: &GraphSeries, t: usize) -> Result<f64, PatternError> {
    if t < 2 {
        return Err(PatternError::Series(crate::error::SeriesError::IndexOutOfRange {
            index: t,
            len: series.len(),
        }));
    }
    let counts = series.classify_new_edges(t)?.counts();
    if counts.total() == 0 {
        return Err(PatternError::NoNewEdges { index: t });
    }
    Ok(counts.new_new as f64 / counts.total() as f64)
}

/// Distribution of initial degrees over all new nodes at steps `2..=n`.
///
/// First-snapshot nodes are excluded: their membership reflects the start of
/// the observation window, not an arrival.
pub fn initial_degree_distribution(
    series: &GraphSeries,
) -> Result<InitialDegreeDistribution, PatternError> {
    if series.len() < 2 {
        return Err(PatternError::SeriesTooShort { needed: 2 });
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    let mut total = 0usize;
    let mut max_new_per_step = 0usize;
    for t in 2..=series.len() {
        let new = series.new_nodes_at(t)?;
        max_new_per_step = max_new_per_step.max(new.len());
        let snap = series.snapshot(t)?;
        for v in new {
            let k = snap.degree(v).expect("new node is in snapshot t");
            *counts.entry(k).or_insert(0) += 1;
            total += 1;
        }
    }
    if total == 0 {
        return Err(PatternError::NoNewNodes);
    }
    let max_initial_degree = counts.keys().next_back().copied().unwrap_or(0);
    Ok(InitialDegreeDistribution {
        mass: counts
            .into_iter()
            .map(|(k, c)| (k, c as f64 / total as f64))
            .collect(),
        max_initial_degree,
        max_new_nodes_per_step: max_new_per_step,
    })
}

/// Prior-distance bucket counts for the new old-old edges of step `t`,
/// measured in snapshot `t - 1`.
///
/// Endpoints absent from snapshot `t - 1` (an old node may be churned out)
/// fall into the infinite bucket.
pub fn new_edge_distances(series: &GraphSeries, t: usize) -> Result<DistanceBuckets, PatternError> {
    if t < 2 {
        return Err(PatternError::Series(crate::error::SeriesError::IndexOutOfRange {
            index: t,
            len: series.len(),
        }));
    }
    let classes = series.classify_new_edges(t)?;
    let prev = series.snapshot(t - 1)?;
    let mut buckets = DistanceBuckets::default();
    // group by source endpoint so each BFS serves several edges
    let mut by_source: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
    for e in &classes.old_old {
        let (u, v) = e.endpoints();
        by_source.entry(u).or_default().push(v);
    }
    for (u, targets) in by_source {
        if !prev.contains_node(u) {
            buckets.infinite += targets.len();
            continue;
        }
        let dist = prev.bfs_distances(u).expect("checked membership");
        for v in targets {
            match dist.get(&v) {
                Some(Distance::Hops(h)) => {
                    debug_assert!(*h >= 2, "a new edge cannot span distance < 2");
                    *buckets.finite.entry(*h).or_insert(0) += 1;
                }
                _ => buckets.infinite += 1,
            }
        }
    }
    Ok(buckets)
}

/// Normalized prior-distance profile of the new old-old edges of step `t`.
pub fn new_edge_distance_profile(
    series: &GraphSeries,
    t: usize,
) -> Result<DistanceEdgeProfile, PatternError> {
    let buckets = new_edge_distances(series, t)?;
    if buckets.total() == 0 {
        return Err(PatternError::NoNewOldOldEdges { index: t });
    }
    DistanceEdgeProfile::from_counts(&buckets)
}

/// Method-of-moments fit of the geometric distance law: `p = 1 / (mean - 1)`
/// over the finite buckets, clamped into `(0, 1]`.
pub fn fit_clustering_factor(profile: &DistanceEdgeProfile) -> Result<f64, PatternError> {
    let finite: f64 = profile.mass.values().sum();
    if finite <= 0.0 {
        return Err(PatternError::EmptyProfile);
    }
    let mean: f64 = profile
        .mass
        .iter()
        .map(|(&d, &m)| d as f64 * m)
        .sum::<f64>()
        / finite;
    Ok(clustering_factor_from_mean(mean))
}

/// Clamped inversion of the geometric mean distance `1 + 1/p`.
pub fn clustering_factor_from_mean(mean_distance: f64) -> f64 {
    stats::clamp(1.0 / (mean_distance - 1.0), 1e-6, 1.0)
}

/// Everything `analyze` reports about a series: per-step sizes, both
/// densification fits, the four dynamic patterns, and the static patterns of
/// the last snapshot.
#[derive(Debug, Clone)]
pub struct PatternReport {
    /// Per snapshot: nodes, edges, total nodes, total edges.
    pub sizes: Vec<SeriesSizes>,
    /// Fit of edges against nodes.
    pub densification: PowerLawFit,
    /// Fit of total edges against total nodes.
    pub total_densification: PowerLawFit,
    /// Per step `t = 2..=n`, the new-new share of new edges, when defined.
    pub new_new_fractions: Vec<Option<f64>>,
    /// Initial-degree distribution of new nodes, when any exist.
    pub initial_degrees: Option<InitialDegreeDistribution>,
    /// Power-law fit of the initial-degree distribution, when fittable.
    pub initial_degree_fit: Option<PowerLawFit>,
    /// Pooled prior-distance profile of new old-old edges, when any exist.
    pub distance_profile: Option<DistanceEdgeProfile>,
    /// Geometric-law factor fitted from the pooled profile.
    pub clustering_factor: Option<f64>,
    /// Degree distribution of the last snapshot.
    pub degree_distribution: DegreeDistribution,
    /// Power-law fit of the degree distribution, when fittable.
    pub degree_fit: Option<PowerLawFit>,
    /// Distance distribution of the last snapshot.
    pub distance_distribution: DistanceDistribution,
    /// Clustering profile of the last snapshot.
    pub clustering: ClusteringProfile,
}

/// Node and edge counts of one snapshot and of the union through it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeriesSizes {
    /// 1-based time index.
    pub time: usize,
    /// Snapshot node count.
    pub nodes: usize,
    /// Snapshot edge count.
    pub edges: usize,
    /// Union node count through this time.
    pub total_nodes: usize,
    /// Union edge count through this time.
    pub total_edges: usize,
}

/// Measures every pattern of the report in one pass.
pub fn analyze(
    series: &GraphSeries,
    sample_sources: Option<usize>,
) -> Result<PatternReport, PatternError> {
    if series.len() < 2 {
        return Err(PatternError::SeriesTooShort { needed: 2 });
    }
    let total = TotalGraph::from_series(series);
    let sizes: Vec<SeriesSizes> = series
        .snapshots()
        .iter()
        .enumerate()
        .map(|(i, s)| SeriesSizes {
            time: i + 1,
            nodes: s.node_count(),
            edges: s.edge_count(),
            total_nodes: total.node_count_through(i + 1),
            total_edges: total.edge_count_through(i + 1),
        })
        .collect();

    let new_new_fractions: Vec<Option<f64>> = (2..=series.len())
        .map(|t| new_new_fraction(series, t).ok())
        .collect();

    let initial_degrees = initial_degree_distribution(series).ok();
    let initial_degree_fit = initial_degrees.as_ref().and_then(|d| {
        let pts: Vec<(f64, f64)> = d
            .mass
            .iter()
            .filter(|&(&k, &m)| k > 0 && m > 0.0)
            .map(|(&k, &m)| (k as f64, m))
            .collect();
        fit_power_law(&pts).ok()
    });

    let mut pooled = DistanceBuckets::default();
    for t in 2..=series.len() {
        pooled.merge(&new_edge_distances(series, t)?);
    }
    let distance_profile = DistanceEdgeProfile::from_counts(&pooled).ok();
    let clustering_factor = distance_profile
        .as_ref()
        .and_then(|p| fit_clustering_factor(p).ok());

    let last = series.last();
    let degree_distribution = degree_distribution(last)?;
    let degree_fit = {
        let pts: Vec<(f64, f64)> = degree_distribution
            .mass
            .iter()
            .filter(|&(&k, &m)| k > 0 && m > 0.0)
            .map(|(&k, &m)| (k as f64, m))
            .collect();
        fit_power_law(&pts).ok()
    };

    Ok(PatternReport {
        sizes,
        densification: densification(series)?,
        total_densification: total_densification(series)?,
        new_new_fractions,
        initial_degrees,
        initial_degree_fit,
        distance_profile,
        clustering_factor,
        degree_distribution,
        degree_fit,
        distance_distribution: distance_distribution(last, sample_sources)?,
        clustering: local_clustering(last)?,
    })
}

fn l1_map<K: Ord + Copy>(a: &BTreeMap<K, f64>, b: &BTreeMap<K, f64>) -> f64 {
    let keys: BTreeSet<K> = a.keys().chain(b.keys()).copied().collect();
    keys.into_iter()
        .map(|k| {
            let x = a.get(&k).copied().unwrap_or(0.0);
            let y = b.get(&k).copied().unwrap_or(0.0);
            math::abs(x - y)
        })
        .sum()
}
