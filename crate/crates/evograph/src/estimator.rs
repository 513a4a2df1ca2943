//! Estimates the four generator parameters from an observed series.
//!
//! The per-step new-node count gives the growth parameter directly. The two
//! stable factors are recovered by inverting the model's predicted stability
//! coefficient — the expected Jaccard overlap of consecutive node (edge)
//! sets, computed from each element's actual presence history — against the
//! observed overlap, one transition at a time, then aggregating. The
//! clustering factor comes from the pooled prior-distance profile of new
//! old-old edges via the method of moments.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{EstimatorError, GeneratorError};
use crate::graph::NodeId;
use crate::patterns::{self, DistanceBuckets};
use crate::series::{edge_overlap, node_overlap, GraphSeries, StateSequence, TotalGraph};
use crate::stats;

/// The four generator inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModelParams {
    /// New nodes added per generated step.
    pub delta_n: usize,
    /// Stable factor of nodes, in `(0, 1]`.
    pub a_n: f64,
    /// Stable factor of edges, in `(0, 1]`.
    pub a_e: f64,
    /// Clustering factor of the geometric distance law, in `(0, 1]`.
    pub p: f64,
}

impl ModelParams {
    /// Checks the factor ranges.
    pub fn validate(&self) -> Result<(), GeneratorError> {
        for (value, what) in [
            (self.a_n, "node stable factor outside (0, 1]"),
            (self.a_e, "edge stable factor outside (0, 1]"),
            (self.p, "clustering factor outside (0, 1]"),
        ] {
            if !(value > 0.0 && value <= 1.0) {
                return Err(GeneratorError::InvalidParams(what));
            }
        }
        Ok(())
    }
}

/// How per-transition estimates are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Aggregation {
    /// Equal-weight mean over transitions.
    Mean,
    /// Median over transitions, robust to churn outliers.
    Median,
}

/// A stable-factor estimate with its inversion bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StabilityEstimate {
    /// Aggregated estimate, clamped into `(0, 1]`.
    pub value: f64,
    /// Transitions resolved by inverting the predicted coefficient.
    pub inverted: usize,
    /// Transitions that fell back to one-step persistence.
    pub fallbacks: usize,
}

impl StabilityEstimate {
    /// Whether any transition used the persistence fallback.
    pub fn used_fallback(&self) -> bool {
        self.fallbacks > 0
    }
}

/// All estimates for a series; the clustering factor may be unavailable.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeriesEstimates {
    /// Averaging window used for the growth estimate.
    pub window: usize,
    /// Estimated new nodes per step.
    pub delta_n: usize,
    /// Node stable factor.
    pub a_n: StabilityEstimate,
    /// Edge stable factor.
    pub a_e: StabilityEstimate,
    /// Clustering factor; `None` when the series has no new old-old edge
    /// with a finite prior distance.
    pub p: Option<f64>,
}

impl SeriesEstimates {
    /// Bundles the estimates into generator parameters; errors when the
    /// clustering factor could not be estimated.
    pub fn model_params(&self) -> Result<ModelParams, EstimatorError> {
        let p = self.p.ok_or(EstimatorError::NoQualifyingEdges)?;
        Ok(ModelParams {
            delta_n: self.delta_n,
            a_n: self.a_n.value,
            a_e: self.a_e.value,
            p,
        })
    }
}

const FACTOR_FLOOR: f64 = 1e-6;

/// Rounded mean count of new nodes over the last `window` transitions.
pub fn estimate_delta_n(series: &GraphSeries, window: usize) -> Result<usize, EstimatorError> {
    let n = series.len();
    if n < 2 {
        return Err(EstimatorError::SeriesTooShort);
    }
    if window == 0 || window > n - 1 {
        return Err(EstimatorError::InvalidWindow { window, len: n });
    }
    let mut sum = 0usize;
    for t in (n - window + 1)..=n {
        sum += series.new_nodes_at(t).expect("t in range").len();
    }
    Ok(crate::math::round(sum as f64 / window as f64) as usize)
}

/// Node stable factor by per-transition inversion, mean-aggregated.
pub fn estimate_a_n(series: &GraphSeries) -> Result<StabilityEstimate, EstimatorError> {
    estimate_a_n_with(series, Aggregation::Mean)
}

/// Node stable factor with an explicit aggregation rule.
pub fn estimate_a_n_with(
    series: &GraphSeries,
    agg: Aggregation,
) -> Result<StabilityEstimate, EstimatorError> {
    let n = series.len();
    if n < 2 {
        return Err(EstimatorError::SeriesTooShort);
    }
    let total = TotalGraph::from_series(series);
    let mut values = Vec::new();
    let mut inverted = 0usize;
    let mut fallbacks = 0usize;
    for t in 1..n {
        let snap_t = series.snapshot(t).expect("t in range");
        let snap_next = series.snapshot(t + 1).expect("t+1 in range");
        let (inter, union) = node_overlap(snap_t, snap_next);
        if union == 0 {
            continue;
        }
        let observed = inter as f64 / union as f64;
        let fresh = series.new_nodes_at(t + 1).expect("t+1 in range").len();
        let solved = invert_monotone(
            |a| predicted_node_stability(&total, series, t, fresh, a),
            observed,
        );
        match solved {
            Some(a) => {
                inverted += 1;
                values.push(a);
            }
            None => {
                // one-step persistence, flagged
                fallbacks += 1;
                if snap_t.node_count() > 0 {
                    values.push(stats::clamp(
                        inter as f64 / snap_t.node_count() as f64,
                        FACTOR_FLOOR,
                        1.0,
                    ));
                }
            }
        }
    }
    Ok(finish_estimate(values, inverted, fallbacks, agg))
}

/// Edge stable factor by per-transition inversion, mean-aggregated.
///
/// The predicted edge overlap folds in node survival, so the node stable
/// factor is estimated first.
pub fn estimate_a_e(series: &GraphSeries) -> Result<StabilityEstimate, EstimatorError> {
    estimate_a_e_with(series, Aggregation::Mean)
}

/// Edge stable factor with an explicit aggregation rule.
pub fn estimate_a_e_with(
    series: &GraphSeries,
    agg: Aggregation,
) -> Result<StabilityEstimate, EstimatorError> {
    let a_n = estimate_a_n_with(series, agg)?.value;
    estimate_a_e_given(series, a_n, agg)
}

fn estimate_a_e_given(
    series: &GraphSeries,
    a_n: f64,
    agg: Aggregation,
) -> Result<StabilityEstimate, EstimatorError> {
    let n = series.len();
    if n < 2 {
        return Err(EstimatorError::SeriesTooShort);
    }
    let total = TotalGraph::from_series(series);
    let mut values = Vec::new();
    let mut inverted = 0usize;
    let mut fallbacks = 0usize;
    for t in 1..n {
        let snap_t = series.snapshot(t).expect("t in range");
        let snap_next = series.snapshot(t + 1).expect("t+1 in range");
        let (inter, union) = edge_overlap(snap_t, snap_next);
        if union == 0 {
            continue;
        }
        let observed = inter as f64 / union as f64;
        let fresh_edges = series
            .classify_new_edges(t + 1)
            .expect("t+1 in range")
            .counts()
            .total();
        // node survival weights do not depend on the factor being solved for
        let node_weights: BTreeMap<NodeId, f64> = total
            .nodes()
            .filter(|(_, s)| s.first_presence().is_some_and(|f| f <= t))
            .map(|(v, s)| (v, ewma_presence(s, a_n, t)))
            .collect();
        let solved = invert_monotone(
            |a| predicted_edge_stability(&total, series, t, fresh_edges, a, &node_weights),
            observed,
        );
        match solved {
            Some(a) => {
                inverted += 1;
                values.push(a);
            }
            None => {
                fallbacks += 1;
                if snap_t.edge_count() > 0 {
                    values.push(stats::clamp(
                        inter as f64 / snap_t.edge_count() as f64,
                        FACTOR_FLOOR,
                        1.0,
                    ));
                }
            }
        }
    }
    Ok(finish_estimate(values, inverted, fallbacks, agg))
}

/// Clustering factor from the pooled prior-distance profile of new old-old
/// edges across every step.
pub fn estimate_p(series: &GraphSeries) -> Result<f64, EstimatorError> {
    if series.len() < 2 {
        return Err(EstimatorError::SeriesTooShort);
    }
    let mut pooled = DistanceBuckets::default();
    for t in 2..=series.len() {
        pooled.merge(&patterns::new_edge_distances(series, t)?);
    }
    let mean = pooled
        .mean_finite()
        .ok_or(EstimatorError::NoQualifyingEdges)?;
    Ok(patterns::clustering_factor_from_mean(mean))
}

/// Bundles the four estimators; the growth window defaults to three
/// transitions (shorter on short series).
pub fn estimate_all(series: &GraphSeries) -> Result<SeriesEstimates, EstimatorError> {
    let window = 3.min(series.len().saturating_sub(1)).max(1);
    estimate_all_with(series, window, Aggregation::Mean)
}

/// Bundled estimation with explicit window and aggregation.
pub fn estimate_all_with(
    series: &GraphSeries,
    window: usize,
    agg: Aggregation,
) -> Result<SeriesEstimates, EstimatorError> {
    let delta_n = estimate_delta_n(series, window)?;
    let a_n = estimate_a_n_with(series, agg)?;
    let a_e = estimate_a_e_given(series, a_n.value, agg)?;
    let p = match estimate_p(series) {
        Ok(p) => Some(p),
        Err(EstimatorError::NoQualifyingEdges) => None,
        Err(e) => return Err(e),
    };
    Ok(SeriesEstimates {
        window,
        delta_n,
        a_n,
        a_e,
        p,
    })
}

/// Presence weight of one element at step `t`: recent states dominate, each
/// earlier step scaled by another factor of `1 - a`.
pub(crate) fn ewma_presence(states: &StateSequence, a: f64, t: usize) -> f64 {
    let mut weight = a;
    let mut sum = 0.0;
    for i in (1..=t).rev() {
        if states.state(i) {
            sum += weight;
        }
        weight *= 1.0 - a;
    }
    sum
}

/// Expected Jaccard overlap of the node sets at `t` and `t + 1`, given every
/// element's history through `t` and the number of fresh nodes arriving.
fn predicted_node_stability(
    total: &TotalGraph,
    series: &GraphSeries,
    t: usize,
    fresh: usize,
    a: f64,
) -> f64 {
    let snap_t = series.snapshot(t).expect("t in range");
    let mut inside = 0.0; // expected survivors from V_t
    let mut outside = 0.0; // expected returns from earlier nodes
    for (v, states) in total.nodes() {
        if !states.first_presence().is_some_and(|f| f <= t) {
            continue;
        }
        let w = ewma_presence(states, a, t);
        if snap_t.contains_node(v) {
            inside += w;
        } else {
            outside += w;
        }
    }
    let denom = snap_t.node_count() as f64 + fresh as f64 + outside;
    if denom <= 0.0 {
        return 0.0;
    }
    inside / denom
}

/// Expected Jaccard overlap of the edge sets at `t` and `t + 1`; an edge
/// survives only if its own draw and both endpoint draws succeed.
fn predicted_edge_stability(
    total: &TotalGraph,
    series: &GraphSeries,
    t: usize,
    fresh_edges: usize,
    a_e: f64,
    node_weights: &BTreeMap<NodeId, f64>,
) -> f64 {
    let snap_t = series.snapshot(t).expect("t in range");
    let mut inside = 0.0;
    let mut outside = 0.0;
    for (e, states) in total.edges() {
        if !states.first_presence().is_some_and(|f| f <= t) {
            continue;
        }
        let (u, v) = e.endpoints();
        let keep = ewma_presence(states, a_e, t)
            * node_weights.get(&u).copied().unwrap_or(0.0)
            * node_weights.get(&v).copied().unwrap_or(0.0);
        if snap_t.has_edge(u, v) {
            inside += keep;
        } else {
            outside += keep;
        }
    }
    let denom = snap_t.edge_count() as f64 + fresh_edges as f64 + outside;
    if denom <= 0.0 {
        return 0.0;
    }
    inside / denom
}

/// Bisection against a monotone prediction. Targets at or beyond the
/// low-factor end clamp to the floor; targets beyond the prediction at
/// factor one mean no root exists and `None` asks for the fallback.
fn invert_monotone(f: impl Fn(f64) -> f64, target: f64) -> Option<f64> {
    let mut lo = FACTOR_FLOOR;
    let mut hi = 1.0;
    let f_lo = f(lo);
    let f_hi = f(hi);
    let rising = f_lo <= f_hi;
    // boundary roots: a target at the floor prediction clamps to the floor,
    // one exactly at the factor-one prediction is the factor-one root, and
    // anything beyond factor one has no root at all
    let (floor_side, one_side) = (f_lo, f_hi);
    if (rising && target <= floor_side) || (!rising && target >= floor_side) {
        return Some(lo);
    }
    if target == one_side {
        return Some(hi);
    }
    if (rising && target > one_side) || (!rising && target < one_side) {
        return None;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let val = f(mid);
        let go_right = if rising { val < target } else { val > target };
        if go_right {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(stats::clamp(0.5 * (lo + hi), FACTOR_FLOOR, 1.0))
}

fn finish_estimate(
    values: Vec<f64>,
    inverted: usize,
    fallbacks: usize,
    agg: Aggregation,
) -> StabilityEstimate {
    let value = if values.is_empty() {
        1.0
    } else {
        match agg {
            Aggregation::Mean => stats::mean(&values),
            Aggregation::Median => stats::median(&values),
        }
    };
    StabilityEstimate {
        value: stats::clamp(value, FACTOR_FLOOR, 1.0),
        inverted,
        fallbacks,
    }
}
