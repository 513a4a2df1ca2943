//! Time-series container, total-graph construction with per-element state
//! sequences, and new/old classification of nodes and edges.
//!
//! The total graph at time `i` is the union of the first `i` snapshots. Every
//! node and edge of the union carries a presence bit per time step, plus a
//! conventional leading zero at position 0, so that the generator can weight
//! each element's history.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::SeriesError;
use crate::graph::{Edge, NodeId, Snapshot};

/// Presence history `s_0..s_i` of one node or edge; `s_0` is always absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSequence {
    states: Vec<bool>,
}

impl StateSequence {
    /// Fresh history holding only the conventional `s_0 = 0`.
    pub fn new() -> Self {
        StateSequence {
            states: alloc::vec![false],
        }
    }

    /// Appends the presence bit for the next time step.
    pub fn push(&mut self, present: bool) {
        self.states.push(present);
    }

    /// Number of stored states including `s_0`.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    /// Always false: a sequence holds at least `s_0`.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Presence bit at step `i`; out-of-range reads as absent.
    pub fn state(&self, i: usize) -> bool {
        self.states.get(i).copied().unwrap_or(false)
    }

    /// First step with a presence bit set, if any.
    pub fn first_presence(&self) -> Option<usize> {
        self.states.iter().position(|&s| s)
    }

    /// Last stored step index (`len - 1`).
    pub fn last_index(&self) -> usize {
        self.states.len() - 1
    }

    /// Copy of the first `i + 1` states (`s_0..s_i`), padded with absence if
    /// the sequence is shorter.
    pub fn truncated(&self, i: usize) -> StateSequence {
        let mut states: Vec<bool> = self.states.iter().copied().take(i + 1).collect();
        states.resize(i + 1, false);
        StateSequence { states }
    }
}

impl Default for StateSequence {
    fn default() -> Self {
        Self::new()
    }
}

/// Ordered series of snapshots indexed `1..=n`.
#[derive(Debug, Clone)]
pub struct GraphSeries {
    snaps: Vec<Snapshot>,
}

impl GraphSeries {
    /// Builds a series, checking it is nonempty with strictly increasing
    /// time indices.
    pub fn new(snaps: Vec<Snapshot>) -> Result<Self, SeriesError> {
        if snaps.is_empty() {
            return Err(SeriesError::Empty);
        }
        if snaps.windows(2).any(|w| w[1].time_index() <= w[0].time_index()) {
            return Err(SeriesError::NonIncreasingTime);
        }
        Ok(GraphSeries { snaps })
    }

    /// Number of snapshots.
    pub fn len(&self) -> usize {
        self.snaps.len()
    }

    /// Always false: construction rejects empty series.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Snapshot at 1-based time index `t`.
    pub fn snapshot(&self, t: usize) -> Result<&Snapshot, SeriesError> {
        if t == 0 || t > self.snaps.len() {
            return Err(SeriesError::IndexOutOfRange {
                index: t,
                len: self.snaps.len(),
            });
        }
        Ok(&self.snaps[t - 1])
    }

    /// Most recent snapshot.
    pub fn last(&self) -> &Snapshot {
        self.snaps.last().expect("series is nonempty")
    }

    /// All snapshots in order.
    pub fn snapshots(&self) -> &[Snapshot] {
        &self.snaps
    }

    /// Appends a snapshot, which must continue the increasing time order.
    pub fn push(&mut self, snap: Snapshot) -> Result<(), SeriesError> {
        if snap.time_index() <= self.last().time_index() {
            return Err(SeriesError::NonIncreasingTime);
        }
        self.snaps.push(snap);
        Ok(())
    }

    /// Nodes first appearing at time `t`: members of the union through `t`
    /// absent from the union through `t - 1`.
    pub fn new_nodes_at(&self, t: usize) -> Result<BTreeSet<NodeId>, SeriesError> {
        self.check_index(t)?;
        let mut seen = BTreeSet::new();
        for snap in &self.snaps[..t - 1] {
            seen.extend(snap.nodes());
        }
        Ok(self.snaps[t - 1]
            .nodes()
            .filter(|v| !seen.contains(v))
            .collect())
    }

    /// Old nodes at time `t`: the complement of the new nodes within the
    /// union through `t`, i.e. everything already seen before `t`.
    pub fn old_nodes_at(&self, t: usize) -> Result<BTreeSet<NodeId>, SeriesError> {
        self.check_index(t)?;
        let mut seen = BTreeSet::new();
        for snap in &self.snaps[..t - 1] {
            seen.extend(snap.nodes());
        }
        Ok(seen)
    }

    /// Splits the edges first appearing at time `t` by the classes of their
    /// endpoints at `t`.
    pub fn classify_new_edges(&self, t: usize) -> Result<EdgeClassification, SeriesError> {
        self.check_index(t)?;
        let mut seen_edges: BTreeSet<Edge> = BTreeSet::new();
        for snap in &self.snaps[..t - 1] {
            seen_edges.extend(snap.edges());
        }
        let new_nodes = self.new_nodes_at(t)?;
        let mut classes = EdgeClassification::default();
        for e in self.snaps[t - 1].edges() {
            if seen_edges.contains(&e) {
                continue;
            }
            let (u, v) = e.endpoints();
            match (new_nodes.contains(&u), new_nodes.contains(&v)) {
                (true, true) => {
                    classes.new_new.insert(e);
                }
                (false, false) => {
                    classes.old_old.insert(e);
                }
                _ => {
                    classes.new_old.insert(e);
                }
            }
        }
        Ok(classes)
    }

    /// Degree of `v` in the snapshot where it first appears.
    pub fn initial_degree(&self, v: NodeId) -> Result<usize, SeriesError> {
        for snap in &self.snaps {
            if snap.contains_node(v) {
                return Ok(snap.degree(v).expect("membership just checked"));
            }
        }
        Err(SeriesError::UnknownNode(v))
    }

    fn check_index(&self, t: usize) -> Result<(), SeriesError> {
        if t == 0 || t > self.snaps.len() {
            return Err(SeriesError::IndexOutOfRange {
                index: t,
                len: self.snaps.len(),
            });
        }
        Ok(())
    }
}

/// Counts of first-appearance edges at one step, by endpoint class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EdgeClassCounts {
    /// Both endpoints first appear at this step.
    pub new_new: usize,
    /// Exactly one endpoint first appears at this step.
    pub new_old: usize,
    /// Both endpoints were seen before this step.
    pub old_old: usize,
}

impl EdgeClassCounts {
    /// Total number of new edges at the step.
    pub fn total(&self) -> usize {
        self.new_new + self.new_old + self.old_old
    }
}

/// New edges of one step, split by endpoint class.
#[derive(Debug, Clone, Default)]
pub struct EdgeClassification {
    /// Edges between two new nodes.
    pub new_new: BTreeSet<Edge>,
    /// Edges between a new and an old node.
    pub new_old: BTreeSet<Edge>,
    /// Edges between two old nodes.
    pub old_old: BTreeSet<Edge>,
}

impl EdgeClassification {
    /// Per-class counts.
    pub fn counts(&self) -> EdgeClassCounts {
        EdgeClassCounts {
            new_new: self.new_new.len(),
            new_old: self.new_old.len(),
            old_old: self.old_old.len(),
        }
    }
}

/// Union of the snapshots through `up_to`, with one presence history per
/// element.
#[derive(Debug, Clone)]
pub struct TotalGraph {
    nodes: BTreeMap<NodeId, StateSequence>,
    edges: BTreeMap<Edge, StateSequence>,
    up_to: usize,
}

impl TotalGraph {
    /// Unions all snapshots of the series and records each element's
    /// per-step presence.
    pub fn from_series(series: &GraphSeries) -> Self {
        let n = series.len();
        let mut nodes: BTreeMap<NodeId, StateSequence> = BTreeMap::new();
        let mut edges: BTreeMap<Edge, StateSequence> = BTreeMap::new();
        for (step, snap) in series.snapshots().iter().enumerate() {
            let step = step + 1;
            for v in snap.nodes() {
                let seq = nodes.entry(v).or_default();
                backfill(seq, step);
                seq.push(true);
            }
            for e in snap.edges() {
                let seq = edges.entry(e).or_default();
                backfill(seq, step);
                seq.push(true);
            }
        }
        for seq in nodes.values_mut().chain(edges.values_mut()) {
            while seq.last_index() < n {
                seq.push(false);
            }
        }
        TotalGraph { nodes, edges, up_to: n }
    }

    /// Index of the last unioned snapshot.
    pub fn up_to(&self) -> usize {
        self.up_to
    }

    /// Number of nodes in the union.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Number of edges in the union.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Nodes with their presence histories, in ascending identifier order.
    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &StateSequence)> + '_ {
        self.nodes.iter().map(|(&v, s)| (v, s))
    }

    /// Edges with their presence histories, in ascending endpoint order.
    pub fn edges(&self) -> impl Iterator<Item = (Edge, &StateSequence)> + '_ {
        self.edges.iter().map(|(&e, s)| (e, s))
    }

    /// Presence history of one node.
    pub fn node_states(&self, v: NodeId) -> Option<&StateSequence> {
        self.nodes.get(&v)
    }

    /// Presence history of one edge.
    pub fn edge_states(&self, e: Edge) -> Option<&StateSequence> {
        self.edges.get(&e)
    }

    /// Step at which a node first appeared.
    pub fn node_first_presence(&self, v: NodeId) -> Option<usize> {
        self.nodes.get(&v).and_then(StateSequence::first_presence)
    }

    /// Largest node identifier ever seen.
    pub fn max_node_id(&self) -> Option<NodeId> {
        self.nodes.keys().next_back().copied()
    }

    /// Number of nodes in the union through step `i`.
    pub fn node_count_through(&self, i: usize) -> usize {
        self.nodes
            .values()
            .filter(|s| s.first_presence().is_some_and(|f| f <= i))
            .count()
    }

    /// Number of edges in the union through step `i`.
    pub fn edge_count_through(&self, i: usize) -> usize {
        self.edges
            .values()
            .filter(|s| s.first_presence().is_some_and(|f| f <= i))
            .count()
    }

    /// Total graph of the first `i` snapshots, with histories truncated.
    pub fn prefix(&self, i: usize) -> TotalGraph {
        let keep_nodes = self
            .nodes
            .iter()
            .filter(|(_, s)| s.first_presence().is_some_and(|f| f <= i))
            .map(|(&v, s)| (v, s.truncated(i)))
            .collect();
        let keep_edges = self
            .edges
            .iter()
            .filter(|(_, s)| s.first_presence().is_some_and(|f| f <= i))
            .map(|(&e, s)| (e, s.truncated(i)))
            .collect();
        TotalGraph {
            nodes: keep_nodes,
            edges: keep_edges,
            up_to: i,
        }
    }
}

fn backfill(seq: &mut StateSequence, step: usize) {
    while seq.last_index() < step - 1 {
        seq.push(false);
    }
}

/// Intersection and union sizes of the node sets of two snapshots.
pub fn node_overlap(a: &Snapshot, b: &Snapshot) -> (usize, usize) {
    let inter = a.nodes().filter(|v| b.contains_node(*v)).count();
    (inter, a.node_count() + b.node_count() - inter)
}

/// Intersection and union sizes of the edge sets of two snapshots.
pub fn edge_overlap(a: &Snapshot, b: &Snapshot) -> (usize, usize) {
    let inter = a
        .edges()
        .filter(|e| {
            let (u, v) = e.endpoints();
            b.has_edge(u, v)
        })
        .count();
    (inter, a.edge_count() + b.edge_count() - inter)
}
