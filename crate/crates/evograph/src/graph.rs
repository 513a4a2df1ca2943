//! Undirected simple graph snapshots with the traversal and degree
//! primitives every other module builds on.
//!
//! Snapshots are mutated only while being constructed; afterwards they are
//! read-only and safe to share across threads.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use core::fmt;

use crate::error::GraphError;

/// Opaque node identifier, stable across snapshots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct NodeId(pub u64);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Undirected edge, stored with its endpoints in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Edge {
    a: NodeId,
    b: NodeId,
}

impl Edge {
    /// Builds an edge from two distinct endpoints, in either order.
    ///
    /// Panics on a self-loop; use [`Edge::try_new`] when the endpoints come
    /// from unchecked input.
    pub fn new(u: NodeId, v: NodeId) -> Self {
        Self::try_new(u, v).expect("self-loops are not allowed")
    }

    /// Fallible constructor, rejecting self-loops.
    pub fn try_new(u: NodeId, v: NodeId) -> Result<Self, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        Ok(Edge { a, b })
    }

    /// The endpoints in ascending order.
    pub fn endpoints(&self) -> (NodeId, NodeId) {
        (self.a, self.b)
    }

    /// Whether `v` is one of the endpoints.
    pub fn touches(&self, v: NodeId) -> bool {
        self.a == v || self.b == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// Hop distance from a breadth-first traversal; unreachable nodes carry an
/// explicit marker instead of a sentinel value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    /// Exact shortest hop count.
    Hops(u32),
    /// No path exists.
    Unreachable,
}

impl Distance {
    /// The hop count, if finite.
    pub fn hops(self) -> Option<u32> {
        match self {
            Distance::Hops(d) => Some(d),
            Distance::Unreachable => None,
        }
    }

    /// Whether a path exists.
    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Hops(_))
    }
}

/// One timestamped undirected simple graph.
///
/// Isolated nodes are first-class: a node may exist with no incident edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    time_index: usize,
    adj: BTreeMap<NodeId, BTreeSet<NodeId>>,
    edge_count: usize,
}

impl Snapshot {
    /// Empty snapshot at the given ordinal time index.
    pub fn new(time_index: usize) -> Self {
        Snapshot {
            time_index,
            adj: BTreeMap::new(),
            edge_count: 0,
        }
    }

    /// Snapshot position in its series.
    pub fn time_index(&self) -> usize {
        self.time_index
    }

    /// Inserts a node; returns whether it was new.
    pub fn add_node(&mut self, v: NodeId) -> bool {
        let new = !self.adj.contains_key(&v);
        self.adj.entry(v).or_default();
        new
    }

    /// Inserts an undirected edge, adding missing endpoints.
    ///
    /// Returns whether the edge was new. Panics on a self-loop.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> bool {
        assert!(u != v, "self-loops are not allowed");
        let inserted = self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
        if inserted {
            self.edge_count += 1;
        }
        inserted
    }

    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Whether the snapshot has no nodes.
    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Whether `v` is a node of this snapshot.
    pub fn contains_node(&self, v: NodeId) -> bool {
        self.adj.contains_key(&v)
    }

    /// Whether the edge `{u, v}` exists.
    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    /// Nodes in ascending identifier order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.adj.keys().copied()
    }

    /// Edges in ascending `(min, max)` order, each reported once.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().flat_map(|(&u, nbrs)| {
            nbrs.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| Edge::new(u, v))
        })
    }

    /// Neighbors of `v` in ascending order; empty if `v` is unknown.
    pub fn neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    /// Number of distinct neighbors of `v`.
    pub fn degree(&self, v: NodeId) -> Result<usize, GraphError> {
        self.adj
            .get(&v)
            .map(BTreeSet::len)
            .ok_or(GraphError::UnknownNode(v))
    }

    /// Exact shortest hop counts from `src` to every node of the snapshot.
    ///
    /// The source maps to zero hops; nodes in other components map to
    /// [`Distance::Unreachable`].
    pub fn bfs_distances(&self, src: NodeId) -> Result<BTreeMap<NodeId, Distance>, GraphError> {
        if !self.contains_node(src) {
            return Err(GraphError::UnknownNode(src));
        }
        let mut dist: BTreeMap<NodeId, Distance> = self
            .adj
            .keys()
            .map(|&v| (v, Distance::Unreachable))
            .collect();
        dist.insert(src, Distance::Hops(0));
        let mut queue = VecDeque::new();
        queue.push_back((src, 0u32));
        while let Some((v, d)) = queue.pop_front() {
            for w in self.neighbors(v) {
                if let Some(slot @ Distance::Unreachable) = dist.get_mut(&w) {
                    *slot = Distance::Hops(d + 1);
                    queue.push_back((w, d + 1));
                }
            }
        }
        Ok(dist)
    }
}
