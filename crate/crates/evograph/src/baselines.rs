//! Reference generators for comparison experiments: preferential attachment
//! and its local-events extension with edge additions and rewiring.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::BaselineError;
use crate::graph::{NodeId, Snapshot};

/// Inputs for plain preferential-attachment growth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BaConfig {
    /// Final node count.
    pub n: usize,
    /// Edges per arriving node.
    pub m: usize,
    /// Seed clique size.
    pub m0: usize,
    /// Generator seed.
    pub seed: u64,
}

impl BaConfig {
    fn validate(&self) -> Result<(), BaselineError> {
        if self.m < 1 || self.m > self.m0 || self.m0 >= self.n {
            return Err(BaselineError::InvalidConfig("need 1 <= m <= m0 < n"));
        }
        Ok(())
    }
}

/// Inputs for the local-events variant.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EbaConfig {
    /// Final node count.
    pub n: usize,
    /// Edges per event.
    pub m: usize,
    /// Seed clique size.
    pub m0: usize,
    /// Probability of an edge-addition event.
    pub p_add: f64,
    /// Probability of a rewiring event.
    pub q_rewire: f64,
    /// Generator seed.
    pub seed: u64,
}

impl EbaConfig {
    fn validate(&self) -> Result<(), BaselineError> {
        BaConfig {
            n: self.n,
            m: self.m,
            m0: self.m0,
            seed: self.seed,
        }
        .validate()?;
        if self.p_add < 0.0 || self.q_rewire < 0.0 || self.p_add + self.q_rewire >= 1.0 {
            return Err(BaselineError::InvalidConfig(
                "need p_add, q_rewire >= 0 with p_add + q_rewire < 1",
            ));
        }
        Ok(())
    }
}

const EVENT_RETRIES: usize = 200;

/// Grows a graph by preferential attachment from a seed clique: each
/// arriving node wires `m` edges to distinct targets chosen proportionally
/// to degree. The edge count is exactly `m0(m0-1)/2 + m(n - m0)`.
pub fn generate_ba(config: &BaConfig) -> Result<Snapshot, BaselineError> {
    config.validate()?;
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let mut g = Snapshot::new(1);
    // one list entry per edge endpoint makes uniform picks degree-weighted
    let mut endpoints: Vec<NodeId> = Vec::with_capacity(2 * config.m * config.n);
    for v in 0..config.m0 as u64 {
        g.add_node(NodeId(v));
        for u in 0..v {
            g.add_edge(NodeId(u), NodeId(v));
            endpoints.push(NodeId(u));
            endpoints.push(NodeId(v));
        }
    }
    for v in config.m0 as u64..config.n as u64 {
        let arriving = NodeId(v);
        let mut targets: BTreeSet<NodeId> = BTreeSet::new();
        let mut attempts = 0usize;
        while targets.len() < config.m {
            let candidate = if endpoints.is_empty() {
                NodeId(rng.gen_range(0..v))
            } else {
                endpoints[rng.gen_range(0..endpoints.len())]
            };
            if targets.contains(&candidate) {
                attempts += 1;
                if attempts > EVENT_RETRIES {
                    // deterministic completion on pathological repeats
                    for u in 0..v {
                        if targets.len() == config.m {
                            break;
                        }
                        targets.insert(NodeId(u));
                    }
                    break;
                }
                continue;
            }
            targets.insert(candidate);
        }
        g.add_node(arriving);
        for t in targets {
            g.add_edge(arriving, t);
            endpoints.push(arriving);
            endpoints.push(t);
        }
    }
    Ok(g)
}

/// Grows a graph by local events: with probability `p_add` add `m` edges
/// (uniform source, degree-plus-one weighted target), with `q_rewire`
/// rewire `m` edges of a random connected node to fresh degree-weighted
/// targets, otherwise add a node with `m` preferential edges. Events repeat
/// until the node count reaches `n`.
pub fn generate_eba(config: &EbaConfig) -> Result<Snapshot, BaselineError> {
    config.validate()?;
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let mut g = Snapshot::new(1);
    let mut endpoints: Vec<NodeId> = Vec::new();
    let mut nodes: Vec<NodeId> = Vec::new();
    for v in 0..config.m0 as u64 {
        g.add_node(NodeId(v));
        nodes.push(NodeId(v));
        for u in 0..v {
            g.add_edge(NodeId(u), NodeId(v));
            endpoints.push(NodeId(u));
            endpoints.push(NodeId(v));
        }
    }
    let mut next_id = config.m0 as u64;
    while g.node_count() < config.n {
        let event: f64 = rng.gen();
        if event < config.p_add {
            for _ in 0..config.m {
                add_preferential_edge(&mut g, &mut endpoints, &nodes, &mut rng);
            }
        } else if event < config.p_add + config.q_rewire {
            for _ in 0..config.m {
                rewire_one(&mut g, &mut endpoints, &nodes, &mut rng);
            }
        } else {
            let arriving = NodeId(next_id);
            next_id += 1;
            let mut targets: BTreeSet<NodeId> = BTreeSet::new();
            let mut attempts = 0usize;
            while targets.len() < config.m && attempts < EVENT_RETRIES {
                let candidate = pick_degree_plus_one(&endpoints, &nodes, &mut rng);
                if !targets.insert(candidate) {
                    attempts += 1;
                }
            }
            g.add_node(arriving);
            nodes.push(arriving);
            for t in targets {
                g.add_edge(arriving, t);
                endpoints.push(arriving);
                endpoints.push(t);
            }
        }
    }
    Ok(g)
}

/// Degree-plus-one weighted pick: choose an edge endpoint with probability
/// `2E / (2E + V)` (degree-proportional), otherwise a uniform node.
fn pick_degree_plus_one(endpoints: &[NodeId], nodes: &[NodeId], rng: &mut impl Rng) -> NodeId {
    let total = endpoints.len() + nodes.len();
    let roll = rng.gen_range(0..total);
    if roll < endpoints.len() {
        endpoints[roll]
    } else {
        nodes[roll - endpoints.len()]
    }
}

fn add_preferential_edge(
    g: &mut Snapshot,
    endpoints: &mut Vec<NodeId>,
    nodes: &[NodeId],
    rng: &mut impl Rng,
) {
    for _ in 0..EVENT_RETRIES {
        let source = nodes[rng.gen_range(0..nodes.len())];
        let target = pick_degree_plus_one(endpoints, nodes, rng);
        if source == target || g.has_edge(source, target) {
            continue;
        }
        g.add_edge(source, target);
        endpoints.push(source);
        endpoints.push(target);
        return;
    }
    // graph locally saturated; skip the event
}

fn rewire_one(
    g: &mut Snapshot,
    endpoints: &mut Vec<NodeId>,
    nodes: &[NodeId],
    rng: &mut impl Rng,
) {
    for _ in 0..EVENT_RETRIES {
        let pivot = nodes[rng.gen_range(0..nodes.len())];
        let neighbors: Vec<NodeId> = g.neighbors(pivot).collect();
        if neighbors.is_empty() {
            continue;
        }
        let detach = neighbors[rng.gen_range(0..neighbors.len())];
        let fresh = pick_degree_plus_one(endpoints, nodes, rng);
        if fresh == pivot || fresh == detach || g.has_edge(pivot, fresh) {
            continue;
        }
        remove_edge(g, endpoints, pivot, detach);
        g.add_edge(pivot, fresh);
        endpoints.push(pivot);
        endpoints.push(fresh);
        return;
    }
}

/// Rebuilds the snapshot without one edge; edge removal is rare enough here
/// that the linear rebuild of the endpoint list is fine.
fn remove_edge(g: &mut Snapshot, endpoints: &mut Vec<NodeId>, u: NodeId, v: NodeId) {
    let mut rebuilt = Snapshot::new(g.time_index());
    for w in g.nodes() {
        rebuilt.add_node(w);
    }
    for e in g.edges() {
        let (a, b) = e.endpoints();
        if (a, b) != (u.min(v), u.max(v)) {
            rebuilt.add_edge(a, b);
        }
    }
    *g = rebuilt;
    // drop one occurrence of each endpoint
    if let Some(pos) = endpoints.iter().rposition(|&x| x == u) {
        endpoints.swap_remove(pos);
    }
    if let Some(pos) = endpoints.iter().rposition(|&x| x == v) {
        endpoints.swap_remove(pos);
    }
}
