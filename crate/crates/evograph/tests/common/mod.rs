//! Shared oracles for the integration suites, independent of the library's
//! own traversal code.

#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;

use evograph::{NodeId, Snapshot};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// All-pairs shortest hop counts by Floyd-Warshall over an index-dense
/// adjacency matrix; `None` marks disconnected pairs.
pub fn floyd_warshall(g: &Snapshot) -> (Vec<NodeId>, Vec<Vec<Option<u64>>>) {
    let nodes: Vec<NodeId> = g.nodes().collect();
    let index: BTreeMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = nodes.len();
    let mut dist: Vec<Vec<Option<u64>>> = vec![vec![None; n]; n];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = Some(0);
    }
    for e in g.edges() {
        let (u, v) = e.endpoints();
        let (i, j) = (index[&u], index[&v]);
        dist[i][j] = Some(1);
        dist[j][i] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = dist[i][k] else { continue };
            for j in 0..n {
                let Some(kj) = dist[k][j] else { continue };
                let through = ik + kj;
                if dist[i][j].is_none_or(|d| through < d) {
                    dist[i][j] = Some(through);
                }
            }
        }
    }
    (nodes, dist)
}

/// Seeded random simple graph on `n` nodes with edge probability `p`.
pub fn random_graph(n: u64, p: f64, seed: u64) -> Snapshot {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut g = Snapshot::new(1);
    for v in 0..n {
        g.add_node(NodeId(v));
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                g.add_edge(NodeId(u), NodeId(v));
            }
        }
    }
    g
}
