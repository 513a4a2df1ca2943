//! Deterministic synthetic series with known ground-truth parameters, for
//! round-trip estimation tests and the Monte Carlo validation base.
//!
//! The first snapshot is a preferential-attachment seed graph. The second is
//! a hand-grown bootstrap step: it keeps everything, plants an
//! initial-degree distribution for the arriving nodes, and tops the edge
//! count up to a planted growth law so the series starts on a well-defined
//! super-linear curve with old-old edges drawn by the same distance-guided
//! rule the model uses. Every later snapshot comes from the model itself.

use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::baselines::{generate_ba, BaConfig};
use crate::error::GeneratorError;
use crate::estimator::ModelParams;
use crate::generator::{generate_series, GeneratorConfig, WorkGraph};
use crate::graph::{NodeId, Snapshot};
use crate::math;
use crate::series::GraphSeries;

/// Full fixture recipe; [`synth_fixture`] fills in the defaults.
#[derive(Debug, Clone)]
pub struct SynthConfig {
    /// Ground-truth model parameters.
    pub params: ModelParams,
    /// Node count of the seed graph.
    pub seed_graph_size: usize,
    /// Edges per arriving node in the seed graph.
    pub seed_graph_m: usize,
    /// Planted growth exponent of the bootstrap steps.
    pub growth_exponent: f64,
    /// Planted initial-degree distribution for bootstrap arrivals.
    pub initial_degrees: Vec<(usize, f64)>,
    /// Hand-grown bootstrap steps after the seed graph, each adding
    /// `delta_n` arrivals and topping the edge count up to the planted
    /// curve. Capped at `steps - 1`.
    pub planted_steps: usize,
    /// Total series length, at least two.
    pub steps: usize,
    /// Master seed.
    pub seed: u64,
}

impl SynthConfig {
    /// Defaults: seed graph with two edges per arrival, growth exponent 1.3,
    /// one bootstrap step, and a strictly decreasing four-degree arrival
    /// distribution.
    pub fn new(params: ModelParams, seed_graph_size: usize, steps: usize, seed: u64) -> Self {
        SynthConfig {
            params,
            seed_graph_size,
            seed_graph_m: 2,
            growth_exponent: 1.3,
            initial_degrees: alloc::vec![(1, 0.6), (2, 0.25), (3, 0.1), (4, 0.05)],
            planted_steps: 1,
            steps,
            seed,
        }
    }
}

/// Deterministic fixture series with the default recipe.
pub fn synth_fixture(
    params: ModelParams,
    seed_graph_size: usize,
    steps: usize,
    seed: u64,
) -> Result<GraphSeries, GeneratorError> {
    synth_fixture_with(&SynthConfig::new(params, seed_graph_size, steps, seed))
}

/// Deterministic fixture series: seed graph, planted bootstrap step, then
/// model-generated snapshots up to the requested length.
pub fn synth_fixture_with(config: &SynthConfig) -> Result<GraphSeries, GeneratorError> {
    config.params.validate()?;
    if config.params.delta_n == 0 {
        return Err(GeneratorError::InvalidParams("delta_n must be at least 1"));
    }
    if config.steps < 2 {
        return Err(GeneratorError::InvalidParams("fixture needs at least two steps"));
    }
    if config.seed_graph_size <= config.seed_graph_m + 1 {
        return Err(GeneratorError::InvalidParams("seed graph too small"));
    }
    if config.planted_steps == 0 {
        return Err(GeneratorError::InvalidParams("need at least one planted step"));
    }
    let seed_graph = generate_ba(&BaConfig {
        n: config.seed_graph_size,
        m: config.seed_graph_m,
        m0: config.seed_graph_m,
        seed: config.seed,
    })
    .map_err(|_| GeneratorError::InvalidParams("seed graph configuration"))?;

    // the planted curve is anchored at the seed graph
    let curve_coefficient = seed_graph.edge_count() as f64
        / math::powf(seed_graph.node_count() as f64, config.growth_exponent);
    let planted = config.planted_steps.min(config.steps - 1);
    let mut series =
        GraphSeries::new(alloc::vec![seed_graph]).expect("one snapshot");
    for step in 0..planted {
        let next = grow_bootstrap(series.last(), curve_coefficient, config, step as u64 + 1)?;
        series.push(next).expect("time indices increase");
    }

    if config.steps > series.len() {
        let gen_config = GeneratorConfig {
            params: config.params,
            // decorrelated from the seed-graph and bootstrap streams
            seed: config.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(2),
            steps: config.steps - series.len(),
            alpha_factor: false,
        };
        for snap in generate_series(&series, &gen_config)? {
            series.push(snap).expect("time indices increase");
        }
    }
    Ok(series)
}

/// Hand-grown snapshot: keep the whole previous snapshot, add the arrivals
/// with planted degrees and preferential targets, then add old-old edges by
/// distance-guided attachment until the planted growth law is met.
fn grow_bootstrap(
    prev: &Snapshot,
    curve_coefficient: f64,
    config: &SynthConfig,
    stream: u64,
) -> Result<Snapshot, GeneratorError> {
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    rng.set_stream(stream);
    let mut work = WorkGraph::from_snapshot(prev);
    let old_count = work.len() as u32;
    let next_id = prev.nodes().max().map_or(0, |v| v.0 + 1);
    let mut edges = prev.edge_count();

    for off in 0..config.params.delta_n as u64 {
        let degree = draw_planted_degree(&config.initial_degrees, &mut rng);
        let arriving = work.push_node(NodeId(next_id + off));
        let mut wired = 0usize;
        let mut guard = 0usize;
        while wired < degree {
            let target = pick_preferential(&work, old_count, &mut rng);
            if work.has_edge(arriving, target) {
                guard += 1;
                if guard > 100 * old_count as usize {
                    return Err(GeneratorError::RejectionBudgetExhausted {
                        budget: 100 * old_count as usize,
                    });
                }
                continue;
            }
            work.add_edge(arriving, target);
            edges += 1;
            wired += 1;
        }
    }

    // top the edge count up to the planted growth curve
    let target_edges = math::round(
        curve_coefficient * math::powf(work.len() as f64, config.growth_exponent),
    ) as usize;
    let mut budget = 100 * work.len();
    while edges < target_edges {
        let source = rng.gen_range(0..old_count);
        let target = work.attach(source, config.params.p, &mut rng)?;
        if target >= old_count {
            if budget == 0 {
                return Err(GeneratorError::RejectionBudgetExhausted {
                    budget: 100 * work.len(),
                });
            }
            budget -= 1;
            continue;
        }
        work.add_edge(source, target);
        edges += 1;
    }
    Ok(work.into_snapshot(prev.time_index() + 1))
}

fn draw_planted_degree(mass: &[(usize, f64)], rng: &mut impl Rng) -> usize {
    let total: f64 = mass.iter().map(|&(_, m)| m).sum();
    let mut roll = rng.gen::<f64>() * total;
    for &(k, m) in mass {
        if roll < m {
            return k;
        }
        roll -= m;
    }
    mass.last().map_or(1, |&(k, _)| k)
}

/// Degree-plus-one weighted pick over the first `limit` node positions.
fn pick_preferential(work: &WorkGraph, limit: u32, rng: &mut impl Rng) -> u32 {
    let total: u64 = (0..limit).map(|i| work.degree_of(i) as u64 + 1).sum();
    let mut roll = rng.gen_range(0..total);
    for i in 0..limit {
        let w = work.degree_of(i) as u64 + 1;
        if roll < w {
            return i;
        }
        roll -= w;
    }
    limit - 1
}
