//! Seeded random temporal graphs for tests and the self-test command.

use rand::seq::index::sample;
use rand::Rng;

use crate::graph::{TemporalEdge, TemporalGraph, Timestep};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomGraphParams {
    pub n: usize,
    pub directed: bool,
    /// Labels are drawn from `1..=tau`, or `0..=tau` with `allow_zero`.
    pub tau: Timestep,
    pub edge_probability: f64,
    /// Each edge receives between 1 and this many distinct labels.
    pub max_labels: usize,
    pub allow_zero: bool,
}

impl RandomGraphParams {
    pub fn new(n: usize, directed: bool, tau: Timestep) -> Self {
        RandomGraphParams { n, directed, tau, edge_probability: 0.4, max_labels: 2, allow_zero: false }
    }
}

/// Every pair (ordered when directed) becomes an edge independently.
pub fn random_temporal_graph(p: &RandomGraphParams, rng: &mut impl Rng) -> TemporalGraph {
    let low: Timestep = if p.allow_zero { 0 } else { 1 };
    let span = (p.tau + 1 - low.min(p.tau + 1)) as usize;
    let mut edges = Vec::new();
    if span > 0 {
        for u in 0..p.n {
            for v in 0..p.n {
                if u == v || (!p.directed && v < u) || !rng.gen_bool(p.edge_probability) {
                    continue;
                }
                let count = rng.gen_range(1..=p.max_labels.clamp(1, span));
                let mut labels: Vec<Timestep> =
                    sample(rng, span, count).into_iter().map(|i| low + i as Timestep).collect();
                labels.sort_unstable();
                edges.push(TemporalEdge::new(u, v, labels));
            }
        }
    }
    TemporalGraph::new(p.directed, p.n, edges).expect("generated edges are valid")
}
