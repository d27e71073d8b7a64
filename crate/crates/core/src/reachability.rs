//! Temporal walks, single-source reachability sweeps and the reachability
//! digraph.
//!
//! A sweep processes the active timesteps in ascending order. Under the
//! non-strict model each timestep expands the reached set by everything
//! reachable inside that snapshot (a multi-source BFS over `G_i`), which is
//! the recursion `𝓡_i(u) = ∪_{v ∈ 𝓡_{i-1}(u)} R_i(v)`. Under the strict
//! model a walk uses at most one edge per timestep, so the expansion is the
//! one-hop out-neighbourhood of the set reached before `i`.

use std::collections::VecDeque;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{GraphError, Model, StaticGraph, TemporalGraph, Timestep, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReachError {
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `v_0, t_1, v_1, ..., t_q, v_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalWalk {
    pub start: Vertex,
    pub steps: Vec<(Timestep, Vertex)>,
}

impl TemporalWalk {
    pub fn new(start: Vertex, steps: Vec<(Timestep, Vertex)>) -> Self {
        TemporalWalk { start, steps }
    }

    pub fn end(&self) -> Vertex {
        self.steps.last().map_or(self.start, |&(_, v)| v)
    }
}

/// Why a sequence is not a temporal walk. `step` is the 1-based index of
/// the offending step (0 for the start vertex).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkViolation {
    #[error("step {step}: vertex out of range")]
    VertexOutOfRange { step: usize },
    #[error("step {step}: no such edge")]
    MissingEdge { step: usize },
    #[error("step {step}: edge not available at time {time}")]
    LabelUnavailable { step: usize, time: Timestep },
    #[error("step {step}: timestep order violates the model")]
    TimeOrder { step: usize },
}

pub fn check_temporal_walk(g: &TemporalGraph, walk: &TemporalWalk, model: Model) -> Result<(), WalkViolation> {
    if walk.start >= g.vertex_count() {
        return Err(WalkViolation::VertexOutOfRange { step: 0 });
    }
    let mut prev_vertex = walk.start;
    let mut prev_time: Option<Timestep> = None;
    for (i, &(t, v)) in walk.steps.iter().enumerate() {
        let step = i + 1;
        if v >= g.vertex_count() {
            return Err(WalkViolation::VertexOutOfRange { step });
        }
        let labels = g.labels(prev_vertex, v).ok_or(WalkViolation::MissingEdge { step })?;
        if labels.binary_search(&t).is_err() {
            return Err(WalkViolation::LabelUnavailable { step, time: t });
        }
        if let Some(p) = prev_time {
            let ordered = match model {
                Model::Strict => p < t,
                Model::NonStrict => p <= t,
            };
            if !ordered {
                return Err(WalkViolation::TimeOrder { step });
            }
        }
        prev_vertex = v;
        prev_time = Some(t);
    }
    Ok(())
}

pub fn is_temporal_walk(g: &TemporalGraph, walk: &TemporalWalk, model: Model) -> bool {
    check_temporal_walk(g, walk, model).is_ok()
}

/// Reusable single-source sweep state. An optional mask restricts walks to
/// the masked vertices (the induced temporal subgraph).
pub(crate) struct Sweep<'g> {
    g: &'g TemporalGraph,
    model: Model,
    reached: Vec<bool>,
    order: Vec<Vertex>,
    queue: VecDeque<Vertex>,
    fresh: Vec<Vertex>,
}

impl<'g> Sweep<'g> {
    pub(crate) fn new(g: &'g TemporalGraph, model: Model) -> Self {
        Sweep {
            g,
            model,
            reached: vec![false; g.vertex_count()],
            order: Vec::new(),
            queue: VecDeque::new(),
            fresh: Vec::new(),
        }
    }

    /// Runs from `source`; `on_layer` observes the reached set after each
    /// active timestep. Returns the final reached flags.
    pub(crate) fn run_with(
        &mut self,
        source: Vertex,
        mask: Option<&[bool]>,
        mut on_layer: impl FnMut(Timestep, &[Vertex]),
    ) -> &[bool] {
        for &v in &self.order {
            self.reached[v] = false;
        }
        self.order.clear();
        self.reached[source] = true;
        self.order.push(source);
        let allowed = |v: Vertex| mask.is_none_or(|m| m[v]);

        for layer in self.g.layers() {
            match self.model {
                Model::NonStrict => {
                    self.queue.clear();
                    self.queue.extend(layer.tails.iter().copied().filter(|&t| self.reached[t]));
                    while let Some(w) = self.queue.pop_front() {
                        for x in layer.successors(w) {
                            if !self.reached[x] && allowed(x) {
                                self.reached[x] = true;
                                self.order.push(x);
                                self.queue.push_back(x);
                            }
                        }
                    }
                }
                Model::Strict => {
                    self.fresh.clear();
                    for &(w, x) in &layer.arcs {
                        if self.reached[w] && !self.reached[x] && allowed(x) {
                            self.fresh.push(x);
                        }
                    }
                    for &x in &self.fresh {
                        if !self.reached[x] {
                            self.reached[x] = true;
                            self.order.push(x);
                        }
                    }
                }
            }
            on_layer(layer.time, &self.order);
        }
        &self.reached
    }

    pub(crate) fn run(&mut self, source: Vertex, mask: Option<&[bool]>) -> &[bool] {
        self.run_with(source, mask, |_, _| {})
    }
}

/// Per-timestep reachable sets `𝓡_i(u)`: the vertices reachable from `u`
/// by a temporal walk finishing at time at most `i`. Stored as change
/// points at the active timesteps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachProfile {
    pub source: Vertex,
    pub model: Model,
    pub lifetime: Timestep,
    steps: Vec<(Timestep, Vec<Vertex>)>,
}

impl ReachProfile {
    /// `𝓡_i(u)`, sorted ascending. Always contains the source.
    pub fn at(&self, i: Timestep) -> Vec<Vertex> {
        let idx = self.steps.partition_point(|&(t, _)| t <= i);
        if idx == 0 {
            vec![self.source]
        } else {
            self.steps[idx - 1].1.clone()
        }
    }

    /// `𝓡_τ(u)`.
    pub fn reachable(&self) -> Vec<Vertex> {
        self.at(self.lifetime)
    }

    /// Timesteps at which the reached set may change, with the set after it.
    pub fn change_points(&self) -> &[(Timestep, Vec<Vertex>)] {
        &self.steps
    }
}

pub fn reach_profile(g: &TemporalGraph, u: Vertex, model: Model) -> Result<ReachProfile, ReachError> {
    g.check_vertex(u)?;
    let mut steps = Vec::new();
    Sweep::new(g, model).run_with(u, None, |t, order| {
        let mut set = order.to_vec();
        set.sort_unstable();
        steps.push((t, set));
    });
    Ok(ReachProfile { source: u, model, lifetime: g.lifetime(), steps })
}

pub fn reaches(g: &TemporalGraph, u: Vertex, v: Vertex, model: Model) -> Result<bool, ReachError> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Ok(true);
    }
    Ok(Sweep::new(g, model).run(u, None)[v])
}

/// Irreflexive relation "u reaches v, u ≠ v".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityDigraph {
    n: usize,
    model: Model,
    arcs: Vec<bool>,
}

impl ReachabilityDigraph {
    pub(crate) fn from_rows(n: usize, model: Model, rows: Vec<Vec<bool>>) -> Self {
        let mut arcs = Vec::with_capacity(n * n);
        for (u, row) in rows.into_iter().enumerate() {
            for (v, reached) in row.into_iter().enumerate() {
                arcs.push(reached && u != v);
            }
        }
        ReachabilityDigraph { n, model, arcs }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.arcs[u * self.n + v]
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.iter().filter(|&&a| a).count()
    }

    pub fn out_neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(move |&v| self.has_arc(u, v))
    }

    pub fn in_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(move |&u| self.has_arc(u, v))
    }

    /// Both arcs between every pair.
    pub fn is_full_clique(&self, set: &[Vertex]) -> bool {
        pairs(set).all(|(u, v)| self.has_arc(u, v) && self.has_arc(v, u))
    }

    /// At least one arc between every pair.
    pub fn is_clique(&self, set: &[Vertex]) -> bool {
        pairs(set).all(|(u, v)| self.has_arc(u, v) || self.has_arc(v, u))
    }
}

fn pairs(set: &[Vertex]) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
    set.iter().enumerate().flat_map(move |(i, &u)| set[i + 1..].iter().map(move |&v| (u, v)))
}

/// One sweep per source, run in parallel; O(n·M) overall.
pub fn reachability_digraph(g: &TemporalGraph, model: Model) -> ReachabilityDigraph {
    let n = g.vertex_count();
    let rows: Vec<Vec<bool>> =
        (0..n).into_par_iter().map_init(|| Sweep::new(g, model), |sweep, u| sweep.run(u, None).to_vec()).collect();
    ReachabilityDigraph::from_rows(n, model, rows)
}

/// `F`: `uv` is an edge iff both `(u,v)` and `(v,u)` are arcs of `R`.
pub fn symmetric_core(r: &ReachabilityDigraph) -> StaticGraph {
    derived_graph(r, |a, b| a && b)
}

/// Underlying undirected graph of `R`: `uv` is an edge iff either arc is.
pub fn underlying_graph(r: &ReachabilityDigraph) -> StaticGraph {
    derived_graph(r, |a, b| a || b)
}

fn derived_graph(r: &ReachabilityDigraph, keep: impl Fn(bool, bool) -> bool) -> StaticGraph {
    let mut out = StaticGraph::new(r.n);
    for u in 0..r.n {
        for v in u + 1..r.n {
            if keep(r.has_arc(u, v), r.has_arc(v, u)) {
                out.add_edge(u, v).expect("derived edges are simple");
            }
        }
    }
    out
}
