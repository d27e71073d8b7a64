//! Instance generators for the hardness constructions. Each generator
//! returns the temporal graph, a record of the equivalence it is built to
//! satisfy, and the role of every vertex.

pub mod source;

use serde_json::{json, Value};
use thiserror::Error;

use crate::components::{ComponentQuery, Kind};
use crate::graph::{GraphError, Model, TemporalGraph, TemporalGraphBuilder, Timestep, Vertex};
use source::vertex_name;
pub use source::{
    parse_bipartite, parse_sat, parse_source_graph, random_bipartite, random_graph, random_sat, Assignment,
    BipartiteGraph, Literal, SatInstance, Side, SourceError, SourceGraph, SourceParseError, MAX_SIDE_VARIABLES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("source instance is empty")]
    EmptySource,
    #[error("vertex {0} is not in the source graph")]
    InvalidSet(Vertex),
    #[error("{0} assignment vertices per side exceed the limit")]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// What a gadget vertex stands for. `Subdivision { at, toward }` is
/// `h_{at,toward}`: adjacent to `at`, on the edge towards `toward`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Original(Vertex),
    Copy(Vertex),
    Subdivision {
        at: Vertex,
        toward: Vertex,
    },
    SubdivisionCopy {
        at: Vertex,
        toward: Vertex,
    },
    In(Vertex),
    Out(Vertex),
    /// Index into the source bipartite graph's edge list.
    SourceEdge(usize),
    Hub,
    XHub,
    YHub,
    ClauseHub,
    XAssignment(Assignment),
    YAssignment(Assignment),
    Clause(usize),
}

/// The property the gadget is built to transfer. Serialized as the JSON
/// sidecar of a generated instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub source: Value,
    pub query: ComponentQuery,
    /// Other queries for which the same iff holds.
    pub also: Vec<ComponentQuery>,
    /// Component size on the gadget side, once `k` is fixed.
    pub threshold: Option<usize>,
    /// Multiplier from the source parameter `k` to the threshold, when the
    /// iff is parameterized.
    pub scale: Option<usize>,
    pub iff: String,
    pub requested_tau: Option<Timestep>,
}

impl Equivalence {
    fn new(source: Value, query: ComponentQuery, iff: impl Into<String>) -> Self {
        Equivalence {
            source,
            query,
            also: Vec::new(),
            threshold: None,
            scale: None,
            iff: iff.into(),
            requested_tau: None,
        }
    }

    /// Fixes the source parameter; no-op for unparameterized iffs.
    pub fn with_k(mut self, k: usize) -> Self {
        if let Some(scale) = self.scale {
            self.threshold = Some(scale * k);
        }
        self
    }

    pub fn to_json(&self) -> Value {
        let query = |q: &ComponentQuery| {
            json!({
                "kind": match q.kind { Kind::Mutual => "tcc", Kind::Unilateral => "tucc" },
                "closed": q.is_closed(),
                "model": q.model.as_str(),
            })
        };
        json!({
            "source": self.source,
            "query": query(&self.query),
            "also": self.also.iter().map(query).collect::<Vec<_>>(),
            "threshold": self.threshold,
            "iff": self.iff,
            "requested_tau": self.requested_tau,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetInstance {
    pub graph: TemporalGraph,
    pub equivalence: Equivalence,
    /// Indexed by gadget vertex.
    pub roles: Vec<Role>,
    /// Distinguished vertex set, for gadgets whose iff is about one set.
    pub target: Option<Vec<Vertex>>,
}

impl GadgetInstance {
    pub fn vertices_with(&self, pred: impl Fn(&Role) -> bool) -> Vec<Vertex> {
        (0..self.roles.len()).filter(|&v| pred(&self.roles[v])).collect()
    }

    pub fn vertex_of(&self, role: Role) -> Option<Vertex> {
        self.roles.iter().position(|r| *r == role)
    }
}

struct Assembler {
    builder: TemporalGraphBuilder,
    roles: Vec<Role>,
}

impl Assembler {
    fn new(directed: bool) -> Self {
        Assembler { builder: TemporalGraphBuilder::new(directed), roles: Vec::new() }
    }

    fn vertex(&mut self, name: String, role: Role) -> Vertex {
        self.roles.push(role);
        self.builder.add_vertex(name)
    }

    fn edge(&mut self, u: Vertex, v: Vertex, labels: &[Timestep]) {
        self.builder.add_edge(u, v, labels);
    }

    fn finish(self, equivalence: Equivalence, target: Option<Vec<Vertex>>) -> Result<GadgetInstance, GadgetError> {
        Ok(GadgetInstance { graph: self.builder.build()?, equivalence, roles: self.roles, target })
    }
}

/// Line graph of a bipartite `H`: one vertex per edge of `H`, a clique at
/// time 1 on the edges at each `x`, and a clique at time 2 on the edges at
/// each `y`.
pub fn gadget_linegraph_bipartite(h: &BipartiteGraph) -> Result<GadgetInstance, GadgetError> {
    gadget_linegraph_bipartite_with_tau(h, 2)
}

/// As [`gadget_linegraph_bipartite`]; a lifetime above 2 only adds empty
/// snapshots, so it is recorded in the equivalence but not in the graph.
pub fn gadget_linegraph_bipartite_with_tau(h: &BipartiteGraph, tau: Timestep) -> Result<GadgetInstance, GadgetError> {
    if h.edges().is_empty() {
        return Err(GadgetError::EmptySource);
    }
    let mut a = Assembler::new(false);
    for (i, &(x, y)) in h.edges().iter().enumerate() {
        a.vertex(format!("x{x}y{y}"), Role::SourceEdge(i));
    }
    let edges = h.edges();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if edges[i].0 == edges[j].0 {
                a.edge(i, j, &[1]);
            }
            if edges[i].1 == edges[j].1 {
                a.edge(i, j, &[2]);
            }
        }
    }
    let mut eq = Equivalence::new(
        h.to_json(),
        ComponentQuery::closed_tcc(Model::NonStrict),
        "biclique with >= k edges <-> closed tcc (and tcc) of size >= k; \
         2K2-free subgraph with >= k edges <-> closed tucc of size >= k",
    );
    eq.also = vec![ComponentQuery::tcc(Model::NonStrict), ComponentQuery::closed_tucc(Model::NonStrict)];
    eq.scale = Some(1);
    eq.requested_tau = Some(tau.max(2));
    a.finish(eq, None)
}

/// Two copies of `V` matched at time 0, and per edge `e_i = uv` (input
/// order, `i` from 1) the paths `u h_uv v`, `v h_vu u` at times `i`, `m+i`
/// and their copies at `2m+i`, `3m+i`.
pub fn gadget_clique_tcc(g: &SourceGraph) -> Result<GadgetInstance, GadgetError> {
    let n = g.vertex_count();
    let m = g.graph.edge_count() as Timestep;
    let mut a = Assembler::new(false);
    for u in 0..n {
        a.vertex(vertex_name(g, u).to_string(), Role::Original(u));
    }
    for u in 0..n {
        a.vertex(format!("{}'", vertex_name(g, u)), Role::Copy(u));
        a.edge(u, n + u, &[0]);
    }
    for (i, &(u, v)) in g.graph.edges().iter().enumerate() {
        let i = i as Timestep + 1;
        let (un, vn) = (vertex_name(g, u), vertex_name(g, v));
        let h_uv = a.vertex(format!("h_{un}_{vn}"), Role::Subdivision { at: u, toward: v });
        let h_vu = a.vertex(format!("h_{vn}_{un}"), Role::Subdivision { at: v, toward: u });
        let hc_uv = a.vertex(format!("h'_{un}_{vn}"), Role::SubdivisionCopy { at: u, toward: v });
        let hc_vu = a.vertex(format!("h'_{vn}_{un}"), Role::SubdivisionCopy { at: v, toward: u });
        a.edge(u, h_uv, &[i]);
        a.edge(v, h_vu, &[i]);
        a.edge(h_vu, u, &[m + i]);
        a.edge(h_uv, v, &[m + i]);
        a.edge(n + u, hc_uv, &[2 * m + i]);
        a.edge(n + v, hc_vu, &[2 * m + i]);
        a.edge(hc_vu, n + u, &[3 * m + i]);
        a.edge(hc_uv, n + v, &[3 * m + i]);
    }
    let mut eq = Equivalence::new(
        g.to_json(),
        ComponentQuery::tcc(Model::NonStrict),
        "clique of size >= k (k >= 3) <-> tcc of size >= 2k",
    );
    eq.scale = Some(2);
    a.finish(eq, None)
}

/// Directed, lifetime 2: per edge `uv`, arcs `u→h_uv`, `v→h_vu` at time 1
/// and `h_uv→v`, `h_vu→u` at time 2.
///
/// The unilateral iff needs `k >= 4`: `{u, h_uv, v}` is a unilateral set
/// for every edge, triangle or not.
pub fn gadget_clique_dir_tau2(g: &SourceGraph) -> Result<GadgetInstance, GadgetError> {
    let mut a = Assembler::new(true);
    for u in 0..g.vertex_count() {
        a.vertex(vertex_name(g, u).to_string(), Role::Original(u));
    }
    for &(u, v) in g.graph.edges() {
        let (un, vn) = (vertex_name(g, u), vertex_name(g, v));
        let h_uv = a.vertex(format!("h_{un}_{vn}"), Role::Subdivision { at: u, toward: v });
        let h_vu = a.vertex(format!("h_{vn}_{un}"), Role::Subdivision { at: v, toward: u });
        a.edge(u, h_uv, &[1]);
        a.edge(v, h_vu, &[1]);
        a.edge(h_uv, v, &[2]);
        a.edge(h_vu, u, &[2]);
    }
    let mut eq = Equivalence::new(
        g.to_json(),
        ComponentQuery::tcc(Model::NonStrict),
        "clique of size >= k (k >= 3) <-> tcc of size >= k; for k >= 4 also <-> tucc of size >= k",
    );
    eq.also = vec![ComponentQuery::tucc(Model::NonStrict)];
    eq.scale = Some(1);
    a.finish(eq, None)
}

/// Directed, lifetime 3: `u_in ↔ u_out` at times 1 and 3, and per edge
/// `uv` the arcs `u_out→v_in`, `v_out→u_in` at time 2. The unilateral
/// variant keeps only `u_out→v_in` for each input edge `(u, v)`.
pub fn gadget_clique_closed_dir_tau3(g: &SourceGraph, unilateral: bool) -> Result<GadgetInstance, GadgetError> {
    let n = g.vertex_count();
    let mut a = Assembler::new(true);
    for u in 0..n {
        a.vertex(format!("{}_in", vertex_name(g, u)), Role::In(u));
        a.vertex(format!("{}_out", vertex_name(g, u)), Role::Out(u));
        a.edge(2 * u, 2 * u + 1, &[1, 3]);
        a.edge(2 * u + 1, 2 * u, &[1, 3]);
    }
    for &(u, v) in g.graph.edges() {
        a.edge(2 * u + 1, 2 * v, &[2]);
        if !unilateral {
            a.edge(2 * v + 1, 2 * u, &[2]);
        }
    }
    let (query, iff) = if unilateral {
        (ComponentQuery::closed_tucc(Model::NonStrict), "clique of size >= k <-> closed tucc of size >= 2k")
    } else {
        (ComponentQuery::closed_tcc(Model::NonStrict), "clique of size >= k <-> closed tcc of size >= 2k")
    };
    let mut eq = Equivalence::new(g.to_json(), query, iff);
    eq.scale = Some(2);
    a.finish(eq, None)
}

fn check_set(g: &SourceGraph, x: &[Vertex]) -> Result<Vec<Vertex>, GadgetError> {
    let mut x = x.to_vec();
    x.sort_unstable();
    x.dedup();
    match x.iter().find(|&&v| v >= g.vertex_count()) {
        Some(&v) => Err(GadgetError::InvalidSet(v)),
        None => Ok(x),
    }
}

fn set_json(g: &SourceGraph, x: &[Vertex]) -> Value {
    let mut source = g.to_json();
    source["set"] = json!(x.iter().map(|&v| vertex_name(g, v)).collect::<Vec<_>>());
    source
}

/// Each edge `uv` subdivided twice into `u h_uv h_vu v`, with `{1,3,5}` on
/// the outer edges and `{2,4}` on the middle one. The target is
/// `Y = X ∪ N_H(X)`.
pub fn gadget_2club(g: &SourceGraph, x: &[Vertex]) -> Result<GadgetInstance, GadgetError> {
    let x = check_set(g, x)?;
    let mut in_x = vec![false; g.vertex_count()];
    x.iter().for_each(|&v| in_x[v] = true);
    let mut a = Assembler::new(false);
    for u in 0..g.vertex_count() {
        a.vertex(vertex_name(g, u).to_string(), Role::Original(u));
    }
    let mut target = x.clone();
    for &(u, v) in g.graph.edges() {
        let (un, vn) = (vertex_name(g, u), vertex_name(g, v));
        let h_uv = a.vertex(format!("h_{un}_{vn}"), Role::Subdivision { at: u, toward: v });
        let h_vu = a.vertex(format!("h_{vn}_{un}"), Role::Subdivision { at: v, toward: u });
        a.edge(u, h_uv, &[1, 3, 5]);
        a.edge(v, h_vu, &[1, 3, 5]);
        a.edge(h_uv, h_vu, &[2, 4]);
        if in_x[u] {
            target.push(h_uv);
        }
        if in_x[v] {
            target.push(h_vu);
        }
    }
    target.sort_unstable();
    let mut eq = Equivalence::new(
        set_json(g, &x),
        ComponentQuery::closed_tcc(Model::NonStrict),
        "X is a maximal 2-club <-> X with its subdivision neighbours is a closed tcc (and a closed tucc)",
    );
    eq.also = vec![ComponentQuery::closed_tucc(Model::NonStrict)];
    eq.threshold = Some(target.len());
    a.finish(eq, Some(target))
}

/// `G` itself in two snapshots, read in the strict model; the target is `X`.
pub fn gadget_2club_strict(g: &SourceGraph, x: &[Vertex]) -> Result<GadgetInstance, GadgetError> {
    let x = check_set(g, x)?;
    let mut a = Assembler::new(false);
    for u in 0..g.vertex_count() {
        a.vertex(vertex_name(g, u).to_string(), Role::Original(u));
    }
    for &(u, v) in g.graph.edges() {
        a.edge(u, v, &[1, 2]);
    }
    let mut eq = Equivalence::new(
        set_json(g, &x),
        ComponentQuery::closed_tcc(Model::Strict),
        "X is a maximal 2-club <-> X is a closed tcc (and a closed tucc)",
    );
    eq.also = vec![ComponentQuery::closed_tucc(Model::Strict)];
    eq.threshold = Some(x.len());
    a.finish(eq, Some(x))
}

fn assignment_name(prefix: char, bits: usize, a: Assignment) -> String {
    let digits: String = (0..bits).map(|i| if (a >> i) & 1 == 1 { 'T' } else { 'F' }).collect();
    format!("{prefix}={digits}")
}

fn assignment_count(n: usize) -> Result<usize, GadgetError> {
    if n > MAX_SIDE_VARIABLES {
        return Err(GadgetError::TooLarge(n));
    }
    Ok(1usize << n)
}

struct SatVertices {
    xs: Vec<Vertex>,
    ys: Vec<Vertex>,
    cs: Vec<Vertex>,
}

fn sat_vertices(a: &mut Assembler, phi: &SatInstance) -> Result<SatVertices, GadgetError> {
    let (cx, cy) = (assignment_count(phi.nx())?, assignment_count(phi.ny())?);
    let xs = (0..cx as Assignment).map(|f| a.vertex(assignment_name('x', phi.nx(), f), Role::XAssignment(f))).collect();
    let ys = (0..cy as Assignment).map(|f| a.vertex(assignment_name('y', phi.ny(), f), Role::YAssignment(f))).collect();
    let cs = (0..phi.clauses().len()).map(|i| a.vertex(format!("c{}", i + 1), Role::Clause(i))).collect();
    Ok(SatVertices { xs, ys, cs })
}

/// Adds `f→c_i` at time 4 for every X-assignment failing `c_i` and `c_i→g`
/// at time 5 for every Y-assignment failing `c_i`.
fn conditional_edges(a: &mut Assembler, phi: &SatInstance, s: &SatVertices) {
    for (i, &c) in s.cs.iter().enumerate() {
        for (f, &v) in s.xs.iter().enumerate() {
            if phi.fails(i, Side::X, f as Assignment) {
                a.edge(v, c, &[4]);
            }
        }
        for (f, &v) in s.ys.iter().enumerate() {
            if phi.fails(i, Side::Y, f as Assignment) {
                a.edge(c, v, &[5]);
            }
        }
    }
}

/// Directed, lifetime 8, on assignment vertices `X`, `Y` (all assignments
/// of each block), clause vertices `C` and a hub `s`. The graph is
/// temporally connected iff the formula is unsatisfiable.
pub fn gadget_sat_connected(phi: &SatInstance) -> Result<GadgetInstance, GadgetError> {
    let mut a = Assembler::new(true);
    let sv = sat_vertices(&mut a, phi)?;
    let s = a.vertex("s".into(), Role::Hub);
    for &f in &sv.xs {
        a.edge(s, f, &[7]);
        a.edge(f, s, &[6]);
        for &c in &sv.cs {
            a.edge(f, c, &[8]);
            a.edge(c, f, &[5]);
        }
    }
    for &g in &sv.ys {
        a.edge(s, g, &[1]);
        for &c in &sv.cs {
            a.edge(c, g, &[3]);
            a.edge(g, c, &[2]);
        }
    }
    conditional_edges(&mut a, phi, &sv);
    let mut eq = Equivalence::new(
        phi.to_json(),
        ComponentQuery::tcc(Model::NonStrict),
        "formula satisfiable <-> gadget not temporally connected",
    );
    eq.threshold = Some(a.builder.vertex_count());
    a.finish(eq, None)
}

/// Directed, lifetime 7, with hubs `x`, `c`, `y` for the three blocks. The
/// graph is temporally unilaterally connected iff the formula is
/// unsatisfiable.
///
/// Hub `x` hands out to `X` at time 5, after the conditional arcs from `X`
/// at time 4 have passed, so an assignment cannot reach a clause through
/// another assignment; `y→x` at time 6 keeps `Y` and `x` comparable.
pub fn gadget_sat_unilateral(phi: &SatInstance) -> Result<GadgetInstance, GadgetError> {
    sat_unilateral(phi, 5, true)
}

/// The unilateral construction with a configurable hand-out time for hub
/// `x` and an optional `y→x` arc. `(2, false)` is the layout with hub `x`
/// handing out at time 2, kept for regression tests.
#[doc(hidden)]
pub fn sat_unilateral(phi: &SatInstance, x_out: Timestep, y_to_x: bool) -> Result<GadgetInstance, GadgetError> {
    let mut a = Assembler::new(true);
    let sv = sat_vertices(&mut a, phi)?;
    let x = a.vertex("x".into(), Role::XHub);
    let c = a.vertex("c".into(), Role::ClauseHub);
    let y = a.vertex("y".into(), Role::YHub);
    for (hub, block, out) in [(x, &sv.xs, x_out), (c, &sv.cs, 2), (y, &sv.ys, 2)] {
        for &z in block {
            a.edge(z, hub, &[1]);
            a.edge(hub, z, &[out]);
        }
    }
    for &ci in &sv.cs {
        a.edge(x, ci, &[6]);
    }
    for &g in &sv.ys {
        a.edge(c, g, &[6]);
    }
    a.edge(x, c, &[7]);
    a.edge(x, y, &[7]);
    a.edge(c, y, &[7]);
    if y_to_x {
        a.edge(y, x, &[6]);
    }
    conditional_edges(&mut a, phi, &sv);
    let mut eq = Equivalence::new(
        phi.to_json(),
        ComponentQuery::tucc(Model::NonStrict),
        "formula satisfiable <-> gadget not temporally unilaterally connected",
    );
    eq.threshold = Some(a.builder.vertex_count());
    a.finish(eq, None)
}
