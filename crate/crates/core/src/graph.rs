//! Temporal graph data model: validated edge/label storage, snapshots,
//! the text file format and a small static graph type used for sources
//! of reductions and for derived graphs (symmetric cores, underlying graphs).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub type Vertex = usize;
pub type Timestep = u32;

/// Walk semantics: strictly increasing or non-decreasing timesteps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Model {
    Strict,
    NonStrict,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Strict => "strict",
            Model::NonStrict => "nonstrict",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(Model::Strict),
            "nonstrict" | "non-strict" => Ok(Model::NonStrict),
            other => Err(format!("unknown model `{other}` (expected strict or nonstrict)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({tail}, {head}) has an endpoint outside [0, {n})")]
    EndpointOutOfRange { tail: Vertex, head: Vertex, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge ({tail}, {head}) has no labels")]
    EmptyLabels { tail: Vertex, head: Vertex },
    #[error("labels of edge ({tail}, {head}) are not strictly ascending")]
    UnsortedLabels { tail: Vertex, head: Vertex },
    #[error("duplicate edge ({tail}, {head})")]
    DuplicateEdge { tail: Vertex, head: Vertex },
    #[error("expected {expected} vertex names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("duplicate vertex name `{0}`")]
    DuplicateName(String),
    #[error("invalid vertex name `{0}`")]
    InvalidName(String),
    #[error("timestep {i} outside [0, {tau}]")]
    TimestepOutOfRange { i: Timestep, tau: Timestep },
    #[error("graph is already undirected")]
    AlreadyUndirected,
    #[error("vertex {0} out of range")]
    InvalidVertex(Vertex),
}

/// One edge together with its availability set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TemporalEdge {
    pub tail: Vertex,
    pub head: Vertex,
    pub labels: Vec<Timestep>,
}

impl TemporalEdge {
    pub fn new(tail: Vertex, head: Vertex, labels: Vec<Timestep>) -> Self {
        TemporalEdge { tail, head, labels }
    }

    pub fn is_active(&self, t: Timestep) -> bool {
        self.labels.binary_search(&t).is_ok()
    }
}

/// Arcs available at one timestep, sorted by tail. Undirected edges
/// contribute both orientations.
#[derive(Debug, Clone)]
pub(crate) struct Layer {
    pub(crate) time: Timestep,
    pub(crate) arcs: Vec<(Vertex, Vertex)>,
    pub(crate) tails: Vec<Vertex>,
}

impl Layer {
    pub(crate) fn successors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let start = self.arcs.partition_point(|&(t, _)| t < v);
        self.arcs[start..].iter().take_while(move |&&(t, _)| t == v).map(|&(_, h)| h)
    }
}

/// A (directed) temporal graph. Immutable once built; edges are kept in
/// canonical order (undirected edges with `tail < head`, sorted by
/// `(tail, head)`).
#[derive(Debug, Clone)]
pub struct TemporalGraph {
    directed: bool,
    n: usize,
    names: Option<Vec<String>>,
    edges: Vec<TemporalEdge>,
    tau: Timestep,
    temporal_edge_count: usize,
    layers: Vec<Layer>,
}

impl PartialEq for TemporalGraph {
    fn eq(&self, other: &Self) -> bool {
        self.directed == other.directed && self.n == other.n && self.names == other.names && self.edges == other.edges
    }
}

impl Eq for TemporalGraph {}

impl TemporalGraph {
    pub fn new(directed: bool, n: usize, edges: impl IntoIterator<Item = TemporalEdge>) -> Result<Self, GraphError> {
        let mut seen = BTreeMap::new();
        for mut e in edges {
            validate_edge(&e, n)?;
            if !directed && e.tail > e.head {
                std::mem::swap(&mut e.tail, &mut e.head);
            }
            let key = (e.tail, e.head);
            if seen.insert(key, e.labels).is_some() {
                return Err(GraphError::DuplicateEdge { tail: key.0, head: key.1 });
            }
        }
        let edges = seen.into_iter().map(|((tail, head), labels)| TemporalEdge { tail, head, labels }).collect();
        Ok(Self::from_canonical(directed, n, None, edges))
    }

    fn from_canonical(directed: bool, n: usize, names: Option<Vec<String>>, edges: Vec<TemporalEdge>) -> Self {
        let tau = edges.iter().filter_map(|e| e.labels.last().copied()).max().unwrap_or(0);
        let temporal_edge_count = edges.iter().map(|e| e.labels.len()).sum();
        let mut by_time: BTreeMap<Timestep, Vec<(Vertex, Vertex)>> = BTreeMap::new();
        for e in &edges {
            for &t in &e.labels {
                let arcs = by_time.entry(t).or_default();
                arcs.push((e.tail, e.head));
                if !directed {
                    arcs.push((e.head, e.tail));
                }
            }
        }
        let layers = by_time
            .into_iter()
            .map(|(time, mut arcs)| {
                arcs.sort_unstable();
                let mut tails: Vec<Vertex> = arcs.iter().map(|&(t, _)| t).collect();
                tails.dedup();
                Layer { time, arcs, tails }
            })
            .collect();
        TemporalGraph { directed, n, names, edges, tau, temporal_edge_count, layers }
    }

    /// Attaches a vertex-name table used for I/O.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, GraphError> {
        if names.len() != self.n {
            return Err(GraphError::NameCount { expected: self.n, got: names.len() });
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !is_valid_name(name) {
                return Err(GraphError::InvalidName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(GraphError::DuplicateName(name.clone()));
            }
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn without_names(mut self) -> Self {
        self.names = None;
        self
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    /// Lifetime: the largest label present, 0 for an edgeless graph.
    pub fn lifetime(&self) -> Timestep {
        self.tau
    }

    /// Total number of temporal edges, `M = Σ_e |λ(e)|`.
    pub fn temporal_edge_count(&self) -> usize {
        self.temporal_edge_count
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of a vertex: its declared name or its index.
    pub fn name(&self, v: Vertex) -> String {
        match &self.names {
            Some(names) => names[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<Vertex> {
        match &self.names {
            Some(names) => names.iter().position(|n| n == name),
            None => name.parse::<Vertex>().ok().filter(|&v| v < self.n),
        }
    }

    /// Distinct timesteps carrying at least one edge, ascending.
    pub fn active_timesteps(&self) -> Vec<Timestep> {
        self.layers.iter().map(|l| l.time).collect()
    }

    pub(crate) fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// Labels of the edge from `u` to `v` (either orientation when undirected).
    pub fn labels(&self, u: Vertex, v: Vertex) -> Option<&[Timestep]> {
        let key = if self.directed || u <= v { (u, v) } else { (v, u) };
        self.edges.binary_search_by(|e| (e.tail, e.head).cmp(&key)).ok().map(|i| self.edges[i].labels.as_slice())
    }

    pub fn snapshot(&self, i: Timestep) -> Result<Snapshot, GraphError> {
        if i > self.tau {
            return Err(GraphError::TimestepOutOfRange { i, tau: self.tau });
        }
        let edges = self.edges.iter().filter(|e| e.is_active(i)).map(|e| (e.tail, e.head)).collect();
        Ok(Snapshot { index: i, directed: self.directed, n: self.n, edges })
    }

    /// Forgets orientation: `λ'(uv) = λ(u→v) ∪ λ(v→u)`.
    pub fn underlying_undirected(&self) -> Result<TemporalGraph, GraphError> {
        if !self.directed {
            return Err(GraphError::AlreadyUndirected);
        }
        let mut merged: BTreeMap<(Vertex, Vertex), BTreeSet<Timestep>> = BTreeMap::new();
        for e in &self.edges {
            let key = (e.tail.min(e.head), e.tail.max(e.head));
            merged.entry(key).or_default().extend(e.labels.iter().copied());
        }
        let edges = merged
            .into_iter()
            .map(|((tail, head), labels)| TemporalEdge { tail, head, labels: labels.into_iter().collect() })
            .collect();
        Ok(Self::from_canonical(false, self.n, self.names.clone(), edges))
    }

    /// Static footprint: `uv` is an edge when some label exists on `u→v` or `v→u`.
    pub fn underlying_static(&self) -> StaticGraph {
        let mut s = StaticGraph::new(self.n);
        for e in &self.edges {
            if !s.has_edge(e.tail, e.head) {
                s.add_edge(e.tail, e.head).expect("edges are simple");
            }
        }
        s
    }

    /// The temporal subgraph induced by `vertices`, re-indexed densely in
    /// ascending order. Returns the graph and the map from new to old index.
    pub fn induced(&self, vertices: &[Vertex]) -> Result<(TemporalGraph, Vec<Vertex>), GraphError> {
        let mut keep: Vec<Vertex> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&v) = keep.iter().find(|&&v| v >= self.n) {
            return Err(GraphError::InvalidVertex(v));
        }
        let index: HashMap<Vertex, Vertex> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                let (&t, &h) = (index.get(&e.tail)?, index.get(&e.head)?);
                let (t, h) = if !self.directed && t > h { (h, t) } else { (t, h) };
                Some(TemporalEdge { tail: t, head: h, labels: e.labels.clone() })
            })
            .collect::<Vec<_>>();
        let mut edges = edges;
        edges.sort_by_key(|e| (e.tail, e.head));
        let names = self.names.as_ref().map(|names| keep.iter().map(|&v| names[v].clone()).collect());
        Ok((Self::from_canonical(self.directed, keep.len(), names, edges), keep))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex(v))
        }
    }

    /// Text form; see [`parse_temporal_graph`] for the grammar.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let orientation = if self.directed { "directed" } else { "undirected" };
        out.push_str(&format!("tg {} {}\n", orientation, self.n));
        if let Some(names) = &self.names {
            out.push_str("names");
            for name in names {
                out.push(' ');
                out.push_str(name);
            }
            out.push('\n');
        }
        for e in &self.edges {
            out.push_str(&self.name(e.tail));
            out.push(' ');
            out.push_str(&self.name(e.head));
            for t in &e.labels {
                out.push(' ');
                out.push_str(&t.to_string());
            }
            out.push('\n');
        }
        out
    }
}

fn validate_edge(e: &TemporalEdge, n: usize) -> Result<(), GraphError> {
    if e.tail >= n || e.head >= n {
        return Err(GraphError::EndpointOutOfRange { tail: e.tail, head: e.head, n });
    }
    if e.tail == e.head {
        return Err(GraphError::SelfLoop(e.tail));
    }
    if e.labels.is_empty() {
        return Err(GraphError::EmptyLabels { tail: e.tail, head: e.head });
    }
    if e.labels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GraphError::UnsortedLabels { tail: e.tail, head: e.head });
    }
    Ok(())
}

fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && !name.starts_with('#') && !name.chars().any(|c| c.is_whitespace() || c == ',')
}

impl fmt::Display for TemporalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for TemporalGraph {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_temporal_graph(s)
    }
}

/// Accumulates edges, merging label sets of repeated edges. Used by the
/// gadget generators where one ordered pair may receive labels from
/// several construction steps.
#[derive(Debug, Clone)]
pub struct TemporalGraphBuilder {
    directed: bool,
    names: Vec<String>,
    edges: BTreeMap<(Vertex, Vertex), BTreeSet<Timestep>>,
}

impl TemporalGraphBuilder {
    pub fn new(directed: bool) -> Self {
        TemporalGraphBuilder { directed, names: Vec::new(), edges: BTreeMap::new() }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Vertex {
        self.names.push(name.into());
        self.names.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex, labels: &[Timestep]) {
        let key = if self.directed || u <= v { (u, v) } else { (v, u) };
        self.edges.entry(key).or_default().extend(labels.iter().copied());
    }

    pub fn build(self) -> Result<TemporalGraph, GraphError> {
        let n = self.names.len();
        let edges = self.edges.into_iter().map(|((tail, head), labels)| TemporalEdge {
            tail,
            head,
            labels: labels.into_iter().collect(),
        });
        TemporalGraph::new(self.directed, n, edges)?.with_names(self.names)
    }
}

/// The subgraph `G_i` of edges available at timestep `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub index: Timestep,
    pub directed: bool,
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header")]
    MissingHeader,
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("unknown orientation `{0}`")]
    UnknownOrientation(String),
    #[error("malformed names line: {0}")]
    MalformedNames(String),
    #[error("malformed edge line")]
    MalformedEdge,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("label `{0}` out of range")]
    LabelOutOfRange(String),
    #[error("labels not strictly ascending")]
    LabelsNotAscending,
    #[error("edge without labels")]
    MissingLabels,
    #[error("duplicate edge")]
    DuplicateEdge,
    #[error("self-loop")]
    SelfLoop,
}

/// Lines of a text stream that carry content, with 1-based line numbers.
/// Blank lines and lines starting with `#` are skipped.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((i + 1, trimmed.split_whitespace().collect()))
        }
    })
}

/// Reads the optional `names` line and returns a resolver from tokens to
/// vertex indices. Without a names line, tokens are integer indices.
pub(crate) struct VertexResolver {
    names: Option<HashMap<String, Vertex>>,
    n: usize,
}

impl VertexResolver {
    pub(crate) fn new(n: usize, names: Option<&[String]>) -> Self {
        let names = names.map(|ns| ns.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect());
        VertexResolver { names, n }
    }

    pub(crate) fn resolve(&self, token: &str) -> Option<Vertex> {
        match &self.names {
            Some(map) => map.get(token).copied(),
            None => token.parse::<Vertex>().ok().filter(|&v| v < self.n),
        }
    }
}

pub(crate) fn parse_names(line: usize, tokens: &[&str], n: usize) -> Result<Vec<String>, ParseError> {
    let err = |msg: String| ParseError { line, kind: ParseErrorKind::MalformedNames(msg) };
    let names: Vec<String> = tokens[1..].iter().map(|s| s.to_string()).collect();
    if names.len() != n {
        return Err(err(format!("expected {n} names, got {}", names.len())));
    }
    let mut seen = BTreeSet::new();
    for name in &names {
        if !is_valid_name(name) {
            return Err(err(format!("invalid name `{name}`")));
        }
        if !seen.insert(name.as_str()) {
            return Err(err(format!("duplicate name `{name}`")));
        }
    }
    Ok(names)
}

/// Parses the temporal graph text format:
///
/// ```text
/// tg <directed|undirected> <n>
/// names <name_0> ... <name_{n-1}>      (optional)
/// <u> <v> <t1> <t2> ...                (one line per edge)
/// ```
pub fn parse_temporal_graph(text: &str) -> Result<TemporalGraph, ParseError> {
    let mut lines = content_lines(text).peekable();
    let (hline, header) = lines.next().ok_or(ParseError { line: 1, kind: ParseErrorKind::MissingHeader })?;
    let herr = |kind| ParseError { line: hline, kind };
    if header.len() != 3 || header[0] != "tg" {
        return Err(herr(ParseErrorKind::MalformedHeader(header.join(" "))));
    }
    let directed = match header[1] {
        "directed" => true,
        "undirected" => false,
        other => return Err(herr(ParseErrorKind::UnknownOrientation(other.to_string()))),
    };
    let n: usize = header[2]
        .parse()
        .map_err(|_| herr(ParseErrorKind::MalformedHeader(format!("bad vertex count `{}`", header[2]))))?;

    let mut names = None;
    if let Some((line, tokens)) = lines.peek() {
        if tokens[0] == "names" {
            names = Some(parse_names(*line, tokens, n)?);
            lines.next();
        }
    }
    let resolver = VertexResolver::new(n, names.as_deref());

    let mut edges: BTreeMap<(Vertex, Vertex), Vec<Timestep>> = BTreeMap::new();
    for (line, tokens) in lines {
        let err = |kind| ParseError { line, kind };
        if tokens.len() < 2 {
            return Err(err(ParseErrorKind::MalformedEdge));
        }
        let u = resolver.resolve(tokens[0]).ok_or_else(|| err(ParseErrorKind::UnknownVertex(tokens[0].into())))?;
        let v = resolver.resolve(tokens[1]).ok_or_else(|| err(ParseErrorKind::UnknownVertex(tokens[1].into())))?;
        if u == v {
            return Err(err(ParseErrorKind::SelfLoop));
        }
        if tokens.len() == 2 {
            return Err(err(ParseErrorKind::MissingLabels));
        }
        let mut labels = Vec::with_capacity(tokens.len() - 2);
        for tok in &tokens[2..] {
            let t: Timestep = tok.parse().map_err(|_| err(ParseErrorKind::LabelOutOfRange(tok.to_string())))?;
            if labels.last().is_some_and(|&prev| prev >= t) {
                return Err(err(ParseErrorKind::LabelsNotAscending));
            }
            labels.push(t);
        }
        let key = if directed || u < v { (u, v) } else { (v, u) };
        if edges.insert(key, labels).is_some() {
            return Err(err(ParseErrorKind::DuplicateEdge));
        }
    }
    let edges = edges.into_iter().map(|((tail, head), labels)| TemporalEdge { tail, head, labels }).collect();
    Ok(TemporalGraph::from_canonical(directed, n, names, edges))
}

pub fn serialize_temporal_graph(g: &TemporalGraph) -> String {
    g.to_text()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StaticGraphError {
    #[error("vertex {0} out of range")]
    InvalidVertex(Vertex),
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
}

/// Simple undirected static graph. Edges keep insertion order, which the
/// reductions use as their edge ordering `e_1, ..., e_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adjacency: Vec<bool>,
}

impl StaticGraph {
    pub fn new(n: usize) -> Self {
        StaticGraph { n, edges: Vec::new(), adjacency: vec![false; n * n] }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, StaticGraphError> {
        let mut g = StaticGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = StaticGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("complete graph edges are valid");
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = StaticGraph::new(n);
        for u in 1..n {
            g.add_edge(u - 1, u).expect("path edges are valid");
        }
        g
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), StaticGraphError> {
        if u >= self.n {
            return Err(StaticGraphError::InvalidVertex(u));
        }
        if v >= self.n {
            return Err(StaticGraphError::InvalidVertex(v));
        }
        if u == v {
            return Err(StaticGraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(StaticGraphError::DuplicateEdge(u, v));
        }
        self.adjacency[u * self.n + v] = true;
        self.adjacency[v * self.n + u] = true;
        self.edges.push((u, v));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adjacency[u * self.n + v]
    }

    pub fn neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(move |&v| self.adjacency[u * self.n + v])
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.neighbors(u).count()
    }

    pub fn is_clique(&self, set: &[Vertex]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}
