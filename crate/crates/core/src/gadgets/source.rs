//! Source instances for the gadget generators and their text formats.
//!
//! ```text
//! graph <n>                    bipartite <nx> <ny>          sat <nx> <ny>
//! names <n names>   (optional) <i> <j>   (0-based, x y)    x1 -x2 y1   (one clause per line)
//! <u> <v>                      ...                          ...
//! ```

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{content_lines, parse_names, StaticGraph, Vertex, VertexResolver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct SourceParseError {
    pub line: usize,
    pub message: String,
}

fn perr(line: usize, message: impl Into<String>) -> SourceParseError {
    SourceParseError { line, message: message.into() }
}

fn parse_count(line: usize, token: &str) -> Result<usize, SourceParseError> {
    token.parse().map_err(|_| perr(line, format!("expected a count, got `{token}`")))
}

/// A simple undirected graph with vertex names used to label gadget vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceGraph {
    pub graph: StaticGraph,
    pub names: Vec<String>,
}

impl SourceGraph {
    /// Names default to `v0`, `v1`, ...
    pub fn new(graph: StaticGraph) -> Self {
        let names = (0..graph.vertex_count()).map(|i| format!("v{i}")).collect();
        SourceGraph { graph, names }
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<[&str; 2]> =
            self.graph.edges().iter().map(|&(u, v)| [self.names[u].as_str(), self.names[v].as_str()]).collect();
        json!({ "type": "graph", "vertices": self.names, "edges": edges })
    }
}

impl From<StaticGraph> for SourceGraph {
    fn from(graph: StaticGraph) -> Self {
        SourceGraph::new(graph)
    }
}

impl fmt::Display for SourceGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph {}", self.vertex_count())?;
        writeln!(f, "names {}", self.names.join(" "))?;
        for &(u, v) in self.graph.edges() {
            writeln!(f, "{} {}", self.names[u], self.names[v])?;
        }
        Ok(())
    }
}

pub fn parse_source_graph(text: &str) -> Result<SourceGraph, SourceParseError> {
    let mut lines = content_lines(text).peekable();
    let (hline, header) = lines.next().ok_or_else(|| perr(1, "missing `graph <n>` header"))?;
    if header.len() != 2 || header[0] != "graph" {
        return Err(perr(hline, "expected `graph <n>`"));
    }
    let n = parse_count(hline, header[1])?;
    let names = match lines.peek() {
        Some((line, tokens)) if tokens[0] == "names" => {
            let names = parse_names(*line, tokens, n).map_err(|e| perr(e.line, e.kind.to_string()))?;
            lines.next();
            Some(names)
        }
        _ => None,
    };
    let resolver = VertexResolver::new(n, names.as_deref());
    let mut graph = StaticGraph::new(n);
    for (line, tokens) in lines {
        if tokens.len() != 2 {
            return Err(perr(line, "expected `<u> <v>`"));
        }
        let u = resolver.resolve(tokens[0]).ok_or_else(|| perr(line, format!("unknown vertex `{}`", tokens[0])))?;
        let v = resolver.resolve(tokens[1]).ok_or_else(|| perr(line, format!("unknown vertex `{}`", tokens[1])))?;
        graph.add_edge(u, v).map_err(|e| perr(line, e.to_string()))?;
    }
    Ok(match names {
        Some(names) => SourceGraph { graph, names },
        None => SourceGraph::new(graph),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SourceError {
    #[error("edge ({0}, {1}) out of range")]
    EdgeOutOfRange(usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("variable {0} out of range")]
    VariableOutOfRange(String),
    #[error("formula has no clauses")]
    NoClauses,
    #[error("too many variables on one side: {0}")]
    TooManyVariables(usize),
}

/// Bipartite graph with parts `x_0..x_{nx-1}` and `y_0..y_{ny-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    nx: usize,
    ny: usize,
    edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    /// Edges are `(x, y)` index pairs and keep their order.
    pub fn new(nx: usize, ny: usize, edges: Vec<(usize, usize)>) -> Result<Self, SourceError> {
        let mut seen = std::collections::BTreeSet::new();
        for &(x, y) in &edges {
            if x >= nx || y >= ny {
                return Err(SourceError::EdgeOutOfRange(x, y));
            }
            if !seen.insert((x, y)) {
                return Err(SourceError::DuplicateEdge(x, y));
            }
        }
        Ok(BipartiteGraph { nx, ny, edges })
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.edges.contains(&(x, y))
    }

    pub fn to_json(&self) -> Value {
        json!({ "type": "bipartite", "nx": self.nx, "ny": self.ny, "edges": self.edges })
    }
}

impl fmt::Display for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bipartite {} {}", self.nx, self.ny)?;
        for &(x, y) in &self.edges {
            writeln!(f, "{x} {y}")?;
        }
        Ok(())
    }
}

pub fn parse_bipartite(text: &str) -> Result<BipartiteGraph, SourceParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| perr(1, "missing `bipartite <nx> <ny>` header"))?;
    if header.len() != 3 || header[0] != "bipartite" {
        return Err(perr(hline, "expected `bipartite <nx> <ny>`"));
    }
    let (nx, ny) = (parse_count(hline, header[1])?, parse_count(hline, header[2])?);
    let mut edges = Vec::new();
    let mut last = hline;
    for (line, tokens) in lines {
        if tokens.len() != 2 {
            return Err(perr(line, "expected `<x> <y>`"));
        }
        edges.push((parse_count(line, tokens[0])?, parse_count(line, tokens[1])?));
        last = line;
    }
    BipartiteGraph::new(nx, ny, edges).map_err(|e| perr(last, e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    X,
    Y,
}

/// `x3` is `Literal { side: X, var: 2, positive: true }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub side: Side,
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn x(var: usize, positive: bool) -> Self {
        Literal { side: Side::X, var, positive }
    }

    pub fn y(var: usize, positive: bool) -> Self {
        Literal { side: Side::Y, var, positive }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.positive { "" } else { "-" };
        let side = match self.side {
            Side::X => 'x',
            Side::Y => 'y',
        };
        write!(f, "{sign}{side}{}", self.var + 1)
    }
}

/// Assignments of one side are bit masks: bit `i` is the value of variable `i`.
pub type Assignment = u64;

/// CNF formula over two variable blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatInstance {
    nx: usize,
    ny: usize,
    clauses: Vec<Vec<Literal>>,
}

/// Largest block size a gadget or the exhaustive search will accept.
pub const MAX_SIDE_VARIABLES: usize = 16;

impl SatInstance {
    pub fn new(nx: usize, ny: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, SourceError> {
        if clauses.is_empty() {
            return Err(SourceError::NoClauses);
        }
        for n in [nx, ny] {
            if n > MAX_SIDE_VARIABLES {
                return Err(SourceError::TooManyVariables(n));
            }
        }
        for lit in clauses.iter().flatten() {
            let bound = match lit.side {
                Side::X => nx,
                Side::Y => ny,
            };
            if lit.var >= bound {
                return Err(SourceError::VariableOutOfRange(lit.to_string()));
            }
        }
        Ok(SatInstance { nx, ny, clauses })
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    /// Whether the side-`side` assignment `a` falsifies every literal of
    /// clause `i` on that side (vacuously true when there are none).
    pub fn fails(&self, i: usize, side: Side, a: Assignment) -> bool {
        self.clauses[i].iter().filter(|l| l.side == side).all(|l| ((a >> l.var) & 1 == 1) != l.positive)
    }

    pub fn satisfied_by(&self, x: Assignment, y: Assignment) -> bool {
        (0..self.clauses.len()).all(|i| !(self.fails(i, Side::X, x) && self.fails(i, Side::Y, y)))
    }

    pub fn to_json(&self) -> Value {
        let clauses: Vec<Vec<String>> =
            self.clauses.iter().map(|c| c.iter().map(ToString::to_string).collect()).collect();
        json!({ "type": "sat", "nx": self.nx, "ny": self.ny, "clauses": clauses })
    }
}

impl fmt::Display for SatInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sat {} {}", self.nx, self.ny)?;
        for clause in &self.clauses {
            let lits: Vec<String> = clause.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", lits.join(" "))?;
        }
        Ok(())
    }
}

fn parse_literal(line: usize, token: &str) -> Result<Literal, SourceParseError> {
    let bad = || perr(line, format!("malformed literal `{token}`"));
    let (positive, rest) = match token.strip_prefix('-') {
        Some(rest) => (false, rest),
        None => (true, token),
    };
    let mut chars = rest.chars();
    let side = match chars.next() {
        Some('x') => Side::X,
        Some('y') => Side::Y,
        _ => return Err(bad()),
    };
    let var: usize = chars.as_str().parse().map_err(|_| bad())?;
    if var == 0 {
        return Err(bad());
    }
    Ok(Literal { side, var: var - 1, positive })
}

pub fn parse_sat(text: &str) -> Result<SatInstance, SourceParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| perr(1, "missing `sat <nx> <ny>` header"))?;
    if header.len() != 3 || header[0] != "sat" {
        return Err(perr(hline, "expected `sat <nx> <ny>`"));
    }
    let (nx, ny) = (parse_count(hline, header[1])?, parse_count(hline, header[2])?);
    let mut clauses = Vec::new();
    let mut last = hline;
    for (line, tokens) in lines {
        let clause = tokens.iter().map(|t| parse_literal(line, t)).collect::<Result<Vec<_>, _>>()?;
        clauses.push(clause);
        last = line;
    }
    SatInstance::new(nx, ny, clauses).map_err(|e| perr(last, e.to_string()))
}

/// Uniform literals over both sides; each clause gets 1 to 3 literals.
pub fn random_sat(nx: usize, ny: usize, m: usize, rng: &mut impl rand::Rng) -> Result<SatInstance, SourceError> {
    if nx + ny == 0 {
        return Err(SourceError::VariableOutOfRange("no variables".into()));
    }
    let clauses = (0..m)
        .map(|_| {
            let width = rng.gen_range(1..=3);
            (0..width)
                .map(|_| {
                    let v = rng.gen_range(0..nx + ny);
                    let positive = rng.gen_bool(0.5);
                    if v < nx {
                        Literal::x(v, positive)
                    } else {
                        Literal::y(v - nx, positive)
                    }
                })
                .collect()
        })
        .collect();
    SatInstance::new(nx, ny, clauses)
}

/// `G(n, p)` with edges in lexicographic order.
pub fn random_graph(n: usize, p: f64, rng: &mut impl rand::Rng) -> StaticGraph {
    let mut g = StaticGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    g
}

/// Random bipartite graph with each pair present with probability `p`.
pub fn random_bipartite(nx: usize, ny: usize, p: f64, rng: &mut impl rand::Rng) -> BipartiteGraph {
    let edges = (0..nx).flat_map(|x| (0..ny).map(move |y| (x, y))).filter(|_| rng.gen_bool(p)).collect();
    BipartiteGraph::new(nx, ny, edges).expect("pairs are in range and distinct")
}

pub(crate) fn vertex_name(g: &SourceGraph, v: Vertex) -> &str {
    &g.names[v]
}
