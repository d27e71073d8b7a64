//! Parameterized search for connected sets of size at least `k` in
//! undirected temporal graphs under the non-strict model.
//!
//! Each notion has a trivial-yes case. When it does not fire, the relevant
//! neighbourhoods of the reachability digraph are bounded by a function of
//! `k` (and the number of snapshots), and the search only looks at cliques
//! inside one neighbourhood at a time.

use thiserror::Error;

use crate::cliques::for_each_clique_extension;
use crate::components::{Closedness, ComponentQuery, ConnectivityChecker, Kind};
use crate::graph::{Model, StaticGraph, TemporalGraph, Timestep, Vertex};
use crate::reachability::{reachability_digraph, symmetric_core, underlying_graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FptError {
    #[error("FPT search needs an undirected graph and the non-strict model (got {directed} graph, {model} model)")]
    Unsupported { directed: &'static str, model: Model },
    #[error("degree cap for k = {k} over {exponent} steps does not fit in 64 bits")]
    CapOverflow { k: usize, exponent: u32 },
    #[error("k must be at least {min}, got {k}")]
    InvalidK { k: usize, min: usize },
}

/// Bound on the neighbourhood size once the trivial-yes case is ruled out:
/// `(k-1)^tau` for mutual kinds and `(k-2)^(k-1)` for unilateral kinds.
///
/// `tau` counts snapshots; pass the number of distinct labels when label 0
/// is in use.
pub fn degree_caps(k: usize, tau: u32, kind: Kind) -> Result<u64, FptError> {
    if k < 2 {
        return Err(FptError::InvalidK { k, min: 2 });
    }
    let (base, exponent) = match kind {
        Kind::Mutual => (k as u64 - 1, tau),
        Kind::Unilateral => {
            (k as u64 - 2, u32::try_from(k - 1).map_err(|_| FptError::CapOverflow { k, exponent: u32::MAX })?)
        }
    };
    base.checked_pow(exponent).ok_or(FptError::CapOverflow { k, exponent })
}

/// Parameters of one search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FptBudget {
    pub k: usize,
    /// Exponent used for the mutual cap: the number of distinct labels.
    pub snapshots: u32,
    pub kind: Kind,
    /// Set once a trivial-yes case fired; the cap is then not needed.
    pub trivial_yes: bool,
}

impl FptBudget {
    pub fn cap(&self) -> Result<u64, FptError> {
        degree_caps(self.k, self.snapshots, self.kind)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FptRoute {
    /// k ≤ 2 or k > n.
    Immediate,
    /// A snapshot component with at least k vertices.
    SnapshotComponent,
    /// A vertex of static degree at least k-1.
    HighDegree,
    /// A temporal path on k vertices.
    TemporalPath,
    /// Clique search inside bounded neighbourhoods.
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FptOutcome {
    pub witness: Option<Vec<Vertex>>,
    pub budget: FptBudget,
    pub route: FptRoute,
    /// Largest neighbourhood seen by the search, with the cap it was held to.
    pub max_degree: Option<(usize, u64)>,
}

/// Whether [`fpt_find`] accepts the graph and query.
pub fn supports(g: &TemporalGraph, q: ComponentQuery) -> bool {
    !g.is_directed() && q.model == Model::NonStrict
}

/// A connected set of at least `k` vertices for `q`, or `None`.
pub fn fpt_find(g: &TemporalGraph, q: ComponentQuery, k: usize) -> Result<Option<Vec<Vertex>>, FptError> {
    fpt_search(g, q, k).map(|o| o.witness)
}

/// [`fpt_find`] with the route taken and the observed degrees.
pub fn fpt_search(g: &TemporalGraph, q: ComponentQuery, k: usize) -> Result<FptOutcome, FptError> {
    if !supports(g, q) {
        return Err(FptError::Unsupported {
            directed: if g.is_directed() { "directed" } else { "undirected" },
            model: q.model,
        });
    }
    if k == 0 {
        return Err(FptError::InvalidK { k, min: 1 });
    }
    let n = g.vertex_count();
    let mut budget = FptBudget { k, snapshots: g.layers().len() as u32, kind: q.kind, trivial_yes: false };
    let done = |witness, budget, route| Ok(FptOutcome { witness, budget, route, max_degree: None });

    if k > n {
        return done(None, budget, FptRoute::Immediate);
    }
    if k == 1 {
        return done(Some(vec![0]), budget, FptRoute::Immediate);
    }
    if k == 2 {
        // an edge connects its endpoints under every notion
        let witness = g.edges().first().map(|e| vec![e.tail.min(e.head), e.tail.max(e.head)]);
        return done(witness, budget, FptRoute::Immediate);
    }

    let trivial = match q.kind {
        Kind::Mutual => large_snapshot_component(g, k).map(|c| (c, FptRoute::SnapshotComponent)),
        Kind::Unilateral => high_degree_star(g, k)
            .map(|c| (c, FptRoute::HighDegree))
            .or_else(|| temporal_path(g, k).map(|c| (c, FptRoute::TemporalPath))),
    };
    if let Some((witness, route)) = trivial {
        budget.trivial_yes = true;
        return done(Some(witness), budget, route);
    }

    let cap = budget.cap()?;
    let r = reachability_digraph(g, q.model);
    let h = match q.kind {
        Kind::Mutual => symmetric_core(&r),
        Kind::Unilateral => underlying_graph(&r),
    };
    let max_degree = (0..n).map(|u| h.degree(u)).max().unwrap_or(0);
    debug_assert!(
        max_degree as u64 <= cap,
        "neighbourhood of size {max_degree} exceeds the cap {cap} for k = {k}, {:?}",
        q.kind
    );
    let witness = match q.closedness {
        Closedness::Open => open_search(&h, k),
        Closedness::Closed => closed_search(g, &h, q, k),
    };
    Ok(FptOutcome { witness, budget, route: FptRoute::Search, max_degree: Some((max_degree, cap)) })
}

/// First snapshot component with at least `k` vertices, sorted.
fn large_snapshot_component(g: &TemporalGraph, k: usize) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    for layer in g.layers() {
        comp.iter_mut().for_each(|c| *c = usize::MAX);
        for &s in &layer.tails {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = s;
            let mut members = vec![s];
            stack.push(s);
            while let Some(w) = stack.pop() {
                for x in layer.successors(w) {
                    if comp[x] == usize::MAX {
                        comp[x] = s;
                        members.push(x);
                        stack.push(x);
                    }
                }
            }
            if members.len() >= k {
                members.sort_unstable();
                return Some(members);
            }
        }
    }
    None
}

/// A vertex with at least `k-1` neighbours, with its first `k-1` neighbours.
fn high_degree_star(g: &TemporalGraph, k: usize) -> Option<Vec<Vertex>> {
    let s = g.underlying_static();
    let u = (0..g.vertex_count()).find(|&u| s.degree(u) >= k - 1)?;
    let mut set: Vec<Vertex> = std::iter::once(u).chain(s.neighbors(u).take(k - 1)).collect();
    set.sort_unstable();
    Some(set)
}

/// Vertex set of a temporal path on `k` vertices. Along a fixed vertex
/// sequence, taking the earliest usable label at each step is optimal.
fn temporal_path(g: &TemporalGraph, k: usize) -> Option<Vec<Vertex>> {
    let s = g.underlying_static();
    let mut on_path = vec![false; g.vertex_count()];
    let mut path = Vec::with_capacity(k);
    for u in 0..g.vertex_count() {
        on_path[u] = true;
        path.push(u);
        if extend_path(g, &s, k, 0, &mut path, &mut on_path) {
            path.sort_unstable();
            return Some(path);
        }
        path.pop();
        on_path[u] = false;
    }
    None
}

fn extend_path(
    g: &TemporalGraph,
    s: &StaticGraph,
    k: usize,
    time: Timestep,
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
) -> bool {
    if path.len() == k {
        return true;
    }
    let u = *path.last().expect("path starts non-empty");
    for v in s.neighbors(u) {
        if on_path[v] {
            continue;
        }
        let labels = g.labels(u, v).unwrap_or(&[]);
        let Some(&t) = labels.iter().find(|&&t| t >= time) else {
            continue;
        };
        on_path[v] = true;
        path.push(v);
        if extend_path(g, s, k, t, path, on_path) {
            return true;
        }
        path.pop();
        on_path[v] = false;
    }
    false
}

/// Lexicographically smallest `k`-clique of `h`, built from each vertex and
/// its larger neighbours.
fn open_search(h: &StaticGraph, k: usize) -> Option<Vec<Vertex>> {
    let mut found = None;
    for u in 0..h.vertex_count() {
        let higher: Vec<Vertex> = h.neighbors(u).filter(|&v| v > u).collect();
        if higher.len() + 1 < k {
            continue;
        }
        for_each_clique_extension(&higher, &|a, b| h.has_edge(a, b), &mut |t| {
            if t.len() + 1 == k {
                found = Some(std::iter::once(u).chain(t.iter().copied()).collect::<Vec<_>>());
                return true;
            }
            false
        });
        if found.is_some() {
            break;
        }
    }
    found
}

/// First closed connected set of at least `k` vertices among the cliques of
/// `h` formed by a vertex and its larger neighbours.
fn closed_search(g: &TemporalGraph, h: &StaticGraph, q: ComponentQuery, k: usize) -> Option<Vec<Vertex>> {
    let mut checker = ConnectivityChecker::new(g, q.model);
    let mut found = None;
    let mut set = Vec::with_capacity(k);
    for u in 0..h.vertex_count() {
        let higher: Vec<Vertex> = h.neighbors(u).filter(|&v| v > u).collect();
        if higher.len() + 1 < k {
            continue;
        }
        for_each_clique_extension(&higher, &|a, b| h.has_edge(a, b), &mut |t| {
            if t.len() + 1 < k {
                return false;
            }
            set.clear();
            set.push(u);
            set.extend_from_slice(t);
            if checker.check(&set, q.kind, Closedness::Closed) {
                found = Some(set.clone());
                return true;
            }
            false
        });
        if found.is_some() {
            break;
        }
    }
    found
}
