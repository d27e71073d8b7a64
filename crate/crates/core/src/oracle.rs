//! Brute-force reference implementations. Nothing here calls into the
//! reachability or components modules; each decision is made directly from
//! the definitions, favouring obviousness over speed.

use std::collections::VecDeque;

use thiserror::Error;

use crate::components::{ComponentQuery, ComponentReport, Kind};
use crate::gadgets::{Assignment, BipartiteGraph, SatInstance, Side};
use crate::graph::{Model, StaticGraph, TemporalGraph, Timestep, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance size {size} exceeds the oracle bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("vertex {0} out of range")]
    InvalidVertex(Vertex),
}

fn bounded(size: usize, bound: usize) -> Result<(), OracleError> {
    if size > bound {
        Err(OracleError::TooLarge { size, bound })
    } else {
        Ok(())
    }
}

/// Nodes `(v, t)` for every vertex and time layer, with waiting arcs
/// `(v, t)→(v, t+1)`. A temporal edge active at `t` gives `(u, t)→(v, t)`
/// in the non-strict model and `(u, t)→(v, t+1)` in the strict model, which
/// has one extra layer so the last label can still be crossed.
#[derive(Debug, Clone)]
pub struct TimeExpandedGraph {
    n: usize,
    layers: usize,
    model: Model,
    out: Vec<Vec<usize>>,
}

impl TimeExpandedGraph {
    pub fn new(g: &TemporalGraph, model: Model) -> Self {
        let n = g.vertex_count();
        let tau = g.lifetime() as usize;
        let layers = match model {
            Model::NonStrict => tau + 1,
            Model::Strict => tau + 2,
        };
        let mut out = vec![Vec::new(); n * layers];
        let node = |v: usize, t: usize| t * n + v;
        for t in 0..layers - 1 {
            for v in 0..n {
                out[node(v, t)].push(node(v, t + 1));
            }
        }
        for e in g.edges() {
            let mut arcs = vec![(e.tail, e.head)];
            if !g.is_directed() {
                arcs.push((e.head, e.tail));
            }
            for &t in &e.labels {
                let t = t as usize;
                let arrive = if model == Model::Strict { t + 1 } else { t };
                for &(u, v) in &arcs {
                    out[node(u, t)].push(node(v, arrive));
                }
            }
        }
        TimeExpandedGraph { n, layers, model, out }
    }

    pub fn node_count(&self) -> usize {
        self.out.len()
    }

    pub fn node(&self, v: Vertex, t: usize) -> usize {
        t * self.n + v
    }

    /// Nodes reachable from `(source, 0)`, optionally through vertices of
    /// `mask` only.
    pub fn search(&self, source: Vertex, mask: Option<&[bool]>) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        let start = self.node(source, 0);
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.out[x] {
                if !seen[y] && mask.is_none_or(|m| m[y % self.n]) {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Final reachability row of `source`.
    pub fn reachable(&self, source: Vertex, mask: Option<&[bool]>) -> Vec<bool> {
        let seen = self.search(source, mask);
        (0..self.n).map(|v| seen[self.node(v, self.layers - 1)]).collect()
    }

    /// Vertices reachable by walks that finish by time `i`.
    pub fn reachable_by(&self, source: Vertex, i: Timestep) -> Vec<Vertex> {
        let seen = self.search(source, None);
        let layer = match self.model {
            Model::NonStrict => i as usize,
            Model::Strict => i as usize + 1,
        }
        .min(self.layers - 1);
        (0..self.n).filter(|&v| seen[self.node(v, layer)]).collect()
    }
}

pub fn oracle_reaches(g: &TemporalGraph, u: Vertex, v: Vertex, model: Model) -> Result<bool, OracleError> {
    for x in [u, v] {
        if x >= g.vertex_count() {
            return Err(OracleError::InvalidVertex(x));
        }
    }
    Ok(TimeExpandedGraph::new(g, model).reachable(u, None)[v])
}

/// `𝓡_i(u)` for every `i` in `0..=τ`.
pub fn oracle_reach_profile(g: &TemporalGraph, u: Vertex, model: Model) -> Result<Vec<Vec<Vertex>>, OracleError> {
    if u >= g.vertex_count() {
        return Err(OracleError::InvalidVertex(u));
    }
    let teg = TimeExpandedGraph::new(g, model);
    Ok((0..=g.lifetime()).map(|i| teg.reachable_by(u, i)).collect())
}

pub const COMPONENT_ORACLE_BOUND: usize = 15;

/// Components by testing every vertex subset.
pub fn oracle_enumerate_components(g: &TemporalGraph, q: ComponentQuery) -> Result<ComponentReport, OracleError> {
    oracle_enumerate_components_bounded(g, q, COMPONENT_ORACLE_BOUND)
}

pub fn oracle_enumerate_components_bounded(
    g: &TemporalGraph,
    q: ComponentQuery,
    bound: usize,
) -> Result<ComponentReport, OracleError> {
    let n = g.vertex_count();
    bounded(n, bound.min(30))?;
    let teg = TimeExpandedGraph::new(g, q.model);
    let full: Vec<Vec<bool>> = (0..n).map(|u| teg.reachable(u, None)).collect();
    let members = |s: u32| (0..n).filter(move |&v| s >> v & 1 == 1);
    let pair_ok = |r: &dyn Fn(Vertex, Vertex) -> bool, u: Vertex, v: Vertex| match q.kind {
        Kind::Mutual => r(u, v) && r(v, u),
        Kind::Unilateral => r(u, v) || r(v, u),
    };

    let total = 1u32 << n;
    let mut connected = vec![false; total as usize];
    for s in 1..total {
        let vs: Vec<Vertex> = members(s).collect();
        connected[s as usize] = if q.is_closed() {
            let mask: Vec<bool> = (0..n).map(|v| s >> v & 1 == 1).collect();
            let rows: Vec<Vec<bool>> =
                (0..n).map(|u| if mask[u] { teg.reachable(u, Some(&mask)) } else { Vec::new() }).collect();
            let r = |a: Vertex, b: Vertex| rows[a][b];
            vs.iter().all(|&a| vs.iter().all(|&b| a >= b || pair_ok(&r, a, b)))
        } else {
            let r = |a: Vertex, b: Vertex| full[a][b];
            vs.iter().all(|&a| vs.iter().all(|&b| a >= b || pair_ok(&r, a, b)))
        };
    }
    // above[s]: some connected set contains s
    let mut above = connected.clone();
    for s in (1..total).rev() {
        for v in 0..n {
            if s >> v & 1 == 0 && above[(s | 1 << v) as usize] {
                above[s as usize] = true;
            }
        }
    }
    let mut components: Vec<Vec<Vertex>> = (1..total)
        .filter(|&s| connected[s as usize] && (0..n).all(|v| s >> v & 1 == 1 || !above[(s | 1 << v) as usize]))
        .map(|s| members(s).collect())
        .collect();
    components.sort();
    Ok(ComponentReport { query: q, components })
}

/// Exact clique number by branch and bound; 0 for the empty graph.
pub fn oracle_max_clique(g: &StaticGraph) -> Result<usize, OracleError> {
    bounded(g.vertex_count(), 20)?;
    fn grow(g: &StaticGraph, size: usize, candidates: &[Vertex], best: &mut usize) {
        *best = (*best).max(size);
        for (i, &v) in candidates.iter().enumerate() {
            if size + candidates.len() - i <= *best {
                return;
            }
            let rest: Vec<Vertex> = candidates[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            grow(g, size + 1, &rest, best);
        }
    }
    let all: Vec<Vertex> = (0..g.vertex_count()).collect();
    let mut best = 0;
    grow(g, 0, &all, &mut best);
    Ok(best)
}

/// Largest `|A|·|B|` with every pair of `A × B` an edge.
pub fn oracle_biclique_edges(h: &BipartiteGraph) -> Result<usize, OracleError> {
    bounded(h.nx() + h.ny(), 16)?;
    let mut best = 0;
    for a in 1u32..1 << h.nx() {
        let common = (0..h.ny()).filter(|&y| (0..h.nx()).all(|x| a >> x & 1 == 0 || h.has_edge(x, y))).count();
        best = best.max(a.count_ones() as usize * common);
    }
    Ok(best)
}

/// Largest edge subset `F` such that any two edges `xy`, `x'y'` of `F` with
/// `x ≠ x'` and `y ≠ y'` are joined by `xy'` or `x'y` in `F`.
pub fn oracle_2k2free_edges(h: &BipartiteGraph) -> Result<usize, OracleError> {
    let edges = h.edges();
    bounded(edges.len(), 16)?;
    let m = edges.len();
    let mut best = 0;
    for f in 0u32..1 << m {
        let size = f.count_ones() as usize;
        if size <= best {
            continue;
        }
        let has = |x: usize, y: usize| (0..m).any(|i| f >> i & 1 == 1 && edges[i] == (x, y));
        let ok = (0..m).filter(|&i| f >> i & 1 == 1).all(|i| {
            (i + 1..m).filter(|&j| f >> j & 1 == 1).all(|j| {
                let ((x, y), (x2, y2)) = (edges[i], edges[j]);
                x == x2 || y == y2 || has(x, y2) || has(x2, y)
            })
        });
        if ok {
            best = size;
        }
    }
    Ok(best)
}

fn is_2club(g: &StaticGraph, set: u32) -> bool {
    let n = g.vertex_count();
    let inside = |v: usize| set >> v & 1 == 1;
    (0..n).filter(|&u| inside(u)).all(|u| {
        (0..n)
            .filter(|&v| inside(v) && v != u)
            .all(|v| g.has_edge(u, v) || (0..n).any(|w| inside(w) && g.has_edge(u, w) && g.has_edge(w, v)))
    })
}

/// `X` induces diameter at most 2 and no strict superset does.
pub fn oracle_is_maximal_2club(g: &StaticGraph, x: &[Vertex]) -> Result<bool, OracleError> {
    let n = g.vertex_count();
    bounded(n, 15)?;
    if let Some(&v) = x.iter().find(|&&v| v >= n) {
        return Err(OracleError::InvalidVertex(v));
    }
    let set = x.iter().fold(0u32, |s, &v| s | 1 << v);
    if set == 0 || !is_2club(g, set) {
        return Ok(false);
    }
    Ok(!(0u32..1 << n).any(|s| s != set && s & set == set && is_2club(g, s)))
}

/// Satisfiability by trying every pair of block assignments.
pub fn oracle_sat(phi: &SatInstance) -> Result<bool, OracleError> {
    bounded(phi.nx() + phi.ny(), 20)?;
    for x in 0..1u64 << phi.nx() {
        for y in 0..1u64 << phi.ny() {
            let sat = phi.clauses().iter().all(|clause| {
                clause.iter().any(|l| {
                    let a: Assignment = match l.side {
                        Side::X => x,
                        Side::Y => y,
                    };
                    ((a >> l.var) & 1 == 1) == l.positive
                })
            });
            if sat {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fig1, fig1_set};
    use crate::gadgets::{parse_sat, Literal};
    use crate::graph::TemporalEdge;

    #[test]
    fn fig1_reachability() {
        let g = fig1();
        let (a, e, f) =
            (g.vertex_by_name("a").unwrap(), g.vertex_by_name("e").unwrap(), g.vertex_by_name("f").unwrap());
        assert!(oracle_reaches(&g, a, e, Model::NonStrict).unwrap());
        assert!(!oracle_reaches(&g, a, e, Model::Strict).unwrap());
        assert!(!oracle_reaches(&g, a, f, Model::NonStrict).unwrap());
        assert!(oracle_reaches(&g, a, a, Model::Strict).unwrap());
        assert_eq!(oracle_reaches(&g, a, 99, Model::Strict), Err(OracleError::InvalidVertex(99)));
        let profile = oracle_reach_profile(&g, a, Model::NonStrict).unwrap();
        assert_eq!(profile[1], fig1_set(&g, &["a", "b"]));
        assert_eq!(profile[2], fig1_set(&g, &["a", "b", "c", "e"]));
    }

    #[test]
    fn time_expanded_node_count() {
        let g = fig1();
        assert_eq!(TimeExpandedGraph::new(&g, Model::NonStrict).node_count(), 7 * 7);
    }

    #[test]
    fn fig1_components() {
        let g = fig1();
        let closed = oracle_enumerate_components(&g, ComponentQuery::closed_tcc(Model::NonStrict)).unwrap();
        assert!(closed.contains(&fig1_set(&g, &["a", "b", "c", "d"])));
        let tucc = oracle_enumerate_components(&g, ComponentQuery::tucc(Model::NonStrict)).unwrap();
        assert!(tucc.contains(&fig1_set(&g, &["a", "b", "c", "d", "e", "f"])));
    }

    #[test]
    fn edgeless_components_are_singletons() {
        let g = TemporalGraph::new(false, 3, Vec::<TemporalEdge>::new()).unwrap();
        for q in ComponentQuery::all() {
            let r = oracle_enumerate_components(&g, q).unwrap();
            assert_eq!(r.components, vec![vec![0], vec![1], vec![2]]);
        }
        let big = TemporalGraph::new(false, 16, Vec::<TemporalEdge>::new()).unwrap();
        assert!(oracle_enumerate_components(&big, ComponentQuery::tcc(Model::Strict)).is_err());
    }

    #[test]
    fn cliques() {
        assert_eq!(oracle_max_clique(&StaticGraph::complete(3)).unwrap(), 3);
        assert_eq!(oracle_max_clique(&StaticGraph::path(3)).unwrap(), 2);
        assert_eq!(oracle_max_clique(&StaticGraph::new(4)).unwrap(), 1);
        assert_eq!(oracle_max_clique(&StaticGraph::new(0)).unwrap(), 0);
    }

    #[test]
    fn bipartite_measures() {
        let k22 = BipartiteGraph::new(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let single = BipartiteGraph::new(1, 1, vec![(0, 0)]).unwrap();
        let two_k2 = BipartiteGraph::new(2, 2, vec![(0, 0), (1, 1)]).unwrap();
        // x0 - y0 - x1 - y1
        let p4 = BipartiteGraph::new(2, 2, vec![(0, 0), (1, 0), (1, 1)]).unwrap();
        assert_eq!(oracle_biclique_edges(&k22).unwrap(), 4);
        assert_eq!(oracle_biclique_edges(&single).unwrap(), 1);
        assert_eq!(oracle_biclique_edges(&two_k2).unwrap(), 1);
        assert_eq!(oracle_2k2free_edges(&two_k2).unwrap(), 1);
        assert_eq!(oracle_2k2free_edges(&k22).unwrap(), 4);
        // the end edges of P4 are joined by the middle edge
        assert_eq!(oracle_2k2free_edges(&p4).unwrap(), 3);
    }

    #[test]
    fn two_clubs() {
        let p4 = StaticGraph::path(4);
        assert!(oracle_is_maximal_2club(&p4, &[0, 1, 2]).unwrap());
        assert!(!oracle_is_maximal_2club(&p4, &[0, 1, 2, 3]).unwrap());
        assert!(!oracle_is_maximal_2club(&StaticGraph::complete(2), &[0]).unwrap());
        assert!(oracle_is_maximal_2club(&StaticGraph::path(3), &[0, 1, 2]).unwrap());
        assert!(!oracle_is_maximal_2club(&p4, &[]).unwrap());
    }

    #[test]
    fn sat() {
        let contradiction =
            SatInstance::new(1, 1, vec![vec![Literal::x(0, true)], vec![Literal::x(0, false)]]).unwrap();
        assert!(!oracle_sat(&contradiction).unwrap());
        assert!(
            oracle_sat(&SatInstance::new(1, 1, vec![vec![Literal::x(0, true), Literal::y(0, true)]]).unwrap()).unwrap()
        );
        let fig = parse_sat("sat 2 2\nx1 -x2 y1\n-x1 -y1 y2\nx2 y1 -y2\n").unwrap();
        assert!(oracle_sat(&fig).unwrap());
    }
}
