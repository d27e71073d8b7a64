#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use tempconn::gadgets::{Literal, SatInstance, SourceGraph};
use tempconn::oracle::TimeExpandedGraph;
use tempconn::{Model, StaticGraph, TemporalGraph, Vertex};

/// One representative per isomorphism class of simple graphs on `n`
/// vertices, edges in lexicographic order.
pub fn graphs_up_to_iso(n: usize) -> Vec<StaticGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let canon = perms
            .iter()
            .map(|p| {
                (0..pairs.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .fold(0u32, |acc, i| acc | 1 << index(p[pairs[i].0], p[pairs[i].1]))
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let edges: Vec<(usize, usize)> =
                (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            out.push(StaticGraph::from_edges(n, &edges).unwrap());
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Graphs on 1..=max_n vertices up to isomorphism.
pub fn iso_corpus(max_n: usize) -> Vec<StaticGraph> {
    (1..=max_n).flat_map(graphs_up_to_iso).collect()
}

/// Same graph with its edge list in random order.
pub fn shuffled(g: &StaticGraph, rng: &mut impl Rng) -> StaticGraph {
    let mut edges = g.edges().to_vec();
    edges.shuffle(rng);
    StaticGraph::from_edges(g.vertex_count(), &edges).unwrap()
}

pub fn source(g: &StaticGraph) -> SourceGraph {
    g.clone().into()
}

/// Non-tautological clauses with at most `max_width` literals.
pub fn all_clauses(nx: usize, ny: usize, max_width: usize) -> Vec<Vec<Literal>> {
    let vars: Vec<(bool, usize)> = (0..nx).map(|v| (true, v)).chain((0..ny).map(|v| (false, v))).collect();
    let mut out = Vec::new();
    // each variable is absent, positive or negative
    let total = 3usize.pow(vars.len() as u32);
    for code in 1..total {
        let mut c = code;
        let mut clause = Vec::new();
        for &(is_x, v) in &vars {
            match c % 3 {
                1 => clause.push(if is_x { Literal::x(v, true) } else { Literal::y(v, true) }),
                2 => clause.push(if is_x { Literal::x(v, false) } else { Literal::y(v, false) }),
                _ => {}
            }
            c /= 3;
        }
        if clause.len() <= max_width {
            out.push(clause);
        }
    }
    out
}

/// Every set of exactly `m` distinct clauses from `pool`.
pub fn formulas(nx: usize, ny: usize, pool: &[Vec<Literal>], m: usize, out: &mut Vec<SatInstance>) {
    fn rec(
        nx: usize,
        ny: usize,
        pool: &[Vec<Literal>],
        m: usize,
        start: usize,
        cur: &mut Vec<Vec<Literal>>,
        out: &mut Vec<SatInstance>,
    ) {
        if cur.len() == m {
            out.push(SatInstance::new(nx, ny, cur.clone()).unwrap());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i].clone());
            rec(nx, ny, pool, m, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(nx, ny, pool, m, 0, &mut Vec::new(), out);
}

/// Every multiset of exactly `m` clauses from `pool`.
pub fn formula_multisets(nx: usize, ny: usize, pool: &[Vec<Literal>], m: usize, out: &mut Vec<SatInstance>) {
    fn rec(
        nx: usize,
        ny: usize,
        pool: &[Vec<Literal>],
        m: usize,
        start: usize,
        cur: &mut Vec<Vec<Literal>>,
        out: &mut Vec<SatInstance>,
    ) {
        if cur.len() == m {
            out.push(SatInstance::new(nx, ny, cur.clone()).unwrap());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i].clone());
            rec(nx, ny, pool, m, i, cur, out);
            cur.pop();
        }
    }
    rec(nx, ny, pool, m, 0, &mut Vec::new(), out);
}

/// Full reachability matrix from the time-expanded graph.
pub fn oracle_matrix(g: &TemporalGraph, model: Model) -> Vec<Vec<bool>> {
    let teg = TimeExpandedGraph::new(g, model);
    (0..g.vertex_count()).map(|u| teg.reachable(u, None)).collect()
}

/// Maximal sets of vertices pairwise related by `rel`, by subset enumeration.
pub fn brute_maximal_cliques(n: usize, rel: impl Fn(Vertex, Vertex) -> bool) -> Vec<Vec<Vertex>> {
    assert!(n <= 16);
    let is_clique = |s: u32| (0..n).all(|u| s >> u & 1 == 0 || (u + 1..n).all(|v| s >> v & 1 == 0 || rel(u, v)));
    let cliques: Vec<u32> = (1u32..1 << n).filter(|&s| is_clique(s)).collect();
    let mut out: Vec<Vec<Vertex>> = cliques
        .iter()
        .filter(|&&s| (0..n).all(|v| s >> v & 1 == 1 || !is_clique(s | 1 << v)))
        .map(|&s| (0..n).filter(|&v| s >> v & 1 == 1).collect())
        .collect();
    out.sort();
    out
}
