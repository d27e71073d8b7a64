//! Clique search over static graphs.

use crate::graph::{StaticGraph, Vertex};

/// Maximal cliques by Bron–Kerbosch with Tomita pivoting. Each clique is
/// sorted; the list is sorted lexicographically. `limit` caps the number
/// of cliques reported; exceeding it returns `Err(limit)`.
pub(crate) fn maximal_cliques(g: &StaticGraph, limit: usize) -> Result<Vec<Vec<Vertex>>, usize> {
    let mut out = Vec::new();
    let p: Vec<Vertex> = (0..g.vertex_count()).collect();
    let mut r = Vec::new();
    expand(g, &mut r, p, Vec::new(), &mut out, limit)?;
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    Ok(out)
}

fn expand(
    g: &StaticGraph,
    r: &mut Vec<Vertex>,
    mut p: Vec<Vertex>,
    mut x: Vec<Vertex>,
    out: &mut Vec<Vec<Vertex>>,
    limit: usize,
) -> Result<(), usize> {
    if p.is_empty() {
        if x.is_empty() {
            if out.len() >= limit {
                return Err(limit);
            }
            out.push(r.clone());
        }
        return Ok(());
    }
    // pivot maximizing |P ∩ N(u)|
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| g.has_edge(u, v)).count())
        .expect("P is non-empty");
    let branch: Vec<Vertex> = p.iter().copied().filter(|&v| !g.has_edge(pivot, v)).collect();
    for v in branch {
        let next_p = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        let next_x = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        r.push(v);
        expand(g, r, next_p, next_x, out, limit)?;
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
    Ok(())
}

/// Visits every non-empty clique among `candidates` (in the order of
/// `candidates`) until the visitor returns `true`. `adjacent` decides edges.
pub(crate) fn for_each_clique_extension(
    candidates: &[Vertex],
    adjacent: &dyn Fn(Vertex, Vertex) -> bool,
    visit: &mut dyn FnMut(&[Vertex]) -> bool,
) -> bool {
    let mut chosen = Vec::new();
    extend_clique(candidates, adjacent, &mut chosen, visit)
}

fn extend_clique(
    candidates: &[Vertex],
    adjacent: &dyn Fn(Vertex, Vertex) -> bool,
    chosen: &mut Vec<Vertex>,
    visit: &mut dyn FnMut(&[Vertex]) -> bool,
) -> bool {
    for (i, &v) in candidates.iter().enumerate() {
        chosen.push(v);
        if visit(chosen) {
            return true;
        }
        let rest: Vec<Vertex> = candidates[i + 1..].iter().copied().filter(|&w| adjacent(v, w)).collect();
        if extend_clique(&rest, adjacent, chosen, visit) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// The lexicographically smallest clique of exactly `k` vertices.
pub(crate) fn first_clique_of_size(g: &StaticGraph, k: usize) -> Option<Vec<Vertex>> {
    let mut found = None;
    for_each_clique_of_size(g, k, &mut |c| {
        found = Some(c.to_vec());
        true
    });
    found
}

/// Visits the cliques of exactly `k` vertices in lexicographic order until
/// the visitor returns `true`. Returns whether the visit was stopped.
pub(crate) fn for_each_clique_of_size(g: &StaticGraph, k: usize, visit: &mut dyn FnMut(&[Vertex]) -> bool) -> bool {
    let all: Vec<Vertex> = (0..g.vertex_count()).collect();
    let mut chosen = Vec::with_capacity(k);
    search_k(g, &all, k, &mut chosen, visit)
}

fn search_k(
    g: &StaticGraph,
    candidates: &[Vertex],
    k: usize,
    chosen: &mut Vec<Vertex>,
    visit: &mut dyn FnMut(&[Vertex]) -> bool,
) -> bool {
    if chosen.len() == k {
        return visit(chosen);
    }
    let need = k - chosen.len();
    for (i, &v) in candidates.iter().enumerate() {
        if candidates.len() - i < need {
            break;
        }
        let rest: Vec<Vertex> = candidates[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        if rest.len() + 1 < need {
            continue;
        }
        chosen.push(v);
        if search_k(g, &rest, k, chosen, visit) {
            return true;
        }
        chosen.pop();
    }
    false
}
