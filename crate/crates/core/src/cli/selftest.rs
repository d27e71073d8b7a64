//! Randomized cross-checks of the algorithms against the oracles. Every
//! suite draws from one seeded generator, so a seed reproduces a run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::components::{enumerate_components, has_component_of_size, is_connected_set, Algo, Budget, ComponentQuery};
use crate::fpt::fpt_find;
use crate::gadgets::{self, SourceGraph};
use crate::graph::{Model, TemporalGraph, Timestep, Vertex};
use crate::oracle::{
    oracle_biclique_edges, oracle_enumerate_components, oracle_max_clique, oracle_reach_profile, oracle_sat,
};
use crate::random::{random_temporal_graph, RandomGraphParams};
use crate::reachability::reach_profile;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelftestConfig {
    pub trials: usize,
    pub max_n: usize,
    pub seed: u64,
    /// Plants a reachability bug, to exercise the failure path.
    pub inject_failure: bool,
}

#[derive(Debug, Clone)]
pub struct Failure {
    pub suite: &'static str,
    pub query: String,
    /// Minimized where the suite allows it.
    pub graph: TemporalGraph,
}

#[derive(Debug, Clone, Default)]
pub struct SelftestReport {
    pub lines: Vec<String>,
    pub failure: Option<Failure>,
}

pub fn run_selftest(config: &SelftestConfig) -> SelftestReport {
    let mut report = SelftestReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let suites: [(&'static str, SuiteFn); 4] = [
        ("reachability", reachability_suite),
        ("components", components_suite),
        ("fpt", fpt_suite),
        ("gadgets", gadget_suite),
    ];
    for (name, suite) in suites {
        match suite(config, &mut rng) {
            Ok(()) => report.lines.push(format!("{name}: {} trials ok", config.trials)),
            Err(failure) => {
                report.lines.push(format!("{name}: FAILED ({})", failure.query));
                report.failure = Some(*failure);
                break;
            }
        }
    }
    report
}

type SuiteFn = fn(&SelftestConfig, &mut ChaCha8Rng) -> Result<(), Box<Failure>>;

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize, directed: bool, max_tau: Timestep) -> TemporalGraph {
    let mut p = RandomGraphParams::new(rng.gen_range(1..=max_n.max(1)), directed, rng.gen_range(0..=max_tau));
    p.edge_probability = rng.gen_range(0.15..0.6);
    p.max_labels = rng.gen_range(1..=3);
    p.allow_zero = rng.gen_bool(0.3);
    random_temporal_graph(&p, rng)
}

/// Greedily drops vertices, edges and labels while `fails` still holds.
pub fn minimize(g: &TemporalGraph, fails: impl Fn(&TemporalGraph) -> bool) -> TemporalGraph {
    let mut best = g.clone();
    loop {
        let mut improved = false;
        for v in 0..best.vertex_count() {
            let keep: Vec<Vertex> = (0..best.vertex_count()).filter(|&w| w != v).collect();
            let (smaller, _) = best.induced(&keep).expect("indices in range");
            if fails(&smaller) {
                best = smaller;
                improved = true;
                break;
            }
        }
        if improved {
            continue;
        }
        'edges: for i in 0..best.edges().len() {
            let labels = &best.edges()[i].labels;
            let mut variants: Vec<Option<Vec<Timestep>>> = vec![None];
            if labels.len() > 1 {
                variants.extend((0..labels.len()).map(|j| {
                    let mut l = labels.clone();
                    l.remove(j);
                    Some(l)
                }));
            }
            for variant in variants {
                let mut edges = best.edges().to_vec();
                match variant {
                    None => {
                        edges.remove(i);
                    }
                    Some(l) => edges[i].labels = l,
                }
                let Ok(candidate) = TemporalGraph::new(best.is_directed(), best.vertex_count(), edges) else {
                    continue;
                };
                let candidate = match best.names() {
                    Some(names) => candidate.with_names(names.to_vec()).expect("same vertex set"),
                    None => candidate,
                };
                if fails(&candidate) {
                    best = candidate;
                    improved = true;
                    break 'edges;
                }
            }
        }
        if !improved {
            return best;
        }
    }
}

fn reach_mismatch(g: &TemporalGraph, model: Model, inject: bool) -> bool {
    (0..g.vertex_count()).any(|u| {
        let fast = reach_profile(g, u, model).expect("valid vertex");
        let slow = oracle_reach_profile(g, u, model).expect("valid vertex");
        (0..=g.lifetime()).any(|i| {
            let mut row = fast.at(i);
            if inject && u == 0 && i == g.lifetime() && !g.edges().is_empty() {
                // planted bug: forget the last reached vertex
                row.pop();
            }
            row != slow[i as usize]
        })
    })
}

fn reachability_suite(c: &SelftestConfig, rng: &mut ChaCha8Rng) -> Result<(), Box<Failure>> {
    for _ in 0..c.trials {
        let directed = rng.gen_bool(0.5);
        let g = random_graph(rng, c.max_n, directed, 6);
        for model in [Model::NonStrict, Model::Strict] {
            if reach_mismatch(&g, model, c.inject_failure) {
                let small = minimize(&g, |h| reach_mismatch(h, model, c.inject_failure));
                return Err(Box::new(Failure {
                    suite: "reachability",
                    query: format!("reach_profile, {model} model"),
                    graph: small,
                }));
            }
        }
    }
    Ok(())
}

fn components_mismatch(g: &TemporalGraph, q: ComponentQuery) -> bool {
    let fast = enumerate_components(g, q, &Budget::default()).map(|r| r.components);
    let slow = oracle_enumerate_components(g, q).map(|r| r.components);
    match (fast, slow) {
        (Ok(a), Ok(b)) => a != b,
        _ => true,
    }
}

fn components_suite(c: &SelftestConfig, rng: &mut ChaCha8Rng) -> Result<(), Box<Failure>> {
    for _ in 0..c.trials {
        let directed = rng.gen_bool(0.5);
        let g = random_graph(rng, c.max_n.min(7), directed, 4);
        for q in ComponentQuery::all() {
            if components_mismatch(&g, q) {
                let small = minimize(&g, |h| components_mismatch(h, q));
                return Err(Box::new(Failure { suite: "components", query: format!("enumerate {q}"), graph: small }));
            }
        }
    }
    Ok(())
}

fn fpt_mismatch(g: &TemporalGraph, q: ComponentQuery, k: usize) -> bool {
    let fast = match fpt_find(g, q, k) {
        Ok(w) => w,
        Err(_) => return true,
    };
    let slow = has_component_of_size(g, q, k, Algo::Brute, &Budget::default());
    match (fast, slow) {
        (Some(w), Ok(Some(_))) => w.len() < k || !is_connected_set(g, &w, q).unwrap_or(false),
        (None, Ok(None)) => false,
        _ => true,
    }
}

fn fpt_suite(c: &SelftestConfig, rng: &mut ChaCha8Rng) -> Result<(), Box<Failure>> {
    for _ in 0..c.trials {
        let g = random_graph(rng, c.max_n.min(12), false, 3);
        for q in ComponentQuery::all().into_iter().filter(|q| q.model == Model::NonStrict) {
            for k in 2..=4 {
                if fpt_mismatch(&g, q, k) {
                    let small = minimize(&g, |h| fpt_mismatch(h, q, k));
                    return Err(Box::new(Failure { suite: "fpt", query: format!("{q}, k = {k}"), graph: small }));
                }
            }
        }
    }
    Ok(())
}

fn gadget_failure(query: String, graph: TemporalGraph) -> Box<Failure> {
    Box::new(Failure { suite: "gadgets", query, graph })
}

fn yes(g: &TemporalGraph, q: ComponentQuery, k: usize) -> bool {
    has_component_of_size(g, q, k, Algo::Brute, &Budget::default()).ok().flatten().is_some()
}

fn gadget_suite(c: &SelftestConfig, rng: &mut ChaCha8Rng) -> Result<(), Box<Failure>> {
    for trial in 0..c.trials {
        match trial % 4 {
            0 => {
                let n = rng.gen_range(1..=c.max_n.clamp(1, 5));
                let src: SourceGraph = gadgets::random_graph(n, rng.gen_range(0.3..0.9), rng).into();
                let omega = oracle_max_clique(&src.graph).expect("small graph");
                let tau2 = gadgets::gadget_clique_dir_tau2(&src).expect("valid source");
                let tau3 = gadgets::gadget_clique_closed_dir_tau3(&src, false).expect("valid source");
                for k in 3..=5 {
                    let clique = omega >= k;
                    if yes(&tau2.graph, ComponentQuery::tcc(Model::NonStrict), k) != clique {
                        return Err(gadget_failure(format!("dir-tau2 gadget, tcc >= {k}"), tau2.graph));
                    }
                    if yes(&tau3.graph, ComponentQuery::closed_tcc(Model::NonStrict), 2 * k) != clique {
                        return Err(gadget_failure(
                            format!("closed-dir-tau3 gadget, closed tcc >= {}", 2 * k),
                            tau3.graph,
                        ));
                    }
                }
            }
            1 => {
                let n = rng.gen_range(1..=c.max_n.clamp(1, 4));
                let src: SourceGraph = gadgets::random_graph(n, rng.gen_range(0.3..0.9), rng).into();
                let omega = oracle_max_clique(&src.graph).expect("small graph");
                let gadget = gadgets::gadget_clique_tcc(&src).expect("valid source");
                for k in 3..=4 {
                    if yes(&gadget.graph, ComponentQuery::tcc(Model::NonStrict), 2 * k) != (omega >= k) {
                        return Err(gadget_failure(format!("clique-tcc gadget, tcc >= {}", 2 * k), gadget.graph));
                    }
                }
            }
            2 => {
                let (nx, ny) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
                let h = gadgets::random_bipartite(nx, ny, rng.gen_range(0.3..0.9), rng);
                if h.edges().is_empty() {
                    continue;
                }
                let best = oracle_biclique_edges(&h).expect("small graph");
                let gadget = gadgets::gadget_linegraph_bipartite(&h).expect("non-empty source");
                for k in 1..=h.edges().len() {
                    if yes(&gadget.graph, ComponentQuery::closed_tcc(Model::NonStrict), k) != (best >= k) {
                        return Err(gadget_failure(format!("line-bipartite gadget, closed tcc >= {k}"), gadget.graph));
                    }
                }
            }
            _ => {
                let n = rng.gen_range(1..=2);
                let phi = gadgets::random_sat(n, n, rng.gen_range(1..=4), rng).expect("valid sizes");
                let sat = oracle_sat(&phi).expect("small formula");
                let conn = gadgets::gadget_sat_connected(&phi).expect("small formula");
                let all = conn.graph.vertex_count();
                if yes(&conn.graph, ComponentQuery::tcc(Model::NonStrict), all) == sat {
                    return Err(gadget_failure("sat-conn gadget, temporally connected".into(), conn.graph));
                }
                let uni = gadgets::gadget_sat_unilateral(&phi).expect("small formula");
                let all = uni.graph.vertex_count();
                if yes(&uni.graph, ComponentQuery::tucc(Model::NonStrict), all) == sat {
                    return Err(gadget_failure("sat-uni gadget, unilaterally connected".into(), uni.graph));
                }
            }
        }
    }
    Ok(())
}
