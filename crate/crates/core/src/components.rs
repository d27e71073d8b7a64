//! Connected sets and components for the four notions: tcc, tucc,
//! closed tcc and closed tucc.
//!
//! Open connectivity is a pairwise property of the reachability digraph
//! `R`, so tccs are the maximal cliques of its symmetric core and tuccs the
//! maximal cliques of its underlying graph. Closed connectivity depends on
//! the induced temporal subgraph and is not hereditary; closed components
//! are searched inside the maximal cliques of the same graphs, since every
//! closed connected set is a (full) clique of `R`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::cliques::{first_clique_of_size, for_each_clique_extension, for_each_clique_of_size, maximal_cliques};
use crate::fpt::{self, FptError};
use crate::graph::{Model, StaticGraph, TemporalGraph, Vertex};
use crate::reachability::{reachability_digraph, symmetric_core, underlying_graph, ReachabilityDigraph, Sweep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// Reachability in both directions for every pair.
    Mutual,
    /// Reachability in at least one direction for every pair.
    Unilateral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Closedness {
    /// Walks may leave the set.
    Open,
    /// Walks must stay inside the set.
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentQuery {
    pub kind: Kind,
    pub closedness: Closedness,
    pub model: Model,
}

impl ComponentQuery {
    pub fn new(kind: Kind, closedness: Closedness, model: Model) -> Self {
        ComponentQuery { kind, closedness, model }
    }

    pub fn tcc(model: Model) -> Self {
        Self::new(Kind::Mutual, Closedness::Open, model)
    }

    pub fn tucc(model: Model) -> Self {
        Self::new(Kind::Unilateral, Closedness::Open, model)
    }

    pub fn closed_tcc(model: Model) -> Self {
        Self::new(Kind::Mutual, Closedness::Closed, model)
    }

    pub fn closed_tucc(model: Model) -> Self {
        Self::new(Kind::Unilateral, Closedness::Closed, model)
    }

    pub fn is_closed(&self) -> bool {
        self.closedness == Closedness::Closed
    }

    /// `tcc`, `tucc`, `closed tcc` or `closed tucc`.
    pub fn notion(&self) -> &'static str {
        match (self.kind, self.closedness) {
            (Kind::Mutual, Closedness::Open) => "tcc",
            (Kind::Unilateral, Closedness::Open) => "tucc",
            (Kind::Mutual, Closedness::Closed) => "closed tcc",
            (Kind::Unilateral, Closedness::Closed) => "closed tucc",
        }
    }

    /// Every combination of kind, closedness and model.
    pub fn all() -> Vec<ComponentQuery> {
        let mut out = Vec::with_capacity(8);
        for model in [Model::NonStrict, Model::Strict] {
            for closedness in [Closedness::Open, Closedness::Closed] {
                for kind in [Kind::Mutual, Kind::Unilateral] {
                    out.push(Self::new(kind, closedness, model));
                }
            }
        }
        out
    }
}

impl fmt::Display for ComponentQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.notion(), self.model)
    }
}

/// Hard limits for the exponential searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximal cliques enumerated per call.
    pub max_cliques: usize,
    /// Candidate sets tested per clique (enumeration) or per call (maximality, witness search).
    pub max_subsets: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_cliques: 1 << 20, max_subsets: 1 << 22 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComponentError {
    #[error("vertex {0} out of range")]
    InvalidVertex(Vertex),
    #[error("k must be at least 1")]
    InvalidK,
    #[error("{resource} budget of {limit} exhausted")]
    BudgetExceeded { resource: &'static str, limit: usize },
    #[error(transparent)]
    Fpt(#[from] FptError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub query: ComponentQuery,
    /// Each set sorted ascending; sets sorted lexicographically.
    pub components: Vec<Vec<Vertex>>,
}

impl ComponentReport {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn max_size(&self) -> usize {
        self.components.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn contains(&self, set: &[Vertex]) -> bool {
        let mut set = set.to_vec();
        set.sort_unstable();
        self.components.binary_search(&set).is_ok()
    }
}

/// Connectivity tests with reusable sweep buffers.
pub(crate) struct ConnectivityChecker<'g> {
    sweep: Sweep<'g>,
    mask: Vec<bool>,
    rows: Vec<bool>,
}

impl<'g> ConnectivityChecker<'g> {
    pub(crate) fn new(g: &'g TemporalGraph, model: Model) -> Self {
        ConnectivityChecker { sweep: Sweep::new(g, model), mask: vec![false; g.vertex_count()], rows: Vec::new() }
    }

    /// `set` must be sorted, duplicate-free and in range.
    pub(crate) fn check(&mut self, set: &[Vertex], kind: Kind, closedness: Closedness) -> bool {
        if set.len() <= 1 {
            return true;
        }
        let closed = closedness == Closedness::Closed;
        if closed {
            set.iter().for_each(|&v| self.mask[v] = true);
        }
        let k = set.len();
        self.rows.clear();
        self.rows.resize(k * k, false);
        let mut ok = true;
        for (i, &u) in set.iter().enumerate() {
            let reached = self.sweep.run(u, if closed { Some(&self.mask) } else { None });
            match kind {
                Kind::Mutual => {
                    if set.iter().any(|&v| !reached[v]) {
                        ok = false;
                        break;
                    }
                }
                Kind::Unilateral => {
                    for (j, &v) in set.iter().enumerate() {
                        self.rows[i * k + j] = reached[v];
                    }
                }
            }
        }
        if ok && kind == Kind::Unilateral {
            ok = (0..k).all(|i| (i + 1..k).all(|j| self.rows[i * k + j] || self.rows[j * k + i]));
        }
        if closed {
            set.iter().for_each(|&v| self.mask[v] = false);
        }
        ok
    }
}

fn normalize(g: &TemporalGraph, set: &[Vertex]) -> Result<Vec<Vertex>, ComponentError> {
    let mut set = set.to_vec();
    set.sort_unstable();
    set.dedup();
    match set.iter().find(|&&v| v >= g.vertex_count()) {
        Some(&v) => Err(ComponentError::InvalidVertex(v)),
        None => Ok(set),
    }
}

/// Pairwise relation of `R` matching the query kind.
fn related(r: &ReachabilityDigraph, kind: Kind, u: Vertex, v: Vertex) -> bool {
    match kind {
        Kind::Mutual => r.has_arc(u, v) && r.has_arc(v, u),
        Kind::Unilateral => r.has_arc(u, v) || r.has_arc(v, u),
    }
}

/// Static graph whose cliques are the candidate sets for `kind`: the
/// symmetric core of `R` or its underlying graph.
fn candidate_graph(r: &ReachabilityDigraph, kind: Kind) -> StaticGraph {
    match kind {
        Kind::Mutual => symmetric_core(r),
        Kind::Unilateral => underlying_graph(r),
    }
}

/// Whether `set` is a connected set of the queried notion. The empty set
/// and singletons are connected. Runs `|S|` sweeps, O(|S|·M).
pub fn is_connected_set(g: &TemporalGraph, set: &[Vertex], q: ComponentQuery) -> Result<bool, ComponentError> {
    let set = normalize(g, set)?;
    Ok(ConnectivityChecker::new(g, q.model).check(&set, q.kind, q.closedness))
}

/// Whether every pair of vertices of `g` is connected (open notion).
pub fn is_temporally_connected(g: &TemporalGraph, kind: Kind, model: Model) -> bool {
    let all: Vec<Vertex> = (0..g.vertex_count()).collect();
    ConnectivityChecker::new(g, model).check(&all, kind, Closedness::Open)
}

/// Whether `set` is a component: a connected set with no connected strict
/// superset. Open notions need only single-vertex extensions; closed ones
/// search the supersets formed by (full) cliques of `R`, within
/// `budget.max_subsets` candidates.
pub fn is_maximal_component(
    g: &TemporalGraph,
    set: &[Vertex],
    q: ComponentQuery,
    budget: &Budget,
) -> Result<bool, ComponentError> {
    let set = normalize(g, set)?;
    if set.is_empty() {
        return Ok(false);
    }
    let mut checker = ConnectivityChecker::new(g, q.model);
    if !checker.check(&set, q.kind, q.closedness) {
        return Ok(false);
    }
    let r = reachability_digraph(g, q.model);
    let mut in_set = vec![false; g.vertex_count()];
    set.iter().for_each(|&v| in_set[v] = true);
    let extensions: Vec<Vertex> =
        (0..g.vertex_count()).filter(|&v| !in_set[v] && set.iter().all(|&s| related(&r, q.kind, s, v))).collect();
    if q.closedness == Closedness::Open {
        return Ok(extensions.is_empty());
    }

    let mut tested = 0usize;
    let mut over_budget = false;
    let mut candidate = Vec::with_capacity(g.vertex_count());
    let found = for_each_clique_extension(&extensions, &|u, v| related(&r, q.kind, u, v), &mut |extra| {
        tested += 1;
        if tested > budget.max_subsets {
            over_budget = true;
            return true;
        }
        candidate.clear();
        candidate.extend_from_slice(&set);
        candidate.extend_from_slice(extra);
        candidate.sort_unstable();
        checker.check(&candidate, q.kind, q.closedness)
    });
    if over_budget {
        return Err(ComponentError::BudgetExceeded { resource: "superset", limit: budget.max_subsets });
    }
    Ok(!found)
}

/// All components of the queried notion, canonically ordered.
pub fn enumerate_components(
    g: &TemporalGraph,
    q: ComponentQuery,
    budget: &Budget,
) -> Result<ComponentReport, ComponentError> {
    let r = reachability_digraph(g, q.model);
    let h = candidate_graph(&r, q.kind);
    let mut cliques = maximal_cliques(&h, budget.max_cliques)
        .map_err(|limit| ComponentError::BudgetExceeded { resource: "maximal clique", limit })?;
    cliques.retain(|c| !c.is_empty());
    if q.closedness == Closedness::Open {
        return Ok(ComponentReport { query: q, components: cliques });
    }

    let mut checker = ConnectivityChecker::new(g, q.model);
    let mut local: BTreeSet<Vec<Vertex>> = BTreeSet::new();
    for clique in &cliques {
        for set in closed_local_maxima(&mut checker, clique, q.kind, budget.max_subsets)? {
            local.insert(set);
        }
    }
    // a local maximum of one clique may sit inside a closed set of another
    let local: Vec<Vec<Vertex>> = local.into_iter().collect();
    let components =
        local.iter().filter(|s| !local.iter().any(|t| t.len() > s.len() && is_subset(s, t))).cloned().collect();
    Ok(ComponentReport { query: q, components })
}

/// Inclusion-maximal closed connected subsets of `clique`.
fn closed_local_maxima(
    checker: &mut ConnectivityChecker<'_>,
    clique: &[Vertex],
    kind: Kind,
    limit: usize,
) -> Result<Vec<Vec<Vertex>>, ComponentError> {
    let mut found: Vec<Vec<Vertex>> = Vec::new();
    let mut tested = 0usize;
    let mut subset = Vec::with_capacity(clique.len());
    for size in (1..=clique.len()).rev() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            tested += 1;
            if tested > limit {
                return Err(ComponentError::BudgetExceeded { resource: "subset", limit });
            }
            subset.clear();
            subset.extend(idx.iter().map(|&i| clique[i]));
            if !found.iter().any(|f| is_subset(&subset, f))
                && (size == 1 || checker.check(&subset, kind, Closedness::Closed))
            {
                found.push(subset.clone());
            }
            if !next_combination(&mut idx, clique.len()) {
                break;
            }
        }
    }
    Ok(found)
}

/// Advances `idx` to the next k-combination of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Both slices sorted ascending.
pub(crate) fn is_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// Algorithm selector for [`has_component_of_size`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    /// FPT search when its preconditions hold, brute force otherwise.
    Auto,
    Brute,
    Fpt,
}

/// A connected set of at least `k` vertices, if one exists. A connected set
/// of that size exists iff a component of that size does, so the witness is
/// a set, not necessarily maximal. The brute-force witness is the
/// lexicographically smallest among the smallest qualifying sets.
pub fn has_component_of_size(
    g: &TemporalGraph,
    q: ComponentQuery,
    k: usize,
    algo: Algo,
    budget: &Budget,
) -> Result<Option<Vec<Vertex>>, ComponentError> {
    if k == 0 {
        return Err(ComponentError::InvalidK);
    }
    match algo {
        Algo::Fpt => return Ok(fpt::fpt_find(g, q, k)?),
        // an oversized cap only means the parameter is too large to help
        Algo::Auto if fpt::supports(g, q) => match fpt::fpt_find(g, q, k) {
            Err(FptError::CapOverflow { .. }) => {}
            other => return Ok(other?),
        },
        _ => {}
    }
    if k > g.vertex_count() {
        return Ok(None);
    }
    let r = reachability_digraph(g, q.model);
    let h = candidate_graph(&r, q.kind);
    if q.closedness == Closedness::Open {
        return Ok(first_clique_of_size(&h, k));
    }
    let mut checker = ConnectivityChecker::new(g, q.model);
    let mut tested = 0usize;
    for size in k..=g.vertex_count() {
        let mut any_clique = false;
        let mut over_budget = false;
        let mut witness = None;
        for_each_clique_of_size(&h, size, &mut |c| {
            any_clique = true;
            tested += 1;
            if tested > budget.max_subsets {
                over_budget = true;
                return true;
            }
            if checker.check(c, q.kind, Closedness::Closed) {
                witness = Some(c.to_vec());
                return true;
            }
            false
        });
        if over_budget {
            return Err(ComponentError::BudgetExceeded { resource: "subset", limit: budget.max_subsets });
        }
        if witness.is_some() || !any_clique {
            return Ok(witness);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fig1, fig1_set};
    use crate::graph::TemporalEdge;

    const NS: Model = Model::NonStrict;

    #[test]
    fn fig1_connected_sets() {
        let g = fig1();
        let s = |names: &[&str]| fig1_set(&g, names);
        assert!(is_connected_set(&g, &s(&["a", "b"]), ComponentQuery::closed_tcc(NS)).unwrap());
        assert!(is_connected_set(&g, &s(&["a", "b", "c", "d"]), ComponentQuery::closed_tcc(NS)).unwrap());
        let b = s(&["a", "b", "c", "d", "e"]);
        assert!(!is_connected_set(&g, &b, ComponentQuery::closed_tcc(NS)).unwrap());
        assert!(is_connected_set(&g, &b, ComponentQuery::tcc(NS)).unwrap());
        assert!(is_connected_set(&g, &b, ComponentQuery::closed_tucc(NS)).unwrap());
        let c = s(&["a", "b", "c", "d", "e", "f"]);
        assert!(!is_connected_set(&g, &c, ComponentQuery::tcc(NS)).unwrap());
        assert!(is_connected_set(&g, &c, ComponentQuery::tucc(NS)).unwrap());
    }

    #[test]
    fn closed_connectivity_is_not_hereditary() {
        let g = fig1();
        assert!(is_connected_set(&g, &fig1_set(&g, &["a", "b", "c", "d"]), ComponentQuery::closed_tcc(NS)).unwrap());
        assert!(!is_connected_set(&g, &fig1_set(&g, &["a", "b", "c"]), ComponentQuery::closed_tcc(NS)).unwrap());
        // {a,b} cannot grow into {a,b,c,d} one vertex at a time
        assert!(!is_connected_set(&g, &fig1_set(&g, &["a", "b", "d"]), ComponentQuery::closed_tcc(NS)).unwrap());
    }

    #[test]
    fn singletons_and_empty_set() {
        let g = fig1();
        for q in ComponentQuery::all() {
            assert!(is_connected_set(&g, &[4], q).unwrap());
            assert!(is_connected_set(&g, &[], q).unwrap());
            assert!(!is_maximal_component(&g, &[], q, &Budget::default()).unwrap());
        }
        assert_eq!(is_connected_set(&g, &[0, 9], ComponentQuery::tcc(NS)), Err(ComponentError::InvalidVertex(9)));
    }

    #[test]
    fn fig1_maximality() {
        let g = fig1();
        let b = Budget::default();
        let s = |names: &[&str]| fig1_set(&g, names);
        assert!(is_maximal_component(&g, &s(&["a", "b", "c", "d"]), ComponentQuery::closed_tcc(NS), &b).unwrap());
        assert!(!is_maximal_component(&g, &s(&["a", "b"]), ComponentQuery::closed_tcc(NS), &b).unwrap());
        assert!(is_maximal_component(&g, &s(&["a", "b", "c", "d", "e"]), ComponentQuery::closed_tucc(NS), &b).unwrap());
        assert!(is_maximal_component(&g, &s(&["a", "b", "c", "d", "e"]), ComponentQuery::tcc(NS), &b).unwrap());
        assert!(is_maximal_component(&g, &s(&["a", "b", "c", "d", "e", "f"]), ComponentQuery::tucc(NS), &b).unwrap());
    }

    #[test]
    fn fig1_enumeration() {
        let g = fig1();
        let b = Budget::default();
        let tcc = enumerate_components(&g, ComponentQuery::tcc(NS), &b).unwrap();
        assert!(tcc.contains(&fig1_set(&g, &["a", "b", "c", "d", "e"])));
        let closed = enumerate_components(&g, ComponentQuery::closed_tcc(NS), &b).unwrap();
        assert!(closed.contains(&fig1_set(&g, &["a", "b", "c", "d"])));
        let tucc = enumerate_components(&g, ComponentQuery::tucc(NS), &b).unwrap();
        assert!(tucc.contains(&fig1_set(&g, &["a", "b", "c", "d", "e", "f"])));
        for report in [&tcc, &closed, &tucc] {
            for c in &report.components {
                assert!(is_maximal_component(&g, c, report.query, &b).unwrap(), "{c:?}");
            }
        }
    }

    #[test]
    fn single_snapshot_components_are_static_components() {
        let g = TemporalGraph::new(
            false,
            6,
            [TemporalEdge::new(0, 1, vec![1]), TemporalEdge::new(1, 2, vec![1]), TemporalEdge::new(3, 4, vec![1])],
        )
        .unwrap();
        let report = enumerate_components(&g, ComponentQuery::tcc(NS), &Budget::default()).unwrap();
        assert_eq!(report.components, vec![vec![0, 1, 2], vec![3, 4], vec![5]]);
        assert_eq!(report.max_size(), 3);
    }

    #[test]
    fn witnesses() {
        let g = fig1();
        let b = Budget::default();
        assert_eq!(
            has_component_of_size(&g, ComponentQuery::tcc(NS), 5, Algo::Brute, &b).unwrap(),
            Some(fig1_set(&g, &["a", "b", "c", "d", "e"]))
        );
        assert_eq!(has_component_of_size(&g, ComponentQuery::tcc(NS), 7, Algo::Brute, &b).unwrap(), None);
        assert_eq!(has_component_of_size(&g, ComponentQuery::tcc(NS), 1, Algo::Auto, &b).unwrap(), Some(vec![0]));
        assert_eq!(
            has_component_of_size(&g, ComponentQuery::closed_tcc(NS), 4, Algo::Auto, &b).unwrap(),
            Some(fig1_set(&g, &["a", "b", "c", "d"]))
        );
        assert_eq!(
            has_component_of_size(&g, ComponentQuery::tcc(NS), 0, Algo::Brute, &b),
            Err(ComponentError::InvalidK)
        );
    }

    #[test]
    fn budgets_are_hard_errors() {
        let g = fig1();
        let tiny = Budget { max_cliques: 1, max_subsets: 1 };
        assert!(matches!(
            enumerate_components(&g, ComponentQuery::tcc(NS), &tiny),
            Err(ComponentError::BudgetExceeded { resource: "maximal clique", .. })
        ));
        let few_subsets = Budget { max_cliques: 100, max_subsets: 3 };
        assert!(matches!(
            enumerate_components(&g, ComponentQuery::closed_tcc(NS), &few_subsets),
            Err(ComponentError::BudgetExceeded { resource: "subset", .. })
        ));
    }

    #[test]
    fn combinations_in_order() {
        let mut idx = vec![0, 1];
        let mut seen = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            seen.push(idx.clone());
        }
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert!(is_subset(&[1, 3], &[0, 1, 2, 3]));
        assert!(!is_subset(&[1, 4], &[0, 1, 2, 3]));
    }
}
