//! The running example used throughout the docs and tests: a directed
//! temporal graph on `a..g` with lifetime 6.

use crate::graph::{parse_temporal_graph, TemporalGraph};

pub const FIG1: &str = "\
# running example: directed, lifetime 6
tg directed 7
names a b c d e f g
a b 1 5
b a 1
b c 2 6
c e 2
e c 2
c d 1 3
d f 1 2
f g 2
f e 3
g d 3
d a 4
";

pub fn fig1() -> TemporalGraph {
    parse_temporal_graph(FIG1).expect("fixture parses")
}

/// Resolves vertex names of the running example; panics on unknown names.
pub fn fig1_set(g: &TemporalGraph, names: &[&str]) -> Vec<usize> {
    let mut set: Vec<usize> =
        names.iter().map(|n| g.vertex_by_name(n).unwrap_or_else(|| panic!("unknown vertex {n}"))).collect();
    set.sort_unstable();
    set
}
