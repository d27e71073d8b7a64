//! Connectivity analysis for temporal graphs.
//!
//! Temporal reachability under the strict and non-strict models, the four
//! component notions (tcc, tucc, closed tcc, closed tucc), maximality checks,
//! FPT searches for undirected graphs, generators for the reduction gadgets,
//! and brute-force oracles that cross-check all of them.

pub mod cli;
pub mod components;
pub mod fixtures;
pub mod fpt;
pub mod gadgets;
pub mod graph;
pub mod oracle;
pub mod random;
pub mod reachability;

mod cliques;

pub use components::{
    enumerate_components, has_component_of_size, is_connected_set, is_maximal_component, is_temporally_connected, Algo,
    Budget, Closedness, ComponentError, ComponentQuery, ComponentReport, Kind,
};
pub use graph::{
    parse_temporal_graph, serialize_temporal_graph, GraphError, Model, ParseError, Snapshot, StaticGraph, TemporalEdge,
    TemporalGraph, TemporalGraphBuilder, Timestep, Vertex,
};
pub use reachability::{
    is_temporal_walk, reach_profile, reachability_digraph, reaches, symmetric_core, underlying_graph, ReachProfile,
    ReachabilityDigraph, TemporalWalk,
};
