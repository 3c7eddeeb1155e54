//! Shared fixtures for the criterion benches.

use hamconn_core::families::{named_variant, s_graph, Variant};
use hamconn_core::Graph;

/// `S_n^3`.
pub fn extremal(n: usize) -> Graph {
    s_graph(n, 3).expect("n >= 6")
}

/// `K_n`: every pair has to be confirmed before the oracle can answer.
pub fn complete(n: usize) -> Graph {
    Graph::complete(n)
}

pub fn clique_edge_deleted(n: usize) -> Graph {
    named_variant(Variant::H3, n).expect("n >= 11")
}
