//! Bundled example graphs used by tests, benchmarks, and documentation.

use crate::graph::{load_edge_list_str, Graph, LoadOptions};

/// The nine-vertex worked example. File labels are 1-based; internal ids
/// come out as label minus one.
pub fn figure1() -> Graph {
    bundled(include_str!("../data/figure1.edges"))
}

/// Zachary's karate club: 34 vertices, 78 edges, 0-based labels.
pub fn karate() -> Graph {
    bundled(include_str!("../data/karate.edges"))
}

/// Seeded synthetic graph: 379 vertices, 914 edges, 1-based labels.
pub fn synth379() -> Graph {
    bundled(include_str!("../data/synth379.edges"))
}

fn bundled(text: &str) -> Graph {
    load_edge_list_str(text, &LoadOptions::default())
        .expect("bundled graph parses and is connected")
        .graph
}
