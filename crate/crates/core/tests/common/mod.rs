//! Shared helpers for the integration suites.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use xbc_core::graph::{Graph, VertexSet};

/// Seeded random connected graph: a random spanning tree plus each extra
/// pair independently with probability `extra_prob`. Deterministic in
/// `seed`.
pub fn random_connected_graph(seed: u64, n: usize, extra_prob: f64) -> Graph {
    assert!(n >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: HashSet<(usize, usize)> = HashSet::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        edges.insert((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.random::<f64>() < extra_prob {
                edges.insert((u, v));
            }
        }
    }
    let mut list: Vec<(usize, usize)> = edges.into_iter().collect();
    list.sort_unstable();
    Graph::from_edges(n, &list)
}

/// Up to `want` distinct random k-subsets of `0..n`, deterministic in the
/// caller's generator state.
pub fn random_subsets(rng: &mut ChaCha8Rng, n: usize, k: usize, want: usize) -> Vec<VertexSet> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    // Proper subsets only.
    if k >= n {
        return out;
    }
    let mut attempts = 0;
    while out.len() < want && attempts < want * 20 {
        attempts += 1;
        let mut members = rand::seq::index::sample(rng, n, k).into_vec();
        members.sort_unstable();
        if seen.insert(members.clone()) {
            out.push(VertexSet::new(members, n).unwrap());
        }
    }
    out
}
