//! Brute-force ground truth: exhaustive shortest-path enumeration.
//!
//! Everything else in the crate is checked against counts derived from an
//! explicit list of paths. Slow and memory-hungry by design; only suitable
//! for small graphs, guarded by a path-count cap.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::spd::{bfs_sssp, enumerate_shortest_paths, INF};

/// Every shortest path between admissible ordered endpoint pairs, plus a
/// per-vertex index of the paths that cross it internally.
#[derive(Debug, Clone)]
pub struct PathSet {
    paths: Vec<Vec<usize>>,
    index: Vec<Vec<usize>>,
    excl: Vec<usize>,
}

impl PathSet {
    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Ids of paths with `v` strictly inside them.
    pub fn through(&self, v: usize) -> &[usize] {
        &self.index[v]
    }

    pub fn endpoint_exclusions(&self) -> &[usize] {
        &self.excl
    }

    /// The sub-collection of paths starting at `s`.
    pub fn source_view(&self, s: usize) -> PathSet {
        let paths: Vec<Vec<usize>> = self
            .paths
            .iter()
            .filter(|p| p[0] == s)
            .cloned()
            .collect();
        let index = build_index(&paths, self.index.len());
        PathSet {
            paths,
            index,
            excl: self.excl.clone(),
        }
    }
}

fn build_index(paths: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let mut index = vec![Vec::new(); n];
    for (id, path) in paths.iter().enumerate() {
        for &v in &path[1..path.len() - 1] {
            index[v].push(id);
        }
    }
    index
}

/// Enumerates every shortest path over ordered pairs `(s, t)`, `s != t`,
/// with both endpoints outside `excl`. The total path count is verified
/// against `cap` (by summing path counts) before any path is materialized.
pub fn build_path_set(g: &Graph, excl: &[usize], cap: usize) -> Result<PathSet> {
    let n = g.vertex_count();
    let mut emask = vec![false; n];
    for &v in excl {
        if v >= n {
            return Err(Error::InvalidSet(format!(
                "exclusion {v} out of range for a graph with {n} vertices"
            )));
        }
        emask[v] = true;
    }

    let sources: Vec<usize> = (0..n).filter(|&v| !emask[v]).collect();
    let dags = sources
        .iter()
        .map(|&s| bfs_sssp(g, s))
        .collect::<Result<Vec<_>>>()?;

    let mut total = 0u64;
    for dag in &dags {
        for t in 0..n {
            if t == dag.source || emask[t] || dag.dist[t] == INF {
                continue;
            }
            total = total
                .checked_add(dag.sigma[t])
                .ok_or(Error::PathCountOverflow)?;
        }
    }
    if total > cap as u64 {
        return Err(Error::CapExceeded { count: total, cap });
    }

    let mut paths = Vec::with_capacity(total as usize);
    for dag in &dags {
        for t in 0..n {
            if t == dag.source || emask[t] || dag.dist[t] == INF {
                continue;
            }
            paths.extend(enumerate_shortest_paths(dag, t, cap)?);
        }
    }
    let index = build_index(&paths, n);
    let mut excl = excl.to_vec();
    excl.sort_unstable();
    Ok(PathSet { paths, index, excl })
}

/// Per-path tallies of internal-vertex membership in a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteCounts {
    /// Paths crossing exactly one member.
    pub exactly_one: u64,
    /// Paths crossing one or more members.
    pub at_least_one: u64,
    /// Paths crossing every member.
    pub all_members: u64,
    /// Paths crossing an odd number of members.
    pub odd_members: u64,
}

/// Counts each path of `ps` by how many members of `a` appear strictly
/// inside it. Meaningful when `ps` was built with `a` as the endpoint
/// exclusion, so no member can be an endpoint.
pub fn brute_counts(ps: &PathSet, a: &VertexSet) -> BruteCounts {
    let mut counts = BruteCounts {
        exactly_one: 0,
        at_least_one: 0,
        all_members: 0,
        odd_members: 0,
    };
    for path in &ps.paths {
        debug_assert!(!a.contains(path[0]) && !a.contains(*path.last().unwrap()));
        let hits = path[1..path.len() - 1]
            .iter()
            .filter(|&&v| a.contains(v))
            .count();
        if hits == 1 {
            counts.exactly_one += 1;
        }
        if hits >= 1 {
            counts.at_least_one += 1;
        }
        if hits == a.len() {
            counts.all_members += 1;
        }
        if hits % 2 == 1 {
            counts.odd_members += 1;
        }
    }
    counts
}
