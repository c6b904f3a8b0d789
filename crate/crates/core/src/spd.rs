//! Single-source shortest-path structure on unweighted graphs.
//!
//! Everything downstream (exact measures, the oracle, the samplers) is
//! built on the per-source BFS data computed here: distances, path counts,
//! and the predecessor DAG. Path counts are exact `u64` values; overflow is
//! reported as an error rather than wrapped.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Distance sentinel for unreachable vertices.
pub const INF: u32 = u32::MAX;

/// Distances and shortest-path counts from one source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistSigmaRow {
    pub dist: Vec<u32>,
    pub sigma: Vec<u64>,
}

/// Full shortest-path DAG from one source: distances, path counts, and for
/// each vertex the neighbors that precede it on some shortest path.
#[derive(Debug, Clone)]
pub struct ShortestPathDag {
    pub source: usize,
    pub dist: Vec<u32>,
    pub sigma: Vec<u64>,
    pub preds: Vec<Vec<usize>>,
    /// Vertices in BFS discovery order (non-decreasing distance).
    pub order: Vec<usize>,
}

/// BFS from `s` computing the shortest-path DAG.
pub fn bfs_sssp(g: &Graph, s: usize) -> Result<ShortestPathDag> {
    let n = g.vertex_count();
    let mut dist = vec![INF; n];
    let mut sigma = vec![0u64; n];
    let mut preds = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = std::collections::VecDeque::new();

    dist[s] = 0;
    sigma[s] = 1;
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in g.neighbors(v) {
            if dist[w] == INF {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] = sigma[w]
                    .checked_add(sigma[v])
                    .ok_or(Error::PathCountOverflow)?;
                preds[w].push(v);
            }
        }
    }
    Ok(ShortestPathDag {
        source: s,
        dist,
        sigma,
        preds,
        order,
    })
}

/// BFS from `s` through the subgraph with `avoid` deleted. `s` itself must
/// not be in `avoid`. Avoided vertices stay at distance [`INF`], sigma 0.
pub fn bfs_sssp_avoiding(g: &Graph, s: usize, avoid: &[usize]) -> Result<DistSigmaRow> {
    let mut mask = vec![false; g.vertex_count()];
    for &v in avoid {
        mask[v] = true;
    }
    bfs_sssp_avoiding_mask(g, s, &mask)
}

/// Mask-based variant of [`bfs_sssp_avoiding`] for callers that reuse the
/// same avoid set across many sources.
pub fn bfs_sssp_avoiding_mask(g: &Graph, s: usize, avoid: &[bool]) -> Result<DistSigmaRow> {
    debug_assert!(!avoid[s], "source {s} is in the avoid set");
    let n = g.vertex_count();
    let mut dist = vec![INF; n];
    let mut sigma = vec![0u64; n];
    let mut queue = std::collections::VecDeque::new();

    dist[s] = 0;
    sigma[s] = 1;
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if avoid[w] {
                continue;
            }
            if dist[w] == INF {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] = sigma[w]
                    .checked_add(sigma[v])
                    .ok_or(Error::PathCountOverflow)?;
            }
        }
    }
    Ok(DistSigmaRow { dist, sigma })
}

/// Draws one shortest path from the DAG's source to `t`, uniformly over all
/// of them: walking back from `t`, each predecessor `p` is taken with
/// probability `sigma[p] / sigma[v]`.
pub fn sample_shortest_path(
    dag: &ShortestPathDag,
    t: usize,
    rng: &mut impl Rng,
) -> Result<Vec<usize>> {
    if dag.dist[t] == INF {
        return Err(Error::Unreachable {
            from: dag.source,
            to: t,
        });
    }
    let mut path = vec![t];
    let mut v = t;
    while v != dag.source {
        let pick = rng.random_range(0..dag.sigma[v]);
        let mut acc = 0u64;
        let mut chosen = dag.preds[v][0];
        for &p in &dag.preds[v] {
            acc += dag.sigma[p];
            if pick < acc {
                chosen = p;
                break;
            }
        }
        path.push(chosen);
        v = chosen;
    }
    path.reverse();
    Ok(path)
}

/// Enumerates every shortest path from the DAG's source to `t`, sorted
/// lexicographically. Refuses with [`Error::CapExceeded`] when the path
/// count alone exceeds `cap`.
pub fn enumerate_shortest_paths(
    dag: &ShortestPathDag,
    t: usize,
    cap: usize,
) -> Result<Vec<Vec<usize>>> {
    if dag.dist[t] == INF {
        return Err(Error::Unreachable {
            from: dag.source,
            to: t,
        });
    }
    if dag.sigma[t] > cap as u64 {
        return Err(Error::CapExceeded {
            count: dag.sigma[t],
            cap,
        });
    }
    let mut paths = Vec::with_capacity(dag.sigma[t] as usize);
    let mut stack = vec![t];
    collect_paths(dag, &mut stack, &mut paths);
    for p in &mut paths {
        p.reverse();
    }
    paths.sort_unstable();
    Ok(paths)
}

fn collect_paths(dag: &ShortestPathDag, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let v = *stack.last().unwrap();
    if v == dag.source {
        out.push(stack.clone());
        return;
    }
    for &p in &dag.preds[v] {
        stack.push(p);
        collect_paths(dag, stack, out);
        stack.pop();
    }
}

/// All-pairs shortest-path table: one [`DistSigmaRow`] per source. Memory is
/// quadratic; only the exact algorithms use it, never the samplers.
#[derive(Debug, Clone)]
pub struct SpCache {
    rows: Vec<DistSigmaRow>,
}

impl SpCache {
    pub fn build(g: &Graph) -> Result<SpCache> {
        let rows = (0..g.vertex_count())
            .map(|s| {
                bfs_sssp(g, s).map(|dag| DistSigmaRow {
                    dist: dag.dist,
                    sigma: dag.sigma,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SpCache { rows })
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, s: usize) -> &DistSigmaRow {
        &self.rows[s]
    }

    pub fn dist(&self, s: usize, t: usize) -> u32 {
        self.rows[s].dist[t]
    }

    pub fn sigma(&self, s: usize, t: usize) -> u64 {
        self.rows[s].sigma[t]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn path_graph_counts() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let dag = bfs_sssp(&g, 0).unwrap();
        assert_eq!(dag.dist, vec![0, 1, 2]);
        assert_eq!(dag.sigma, vec![1, 1, 1]);
        assert_eq!(dag.preds[2], vec![1]);
    }

    #[test]
    fn four_cycle_counts() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let dag = bfs_sssp(&g, 0).unwrap();
        assert_eq!(dag.dist, vec![0, 1, 2, 1]);
        assert_eq!(dag.sigma, vec![1, 1, 2, 1]);
    }

    #[test]
    fn figure1_source_one() {
        let g = corpus::figure1();
        let dag = bfs_sssp(&g, 0).unwrap();
        // Internal ids are file labels minus one.
        assert_eq!(dag.dist[8], 4);
        assert_eq!(dag.sigma[8], 5);
        assert_eq!(dag.sigma[7], 3);
        assert_eq!(dag.sigma[6], 2);
        assert_eq!(dag.sigma[4], 2);
    }

    #[test]
    fn avoiding_prunes_paths() {
        let g = corpus::figure1();
        // Delete labels 6 and 7: only 1-2-5-8-9 and 1-3-5-8-9 remain.
        let row = bfs_sssp_avoiding(&g, 0, &[5, 6]).unwrap();
        assert_eq!(row.dist[8], 4);
        assert_eq!(row.sigma[8], 2);
        assert_eq!(row.dist[5], INF);
        assert_eq!(row.sigma[5], 0);
    }

    #[test]
    fn avoiding_can_disconnect() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let row = bfs_sssp_avoiding(&g, 0, &[1]).unwrap();
        assert_eq!(row.dist[2], INF);
        assert_eq!(row.sigma[2], 0);
    }

    #[test]
    fn enumerate_path_graph() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let dag = bfs_sssp(&g, 0).unwrap();
        let paths = enumerate_shortest_paths(&dag, 2, 1000).unwrap();
        assert_eq!(paths, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn enumerate_figure1_all_five() {
        let g = corpus::figure1();
        let dag = bfs_sssp(&g, 0).unwrap();
        let paths = enumerate_shortest_paths(&dag, 8, 1000).unwrap();
        // File labels: 1-2-5-7-9, 1-2-5-8-9, 1-3-5-7-9, 1-3-5-8-9, 1-3-6-8-9.
        assert_eq!(
            paths,
            vec![
                vec![0, 1, 4, 6, 8],
                vec![0, 1, 4, 7, 8],
                vec![0, 2, 4, 6, 8],
                vec![0, 2, 4, 7, 8],
                vec![0, 2, 5, 7, 8],
            ]
        );
    }

    #[test]
    fn enumerate_respects_cap() {
        let g = corpus::figure1();
        let dag = bfs_sssp(&g, 0).unwrap();
        let err = enumerate_shortest_paths(&dag, 8, 4).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { count: 5, cap: 4 }));
    }

    #[test]
    fn enumerate_unreachable_errors() {
        let g = Graph::from_edges(3, &[(0, 1)]);
        let dag = bfs_sssp(&g, 0).unwrap();
        assert!(matches!(
            enumerate_shortest_paths(&dag, 2, 10),
            Err(Error::Unreachable { .. })
        ));
    }

    #[test]
    fn sampled_paths_are_shortest_paths() {
        let g = corpus::figure1();
        let dag = bfs_sssp(&g, 0).unwrap();
        let all = enumerate_shortest_paths(&dag, 8, 1000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let p = sample_shortest_path(&dag, 8, &mut rng).unwrap();
            assert!(all.contains(&p));
        }
    }

    #[test]
    fn sampling_is_uniform_over_paths() {
        let g = corpus::figure1();
        let dag = bfs_sssp(&g, 0).unwrap();
        let all = enumerate_shortest_paths(&dag, 8, 1000).unwrap();
        let mut counts = std::collections::HashMap::new();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let draws = 10_000usize;
        for _ in 0..draws {
            let p = sample_shortest_path(&dag, 8, &mut rng).unwrap();
            *counts.entry(p).or_insert(0usize) += 1;
        }
        // Binomial(10^4, 1/5): three sigma is about 120.
        let expect = draws as f64 / all.len() as f64;
        let sigma3 = 3.0 * (draws as f64 * 0.2 * 0.8).sqrt();
        for path in &all {
            let c = *counts.get(path).unwrap_or(&0) as f64;
            assert!(
                (c - expect).abs() < sigma3,
                "path {path:?} drawn {c} times, expected near {expect}"
            );
        }
    }

    #[test]
    fn cache_matches_bfs() {
        let g = corpus::figure1();
        let cache = SpCache::build(&g).unwrap();
        for s in 0..g.vertex_count() {
            let dag = bfs_sssp(&g, s).unwrap();
            assert_eq!(cache.row(s).dist, dag.dist);
            assert_eq!(cache.row(s).sigma, dag.sigma);
        }
        // Undirected symmetry.
        for s in 0..g.vertex_count() {
            for t in 0..g.vertex_count() {
                assert_eq!(cache.dist(s, t), cache.dist(t, s));
                assert_eq!(cache.sigma(s, t), cache.sigma(t, s));
            }
        }
    }
}
