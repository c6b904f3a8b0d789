//! Exact centrality measures under the ordered-pair count convention.
//!
//! Every value is a count of (source, target, path) incidences over ordered
//! pairs `(s, t)`, `s != t`, with both endpoints outside the measured set.
//! All arithmetic is checked; overflow surfaces as an error.
//!
//! Two independent routes exist for the set measures: subset
//! inclusion-exclusion over co-betweenness terms (`*_ie`) and direct
//! counting against avoid-set BFS data (`*_direct`). They must agree, and
//! tests hold them to exact integer equality.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::spd::{bfs_sssp, bfs_sssp_avoiding_mask, DistSigmaRow, SpCache, INF};

/// Largest set size the inclusion-exclusion routes accept; the term count
/// is `2^|A| - 1`.
pub const SUBSET_GUARD: usize = 12;

/// Accumulated dependency of one source on every other vertex:
/// `delta[v]` counts (target, path) incidences of shortest paths from
/// `source` that cross `v`.
#[derive(Debug, Clone)]
pub struct DependencyRow {
    pub source: usize,
    pub delta: Vec<u64>,
}

/// Number of shortest-path continuations hanging below each vertex in the
/// DAG: `f(v) = sum over DAG successors w of (1 + f(w))`.
fn tail_counts(dag: &crate::spd::ShortestPathDag) -> Result<Vec<u64>> {
    let mut f = vec![0u64; dag.dist.len()];
    for &w in dag.order.iter().rev() {
        for &p in &dag.preds[w] {
            let add = f[w].checked_add(1).ok_or(Error::CountOverflow)?;
            f[p] = f[p].checked_add(add).ok_or(Error::CountOverflow)?;
        }
    }
    Ok(f)
}

/// Dependency accumulation for one source: `delta[v] = sigma(s,v) * f(v)`.
pub fn dependency_row(g: &Graph, s: usize) -> Result<DependencyRow> {
    let dag = bfs_sssp(g, s)?;
    let f = tail_counts(&dag)?;
    let mut delta = vec![0u64; g.vertex_count()];
    for v in 0..g.vertex_count() {
        if v == s || dag.sigma[v] == 0 {
            continue;
        }
        delta[v] = dag.sigma[v].checked_mul(f[v]).ok_or(Error::CountOverflow)?;
    }
    Ok(DependencyRow { source: s, delta })
}

/// Betweenness of every vertex: paths through `v` over ordered pairs with
/// both endpoints distinct from `v`. One BFS plus one reverse accumulation
/// per source.
pub fn betweenness_all(g: &Graph) -> Result<Vec<u64>> {
    let n = g.vertex_count();
    let mut b = vec![0u64; n];
    for s in 0..n {
        let row = dependency_row(g, s)?;
        for v in 0..n {
            b[v] = b[v].checked_add(row.delta[v]).ok_or(Error::CountOverflow)?;
        }
    }
    Ok(b)
}

/// Betweenness of `v` restricted to endpoints outside `excl`; requires
/// `v` to be in `excl`.
pub fn restricted_betweenness(cache: &SpCache, v: usize, excl: &VertexSet) -> Result<u64> {
    if !excl.contains(v) {
        return Err(Error::InvalidSet(format!(
            "restricted betweenness requires v={v} to be in the exclusion set"
        )));
    }
    let n = cache.vertex_count();
    let emask = excl.mask(n);
    let mut total = 0u64;
    for s in 0..n {
        if emask[s] {
            continue;
        }
        let dsv = cache.dist(s, v);
        if dsv == INF {
            continue;
        }
        for t in 0..n {
            if t == s || emask[t] {
                continue;
            }
            let dvt = cache.dist(v, t);
            if dvt == INF {
                continue;
            }
            if dsv as u64 + dvt as u64 == cache.dist(s, t) as u64 {
                let through = cache
                    .sigma(s, v)
                    .checked_mul(cache.sigma(v, t))
                    .ok_or(Error::CountOverflow)?;
                total = total.checked_add(through).ok_or(Error::CountOverflow)?;
            }
        }
    }
    Ok(total)
}

/// Paths passing through every member, endpoints outside `excl`.
///
/// Per source the members are ordered by distance; a distance tie means no
/// shortest path from that source can contain both tied members, so the
/// source contributes 0. A full chain `s, a1, .., ak, t` is tight only if
/// every prefix is tight, so prefix checks reject the source early and the
/// remaining per-target gate is a single addition.
pub fn co_betweenness(cache: &SpCache, members: &VertexSet, excl: &VertexSet) -> Result<u64> {
    for &m in members.members() {
        if !excl.contains(m) {
            return Err(Error::InvalidSet(format!(
                "member {m} is not covered by the endpoint exclusion set"
            )));
        }
    }
    let n = cache.vertex_count();
    let emask = excl.mask(n);
    let mut total = 0u64;
    let mut chain: Vec<usize> = members.members().to_vec();

    'source: for s in 0..n {
        if emask[s] {
            continue;
        }
        chain.sort_unstable_by_key(|&m| cache.dist(s, m));
        if chain.iter().any(|&m| cache.dist(s, m) == INF) {
            continue;
        }
        if chain
            .windows(2)
            .any(|w| cache.dist(s, w[0]) == cache.dist(s, w[1]))
        {
            continue; // a shortest path visits each distance level once
        }

        let mut chain_dist = cache.dist(s, chain[0]) as u64;
        let mut chain_sigma = cache.sigma(s, chain[0]);
        for w in chain.windows(2) {
            let hop = cache.dist(w[0], w[1]);
            if hop == INF {
                continue 'source;
            }
            chain_dist += hop as u64;
            if cache.dist(s, w[1]) as u64 != chain_dist {
                continue 'source; // chain through w[0] is not tight
            }
            chain_sigma = chain_sigma
                .checked_mul(cache.sigma(w[0], w[1]))
                .ok_or(Error::CountOverflow)?;
        }

        let last = *chain.last().unwrap();
        for t in 0..n {
            if t == s || emask[t] {
                continue;
            }
            let tail = cache.dist(last, t);
            if tail == INF {
                continue;
            }
            if chain_dist + tail as u64 == cache.dist(s, t) as u64 {
                let through = chain_sigma
                    .checked_mul(cache.sigma(last, t))
                    .ok_or(Error::CountOverflow)?;
                total = total.checked_add(through).ok_or(Error::CountOverflow)?;
            }
        }
    }
    Ok(total)
}

/// Paths passing through at least one member, counted directly: total
/// shortest paths minus those that survive deleting the whole set.
pub fn group_betweenness_direct(g: &Graph, cache: &SpCache, a: &VertexSet) -> Result<u64> {
    let n = g.vertex_count();
    let mask = a.mask(n);
    let mut total = 0u64;
    for s in 0..n {
        if mask[s] {
            continue;
        }
        let row = bfs_sssp_avoiding_mask(g, s, &mask)?;
        for t in 0..n {
            if t == s || mask[t] {
                continue;
            }
            let all = cache.sigma(s, t);
            // A detour that got longer is not a shortest path of the
            // original graph and must not be subtracted.
            let avoiding = if row.dist[t] == cache.dist(s, t) {
                row.sigma[t]
            } else {
                0
            };
            debug_assert!(avoiding <= all);
            total = total
                .checked_add(all - avoiding)
                .ok_or(Error::CountOverflow)?;
        }
    }
    Ok(total)
}

fn subset_members(a: &VertexSet, bits: u32) -> Vec<usize> {
    a.members()
        .iter()
        .enumerate()
        .filter(|(i, _)| bits & (1 << i) != 0)
        .map(|(_, &m)| m)
        .collect()
}

fn ie_sum(cache: &SpCache, a: &VertexSet, weight_by_size: bool) -> Result<u64> {
    let k = a.len();
    if k > SUBSET_GUARD {
        return Err(Error::GuardExceeded {
            size: k,
            guard: SUBSET_GUARD,
        });
    }
    let n = cache.vertex_count();
    let mut acc: i128 = 0;
    for bits in 1u32..(1u32 << k) {
        let j = bits.count_ones();
        let members = VertexSet::new(subset_members(a, bits), n)?;
        let cc = co_betweenness(cache, &members, a)? as i128;
        let coeff = if weight_by_size { j as i128 } else { 1 };
        if j % 2 == 1 {
            acc += coeff * cc;
        } else {
            acc -= coeff * cc;
        }
    }
    if acc < 0 || acc > u64::MAX as i128 {
        return Err(Error::CountOverflow);
    }
    Ok(acc as u64)
}

/// At-least-one count via inclusion-exclusion over all non-empty subsets:
/// `sum_j (-1)^(j-1) sum_{|C|=j} CC(C)`.
pub fn group_betweenness_ie(cache: &SpCache, a: &VertexSet) -> Result<u64> {
    ie_sum(cache, a, false)
}

/// Exactly-one count via the size-weighted alternating sum:
/// `sum_j j*(-1)^(j-1) sum_{|C|=j} CC(C)`.
pub fn exclusive_betweenness_ie(cache: &SpCache, a: &VertexSet) -> Result<u64> {
    ie_sum(cache, a, true)
}

/// Counts `sigma'(s,v) * sigma'(v,t)` through each member `v` with the
/// other members deleted, gated on the through-distance matching the true
/// distance. A path counted here passes `v` and no other member, and every
/// exactly-one path is counted once, at its unique member.
pub fn exclusive_betweenness_direct(g: &Graph, cache: &SpCache, a: &VertexSet) -> Result<u64> {
    let n = g.vertex_count();
    let amask = a.mask(n);
    let mut total = 0u64;
    for &v in a.members() {
        let mut rest = amask.clone();
        rest[v] = false;
        let row = bfs_sssp_avoiding_mask(g, v, &rest)?;
        for s in 0..n {
            if amask[s] || row.dist[s] == INF {
                continue;
            }
            for t in 0..n {
                if t == s || amask[t] || row.dist[t] == INF {
                    continue;
                }
                if row.dist[s] as u64 + row.dist[t] as u64 == cache.dist(s, t) as u64 {
                    let through = row.sigma[s]
                        .checked_mul(row.sigma[t])
                        .ok_or(Error::CountOverflow)?;
                    total = total.checked_add(through).ok_or(Error::CountOverflow)?;
                }
            }
        }
    }
    Ok(total)
}

/// Exactly-one count for a two-vertex set by the three-term identity:
/// restricted betweenness of each member minus twice their co-betweenness.
pub fn exclusive_pair(cache: &SpCache, v1: usize, v2: usize) -> Result<u64> {
    if v1 == v2 {
        return Err(Error::InvalidSet("pair members must differ".into()));
    }
    let n = cache.vertex_count();
    let a = VertexSet::new(vec![v1, v2], n)?;
    let b1 = restricted_betweenness(cache, v1, &a)?;
    let b2 = restricted_betweenness(cache, v2, &a)?;
    let cc = co_betweenness(cache, &a, &a)?;
    b1.checked_add(b2)
        .and_then(|sum| sum.checked_sub(cc.checked_mul(2)?))
        .ok_or(Error::CountOverflow)
}

/// Avoid-set BFS row from each member with the other members deleted.
/// These rows depend only on the set, not on any source, so samplers build
/// them once and reuse them across iterations.
pub fn member_avoid_rows(g: &Graph, a: &VertexSet) -> Result<Vec<DistSigmaRow>> {
    let amask = a.mask(g.vertex_count());
    a.members()
        .iter()
        .map(|&v| {
            let mut rest = amask.clone();
            rest[v] = false;
            bfs_sssp_avoiding_mask(g, v, &rest)
        })
        .collect()
}

/// Exactly-one count for a single ordered pair, given the member avoid
/// rows and the true distance between the endpoints. Avoid rows are
/// symmetric, so `row_v.sigma[i]` is the count of `i -> v` paths missing
/// the other members.
pub fn pair_exclusive_count(
    rows: &[DistSigmaRow],
    i: usize,
    j: usize,
    dist_ij: u32,
) -> Result<u64> {
    let mut count = 0u64;
    for row in rows {
        if row.dist[i] == INF || row.dist[j] == INF {
            continue;
        }
        if row.dist[i] as u64 + row.dist[j] as u64 == dist_ij as u64 {
            let through = row.sigma[i]
                .checked_mul(row.sigma[j])
                .ok_or(Error::CountOverflow)?;
            count = count.checked_add(through).ok_or(Error::CountOverflow)?;
        }
    }
    Ok(count)
}

pub(crate) fn per_source_exclusive_from_rows(
    s: usize,
    s_dist: &[u32],
    amask: &[bool],
    rows: &[DistSigmaRow],
) -> Result<u64> {
    let mut total = 0u64;
    for t in 0..s_dist.len() {
        if t == s || amask[t] || s_dist[t] == INF {
            continue;
        }
        let c = pair_exclusive_count(rows, s, t, s_dist[t])?;
        total = total.checked_add(c).ok_or(Error::CountOverflow)?;
    }
    Ok(total)
}

/// Count of shortest paths from a fixed source `s` to every admissible
/// target that pass exactly one member of `a`. Summing this over all
/// sources outside `a` gives the exactly-one count.
pub fn per_source_exclusive(g: &Graph, s: usize, a: &VertexSet) -> Result<u64> {
    if a.contains(s) {
        return Err(Error::InvalidSet(format!("source {s} is inside the set")));
    }
    let dag = bfs_sssp(g, s)?;
    let rows = member_avoid_rows(g, a)?;
    per_source_exclusive_from_rows(s, &dag.dist, &a.mask(g.vertex_count()), &rows)
}
