//! Graph representation, edge-list ingestion, and validation.
//!
//! Graphs are undirected, unweighted, loop-free simple graphs with dense
//! vertex ids `0..n`. The ids found in an input file ("original" ids) are
//! remapped on load and retained for rendering results back in the file's
//! own labels.

use std::collections::HashMap;
use std::io::BufRead;

use crate::error::{Error, Result};

/// Immutable undirected simple graph in adjacency form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
    original_ids: Vec<u64>,
}

impl Graph {
    /// Builds a graph from internal-id edges. Intended for programmatic
    /// construction; original ids are the identity mapping.
    ///
    /// Panics on out-of-range ids, self-loops, or duplicate edges.
    /// Connectivity is not enforced here.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut adj = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in edges {
            assert!(u < n && v < n, "edge ({u},{v}) out of range for n={n}");
            assert_ne!(u, v, "self-loop at {u}");
            let key = (u.min(v), u.max(v));
            assert!(seen.insert(key), "duplicate edge ({u},{v})");
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            adj,
            m: edges.len(),
            original_ids: (0..n as u64).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// The id this vertex had in the source file.
    pub fn original_id(&self, v: usize) -> u64 {
        self.original_ids[v]
    }

    /// Looks up the internal id for a source-file id.
    pub fn internal_id(&self, original: u64) -> Option<usize> {
        self.original_ids.iter().position(|&o| o == original)
    }

    /// Resolves a list of original ids into a validated [`VertexSet`].
    pub fn vertex_set_from_originals(&self, originals: &[u64]) -> Result<VertexSet> {
        let members = originals
            .iter()
            .map(|&o| self.internal_id(o).ok_or(Error::UnknownVertex { id: o }))
            .collect::<Result<Vec<_>>>()?;
        VertexSet::new(members, self.vertex_count())
    }

    pub fn is_connected(&self) -> bool {
        component_count(self) == 1
    }

    /// Canonical serialization: one `u v` line per edge, internal 0-based
    /// ids, `u < v`, sorted.
    pub fn canonical_edge_list(&self) -> String {
        let mut out = String::new();
        for u in 0..self.vertex_count() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push_str(&format!("{u} {v}\n"));
                }
            }
        }
        out
    }
}

/// Non-empty, sorted, duplicate-free proper subset of a graph's vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    /// Validates and normalizes a member list against a graph of `n` vertices.
    pub fn new(mut members: Vec<usize>, n: usize) -> Result<VertexSet> {
        if members.is_empty() {
            return Err(Error::InvalidSet("set is empty".into()));
        }
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSet("duplicate member".into()));
        }
        if *members.last().unwrap() >= n {
            return Err(Error::InvalidSet(format!(
                "member {} out of range for a graph with {} vertices",
                members.last().unwrap(),
                n
            )));
        }
        if members.len() >= n {
            return Err(Error::InvalidSet(
                "set must be a proper subset of the vertices".into(),
            ));
        }
        Ok(VertexSet { members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Per-vertex membership mask, length `n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.members {
            mask[v] = true;
        }
        mask
    }
}

/// How to interpret vertex ids in an input file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdBase {
    /// Detect from the minimum id: 0 present means 0-based, otherwise 1-based.
    #[default]
    Auto,
    Zero,
    One,
}

#[derive(Debug, Clone)]
pub struct LoadOptions {
    pub id_base: IdBase,
    pub require_connected: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            id_base: IdBase::Auto,
            require_connected: true,
        }
    }
}

/// A loaded graph plus what the loader had to clean up.
#[derive(Debug)]
pub struct LoadSummary {
    pub graph: Graph,
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
    /// 0 or 1; the detected (or forced) id convention of the file.
    pub id_base: u64,
}

/// Parses a whitespace-separated edge list.
///
/// Lines starting with `%` or `#` are comments; a leading data line with
/// exactly three integers is treated as a size header and skipped. Ids are
/// remapped to `0..n` in first-appearance order; duplicate edges and
/// self-loops are dropped and counted.
pub fn load_edge_list(input: impl BufRead, opts: &LoadOptions) -> Result<LoadSummary> {
    let mut raw_edges: Vec<(u64, u64)> = Vec::new();
    let mut self_loops = 0usize;
    let mut first_data_line = true;

    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if first_data_line {
            first_data_line = false;
            if tokens.len() == 3 && tokens.iter().all(|t| t.parse::<u64>().is_ok()) {
                continue; // size header
            }
        }
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected two vertex ids, found {} tokens", tokens.len()),
            });
        }
        let parse = |tok: &str| {
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("unparsable vertex id {tok:?}"),
            })
        };
        let u = parse(tokens[0])?;
        let v = parse(tokens[1])?;
        if u == v {
            self_loops += 1;
            // A self-loop still introduces its vertex.
            raw_edges.push((u, v));
        } else {
            raw_edges.push((u, v));
        }
    }

    if raw_edges.is_empty() {
        return Err(Error::EmptyInput);
    }

    let min_id = raw_edges.iter().map(|&(u, v)| u.min(v)).min().unwrap();
    let id_base = match opts.id_base {
        IdBase::Auto => u64::from(min_id > 0),
        IdBase::Zero => 0,
        IdBase::One => {
            if min_id == 0 {
                return Err(Error::Parse {
                    line: 0,
                    msg: "vertex id 0 found in input declared 1-based".into(),
                });
            }
            1
        }
    };

    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut original_ids: Vec<u64> = Vec::new();
    let intern = |id: u64, index: &mut HashMap<u64, usize>, originals: &mut Vec<u64>| {
        *index.entry(id).or_insert_with(|| {
            originals.push(id);
            originals.len() - 1
        })
    };

    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut duplicates = 0usize;
    for (u, v) in raw_edges {
        let ui = intern(u, &mut index, &mut original_ids);
        let vi = intern(v, &mut index, &mut original_ids);
        if ui == vi {
            continue; // counted above
        }
        let key = (ui.min(vi), ui.max(vi));
        if seen.insert(key) {
            edges.push((ui, vi));
        } else {
            duplicates += 1;
        }
    }

    let n = original_ids.len();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    let graph = Graph {
        adj,
        m: edges.len(),
        original_ids,
    };

    if opts.require_connected {
        let components = component_count(&graph);
        if components > 1 {
            return Err(Error::Disconnected { components });
        }
    }

    Ok(LoadSummary {
        graph,
        self_loops_dropped: self_loops,
        duplicates_dropped: duplicates,
        id_base,
    })
}

/// Convenience wrapper over [`load_edge_list`] for in-memory text.
pub fn load_edge_list_str(text: &str, opts: &LoadOptions) -> Result<LoadSummary> {
    load_edge_list(std::io::Cursor::new(text.as_bytes()), opts)
}

fn component_labels(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if label[w] == usize::MAX {
                    label[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    label
}

fn component_count(g: &Graph) -> usize {
    component_labels(g).iter().max().map_or(0, |&max| max + 1)
}

/// Induced subgraph on the largest connected component, ids re-densified.
/// Size ties go to the component containing the smallest original id.
pub fn largest_component(g: &Graph) -> Graph {
    let labels = component_labels(g);
    let count = labels.iter().max().map_or(0, |&max| max + 1);
    if count <= 1 {
        return g.clone();
    }
    let mut size = vec![0usize; count];
    let mut min_orig = vec![u64::MAX; count];
    for (v, &c) in labels.iter().enumerate() {
        size[c] += 1;
        min_orig[c] = min_orig[c].min(g.original_id(v));
    }
    let best = (0..count)
        .max_by(|&a, &b| size[a].cmp(&size[b]).then(min_orig[b].cmp(&min_orig[a])))
        .unwrap();

    let kept: Vec<usize> = (0..g.vertex_count()).filter(|&v| labels[v] == best).collect();
    let mut remap = vec![usize::MAX; g.vertex_count()];
    for (new, &old) in kept.iter().enumerate() {
        remap[old] = new;
    }
    let mut adj = vec![Vec::new(); kept.len()];
    let mut m = 0;
    for (new, &old) in kept.iter().enumerate() {
        for &w in g.neighbors(old) {
            adj[new].push(remap[w]);
            if old < w {
                m += 1;
            }
        }
        adj[new].sort_unstable();
    }
    Graph {
        adj,
        m,
        original_ids: kept.iter().map(|&v| g.original_id(v)).collect(),
    }
}

/// Maximum and mean degree.
pub fn degree_stats(g: &Graph) -> (usize, f64) {
    let max = (0..g.vertex_count()).map(|v| g.degree(v)).max().unwrap_or(0);
    let mean = 2.0 * g.edge_count() as f64 / g.vertex_count() as f64;
    (max, mean)
}
