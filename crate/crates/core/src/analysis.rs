//! Correlation studies, benchmark harness, and CSV emission.
//!
//! These drive the exact measures over whole families of sets: every
//! k-subset for the correlation report, seeded random subsets for the
//! timing report. Values stay in the ordered-pair convention internally;
//! halving for unordered presentation happens at render time.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{co_betweenness, exclusive_betweenness_ie, SUBSET_GUARD};
use crate::graph::{Graph, VertexSet};
use crate::spd::SpCache;

/// Cap on how many sets a correlation run may enumerate.
pub const SET_ENUMERATION_GUARD: u64 = 1_000_000;

/// Pair-count presentation. Ordered is the native convention; unordered
/// halves every (always even) count at render time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    Ordered,
    Unordered,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Ordered => "ordered",
            Convention::Unordered => "unordered",
        }
    }

    pub fn render(self, value: u64) -> u64 {
        match self {
            Convention::Ordered => value,
            Convention::Unordered => value / 2,
        }
    }
}

/// Run metadata embedded in CSV comment lines.
#[derive(Debug, Clone)]
pub struct CsvMeta {
    pub tool: String,
    pub graph: String,
    pub convention: Convention,
    pub seed: Option<u64>,
}

impl CsvMeta {
    pub fn header_lines(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# tool: {}\n", self.tool));
        out.push_str(&format!("# graph: {}\n", self.graph));
        out.push_str(&format!("# convention: {}\n", self.convention.as_str()));
        if let Some(seed) = self.seed {
            out.push_str(&format!("# seed: {seed}\n"));
        }
        out
    }
}

/// Product-moment correlation. Inputs must have equal length of at least
/// two; a constant column has no defined coefficient.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    assert_eq!(x.len(), y.len());
    assert!(x.len() >= 2);
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
        sxy += (a - mx) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ConstantInput);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// 1-based ranks with ties sharing their average position.
pub fn average_ranks(x: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].partial_cmp(&x[b]).unwrap());
    let mut ranks = vec![0.0; x.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && x[order[j + 1]] == x[order[i]] {
            j += 1;
        }
        let shared = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = shared;
        }
        i = j + 1;
    }
    ranks
}

/// Rank correlation: product-moment coefficient of the average ranks.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    pearson(&average_ranks(x), &average_ranks(y))
}

/// One evaluated set with its three measures (ordered-pair counts).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetMeasures {
    /// Internal vertex ids, sorted.
    pub members: Vec<usize>,
    pub xb: u64,
    pub gb: u64,
    pub cb: u64,
}

/// All three set measures from one pass over the subset terms. The
/// at-least-one and exactly-one values share the same co-betweenness
/// terms with different coefficients, and the all-members value is the
/// full-subset term itself.
pub fn set_measures(cache: &SpCache, a: &VertexSet) -> Result<SetMeasures> {
    let k = a.len();
    if k > SUBSET_GUARD {
        return Err(Error::GuardExceeded {
            size: k,
            guard: SUBSET_GUARD,
        });
    }
    let n = cache.vertex_count();
    let mut gb: i128 = 0;
    let mut xb: i128 = 0;
    let mut cb = 0u64;
    for bits in 1u32..(1u32 << k) {
        let members: Vec<usize> = a
            .members()
            .iter()
            .enumerate()
            .filter(|(i, _)| bits & (1 << i) != 0)
            .map(|(_, &m)| m)
            .collect();
        let subset = VertexSet::new(members, n)?;
        let cc = co_betweenness(cache, &subset, a)?;
        let j = bits.count_ones() as i128;
        let sign = if j % 2 == 1 { 1 } else { -1 };
        gb += sign * cc as i128;
        xb += sign * j * cc as i128;
        if bits == (1u32 << k) - 1 {
            cb = cc;
        }
    }
    if gb < 0 || xb < 0 || gb > u64::MAX as i128 || xb > u64::MAX as i128 {
        return Err(Error::CountOverflow);
    }
    Ok(SetMeasures {
        members: a.members().to_vec(),
        xb: xb as u64,
        gb: gb as u64,
        cb,
    })
}

/// Exact measures for every k-subset plus the pairwise correlation
/// coefficients of the three value columns.
#[derive(Debug, Clone)]
pub struct CorrelationReport {
    pub size: usize,
    pub rows: Vec<SetMeasures>,
    pub pearson_xb_gb: f64,
    pub pearson_xb_cb: f64,
    pub pearson_gb_cb: f64,
    pub spearman_xb_gb: f64,
    pub spearman_xb_cb: f64,
    pub spearman_gb_cb: f64,
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc.checked_mul(n - i)?;
        acc /= i + 1;
    }
    Some(acc)
}

/// Lexicographic k-subset walker over `0..n`.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Combinations {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n || k == 0,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let current = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(current)
    }
}

/// Evaluates every k-subset of the graph's vertices, in lexicographic
/// order, refusing when the subset count exceeds `max_sets`.
pub fn correlate_size_k(g: &Graph, k: usize, max_sets: u64) -> Result<CorrelationReport> {
    let n = g.vertex_count();
    if k == 0 || k >= n {
        return Err(Error::InvalidSet(format!(
            "subset size {k} is not in 1..{n}"
        )));
    }
    let total = binomial(n as u64, k as u64).ok_or(Error::CountOverflow)?;
    if total > max_sets {
        return Err(Error::GuardExceeded {
            size: total as usize,
            guard: max_sets as usize,
        });
    }
    let cache = SpCache::build(g)?;
    let mut rows = Vec::with_capacity(total as usize);
    for members in Combinations::new(n, k) {
        let a = VertexSet::new(members, n)?;
        rows.push(set_measures(&cache, &a)?);
    }

    let xb: Vec<f64> = rows.iter().map(|r| r.xb as f64).collect();
    let gb: Vec<f64> = rows.iter().map(|r| r.gb as f64).collect();
    let cb: Vec<f64> = rows.iter().map(|r| r.cb as f64).collect();
    Ok(CorrelationReport {
        size: k,
        pearson_xb_gb: pearson(&xb, &gb)?,
        pearson_xb_cb: pearson(&xb, &cb)?,
        pearson_gb_cb: pearson(&gb, &cb)?,
        spearman_xb_gb: spearman(&xb, &gb)?,
        spearman_xb_cb: spearman(&xb, &cb)?,
        spearman_gb_cb: spearman(&gb, &cb)?,
        rows,
    })
}

/// Renders a set as its sorted original ids joined with `-`.
pub fn set_label(g: &Graph, members: &[usize]) -> String {
    let mut originals: Vec<u64> = members.iter().map(|&v| g.original_id(v)).collect();
    originals.sort_unstable();
    originals
        .iter()
        .map(|o| o.to_string())
        .collect::<Vec<_>>()
        .join("-")
}

impl CorrelationReport {
    pub fn to_csv(&self, g: &Graph, meta: &CsvMeta) -> String {
        let mut out = meta.header_lines();
        out.push_str(&format!("# size: {}\n", self.size));
        out.push_str(&format!("# sets: {}\n", self.rows.len()));
        out.push_str(&format!("# pearson_xb_gb: {}\n", self.pearson_xb_gb));
        out.push_str(&format!("# pearson_xb_cb: {}\n", self.pearson_xb_cb));
        out.push_str(&format!("# pearson_gb_cb: {}\n", self.pearson_gb_cb));
        out.push_str(&format!("# spearman_xb_gb: {}\n", self.spearman_xb_gb));
        out.push_str(&format!("# spearman_xb_cb: {}\n", self.spearman_xb_cb));
        out.push_str(&format!("# spearman_gb_cb: {}\n", self.spearman_gb_cb));
        out.push_str("set,xb,gb,cb\n");
        let c = meta.convention;
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                set_label(g, &row.members),
                c.render(row.xb),
                c.render(row.gb),
                c.render(row.cb)
            ));
        }
        out
    }
}

/// Timings for one subset size.
#[derive(Debug, Clone)]
pub struct BenchSizeReport {
    pub k: usize,
    /// Per-trial wall time, in trial order.
    pub times: Vec<Duration>,
    pub max: Duration,
    pub median: Duration,
}

/// Wall-clock timings of the exactly-one computation over random subsets.
#[derive(Debug, Clone)]
pub struct BenchReport {
    pub cache_build: Duration,
    pub trials: usize,
    pub seed: u64,
    pub sizes: Vec<BenchSizeReport>,
}

fn median_duration(sorted: &[Duration]) -> Duration {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2
    }
}

/// Times the inclusion-exclusion exactly-one computation on `trials`
/// seeded random subsets per size. The all-pairs cache is built once and
/// shared; its build time is reported separately so per-subset timings are
/// comparable across sizes. Single-threaded.
pub fn bench_exclusive(g: &Graph, sizes: &[usize], trials: usize, seed: u64) -> Result<BenchReport> {
    assert!(trials >= 1);
    let n = g.vertex_count();
    for &k in sizes {
        if k > SUBSET_GUARD {
            return Err(Error::GuardExceeded {
                size: k,
                guard: SUBSET_GUARD,
            });
        }
        if k == 0 || k >= n {
            return Err(Error::InvalidSet(format!(
                "subset size {k} is not in 1..{n}"
            )));
        }
    }

    let started = Instant::now();
    let cache = SpCache::build(g)?;
    let cache_build = started.elapsed();

    let mut reports = Vec::with_capacity(sizes.len());
    for &k in sizes {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64 + 1);
        let mut times = Vec::with_capacity(trials);
        for _ in 0..trials {
            let members = rand::seq::index::sample(&mut rng, n, k).into_vec();
            let a = VertexSet::new(members, n)?;
            let t0 = Instant::now();
            let value = exclusive_betweenness_ie(&cache, &a)?;
            let elapsed = t0.elapsed();
            std::hint::black_box(value);
            times.push(elapsed);
        }
        let mut sorted = times.clone();
        sorted.sort_unstable();
        reports.push(BenchSizeReport {
            k,
            max: *sorted.last().unwrap(),
            median: median_duration(&sorted),
            times,
        });
    }
    Ok(BenchReport {
        cache_build,
        trials,
        seed,
        sizes: reports,
    })
}

impl BenchReport {
    pub fn to_csv(&self, meta: &CsvMeta) -> String {
        let mut out = meta.header_lines();
        out.push_str(&format!(
            "# cache_build_seconds: {}\n",
            self.cache_build.as_secs_f64()
        ));
        out.push_str("k,trials,max_seconds,median_seconds\n");
        for s in &self.sizes {
            out.push_str(&format!(
                "{},{},{},{}\n",
                s.k,
                self.trials,
                s.max.as_secs_f64(),
                s.median.as_secs_f64()
            ));
        }
        out
    }
}
