//! Monte Carlo estimators of the exactly-one path count.
//!
//! All estimators share the same shape: draw something with a known
//! probability, score it with the inverse of that probability so the
//! expectation telescopes to the exact count, and average over `T`
//! iterations with a one-pass mean/variance accumulator.
//!
//! Iteration `t` draws from its own RNG substream derived from
//! `(seed, t)`, so results are reproducible bit-for-bit and independent of
//! iteration order. The generator is ChaCha8 with `set_stream(t + 1)`.
//!
//! Memory stays linear in the graph: estimators run a fresh BFS per
//! iteration instead of consulting an all-pairs cache.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{member_avoid_rows, pair_exclusive_count, per_source_exclusive_from_rows};
use crate::graph::{Graph, VertexSet};
use crate::spd::{bfs_sssp, sample_shortest_path, INF};

/// Ordered pairs `(i, j)`, `i != j`, over an admissible vertex list.
#[derive(Debug, Clone)]
pub struct PairSpace {
    vertices: Vec<usize>,
}

impl PairSpace {
    /// Endpoint universe `V \ A`.
    pub fn excluding(n: usize, a: &VertexSet) -> Result<PairSpace> {
        let vertices: Vec<usize> = (0..n).filter(|&v| !a.contains(v)).collect();
        Self::from_vertices(vertices)
    }

    /// Endpoint universe of all vertices, used by the candidate-family
    /// estimator where endpoint admissibility is checked per set instead.
    pub fn all(n: usize) -> Result<PairSpace> {
        Self::from_vertices((0..n).collect())
    }

    fn from_vertices(vertices: Vec<usize>) -> Result<PairSpace> {
        if vertices.len() < 2 {
            return Err(Error::DegeneratePairSpace);
        }
        Ok(PairSpace { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of ordered pairs.
    pub fn count(&self) -> u64 {
        let k = self.vertices.len() as u64;
        k * (k - 1)
    }

    fn pair_at(&self, idx: u64) -> (usize, usize) {
        let k = self.vertices.len() as u64;
        let i = (idx / (k - 1)) as usize;
        let mut j = (idx % (k - 1)) as usize;
        if j >= i {
            j += 1;
        }
        (self.vertices[i], self.vertices[j])
    }

    /// All ordered pairs, in a fixed order.
    pub fn iter_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.count()).map(|idx| self.pair_at(idx))
    }

    fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// How endpoint pairs are drawn.
#[derive(Debug, Clone)]
pub enum PairDistribution {
    /// One uniform draw over the whole ordered-pair space.
    UniformPair,
    /// A uniform source, then a uniform target among the rest. Same pair
    /// probabilities as [`PairDistribution::UniformPair`], different draw
    /// pattern.
    UniformSource,
    /// Explicit per-pair probabilities: strictly positive on every pair of
    /// the space and summing to one.
    Custom(CustomPairs),
}

#[derive(Debug, Clone)]
pub struct CustomPairs {
    pairs: Vec<((usize, usize), f64)>,
    lookup: HashMap<(usize, usize), f64>,
}

impl CustomPairs {
    pub fn new(mut entries: Vec<((usize, usize), f64)>) -> CustomPairs {
        entries.sort_by_key(|&(p, _)| p);
        let lookup = entries.iter().copied().collect();
        CustomPairs {
            pairs: entries,
            lookup,
        }
    }
}

impl PairDistribution {
    /// Checks the distribution against a concrete pair space: positive
    /// everywhere on it, total mass one, nothing outside it.
    pub fn validate(&self, space: &PairSpace) -> Result<()> {
        let custom = match self {
            PairDistribution::Custom(c) => c,
            _ => return Ok(()),
        };
        if custom.pairs.len() as u64 != space.count() {
            return Err(Error::InvalidDistribution(format!(
                "{} pairs given, space has {}",
                custom.pairs.len(),
                space.count()
            )));
        }
        let mut total = 0.0f64;
        for &((i, j), p) in &custom.pairs {
            if i == j || !space.contains(i) || !space.contains(j) {
                return Err(Error::InvalidDistribution(format!(
                    "pair ({i},{j}) is outside the sample space"
                )));
            }
            if !(p > 0.0) || !p.is_finite() {
                return Err(Error::InvalidDistribution(format!(
                    "pair ({i},{j}) has non-positive probability {p}"
                )));
            }
            total += p;
        }
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}, expected 1"
            )));
        }
        Ok(())
    }

    /// Probability of drawing the ordered pair `(i, j)`.
    pub fn prob(&self, space: &PairSpace, i: usize, j: usize) -> f64 {
        match self {
            PairDistribution::UniformPair | PairDistribution::UniformSource => {
                1.0 / space.count() as f64
            }
            PairDistribution::Custom(c) => c.lookup.get(&(i, j)).copied().unwrap_or(0.0),
        }
    }

    fn draw(&self, space: &PairSpace, rng: &mut impl Rng) -> (usize, usize) {
        match self {
            PairDistribution::UniformPair => space.pair_at(rng.random_range(0..space.count())),
            PairDistribution::UniformSource => {
                let k = space.vertices.len();
                let i = rng.random_range(0..k);
                let mut j = rng.random_range(0..k - 1);
                if j >= i {
                    j += 1;
                }
                (space.vertices[i], space.vertices[j])
            }
            PairDistribution::Custom(c) => {
                let u: f64 = rng.random();
                let mut acc = 0.0;
                for &(pair, p) in &c.pairs {
                    acc += p;
                    if u < acc {
                        return pair;
                    }
                }
                c.pairs.last().unwrap().0
            }
        }
    }
}

/// Result of one estimator run.
#[derive(Debug, Clone)]
pub struct SampleEstimate {
    pub mean: f64,
    /// Unbiased sample variance of the per-iteration scores; 0 when fewer
    /// than two samples.
    pub sample_variance: f64,
    pub samples: u64,
    pub seed: u64,
    pub target_set: VertexSet,
}

/// One-pass mean and squared-deviation accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct Welford {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn sample_variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }
}

fn stream_rng(seed: u64, t: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t + 1);
    rng
}

/// True when exactly one set member lies strictly inside the path.
pub fn exactly_one_internal(path: &[usize], member_mask: &[bool]) -> bool {
    path[1..path.len() - 1]
        .iter()
        .filter(|&&v| member_mask[v])
        .count()
        == 1
}

/// Path-sampling estimator with an arbitrary pair distribution: draw a
/// pair, draw one of its shortest paths uniformly, score
/// `1 / (p_ij * q)` with `q = 1 / sigma_ij` when exactly one member is
/// internal.
pub fn estimate_general(
    g: &Graph,
    a: &VertexSet,
    dist: &PairDistribution,
    samples: u64,
    seed: u64,
) -> Result<SampleEstimate> {
    assert!(samples >= 1);
    let space = PairSpace::excluding(g.vertex_count(), a)?;
    dist.validate(&space)?;
    let mask = a.mask(g.vertex_count());
    let mut acc = Welford::default();
    for t in 0..samples {
        let mut rng = stream_rng(seed, t);
        let (i, j) = dist.draw(&space, &mut rng);
        let dag = bfs_sssp(g, i)?;
        let path = sample_shortest_path(&dag, j, &mut rng)?;
        let beta = if exactly_one_internal(&path, &mask) {
            dag.sigma[j] as f64 / dist.prob(&space, i, j)
        } else {
            0.0
        };
        acc.push(beta);
    }
    Ok(SampleEstimate {
        mean: acc.mean,
        sample_variance: acc.sample_variance(),
        samples,
        seed,
        target_set: a.clone(),
    })
}

/// Source-sampling estimator: draw a source uniformly from `V \ A` and
/// count its qualifying paths exactly; score `count * |V \ A|`.
pub fn estimate_source_sampling(
    g: &Graph,
    a: &VertexSet,
    samples: u64,
    seed: u64,
) -> Result<SampleEstimate> {
    assert!(samples >= 1);
    let space = PairSpace::excluding(g.vertex_count(), a)?;
    let sources = space.vertices();
    let mask = a.mask(g.vertex_count());
    let rows = member_avoid_rows(g, a)?;
    let mut acc = Welford::default();
    for t in 0..samples {
        let mut rng = stream_rng(seed, t);
        let s = sources[rng.random_range(0..sources.len())];
        let dag = bfs_sssp(g, s)?;
        let count = per_source_exclusive_from_rows(s, &dag.dist, &mask, &rows)?;
        acc.push(count as f64 * sources.len() as f64);
    }
    Ok(SampleEstimate {
        mean: acc.mean,
        sample_variance: acc.sample_variance(),
        samples,
        seed,
        target_set: a.clone(),
    })
}

/// Pair-sampling estimator: draw an ordered pair uniformly from
/// `(V \ A)^2` off the diagonal and count its qualifying paths exactly;
/// score `count * |space|`.
pub fn estimate_pair_sampling(
    g: &Graph,
    a: &VertexSet,
    samples: u64,
    seed: u64,
) -> Result<SampleEstimate> {
    assert!(samples >= 1);
    let space = PairSpace::excluding(g.vertex_count(), a)?;
    let rows = member_avoid_rows(g, a)?;
    let scale = space.count() as f64;
    let mut acc = Welford::default();
    for t in 0..samples {
        let mut rng = stream_rng(seed, t);
        let (i, j) = space.pair_at(rng.random_range(0..space.count()));
        let dag = bfs_sssp(g, i)?;
        if dag.dist[j] == INF {
            return Err(Error::Unreachable { from: i, to: j });
        }
        let count = pair_exclusive_count(&rows, i, j, dag.dist[j])?;
        acc.push(count as f64 * scale);
    }
    Ok(SampleEstimate {
        mean: acc.mean,
        sample_variance: acc.sample_variance(),
        samples,
        seed,
        target_set: a.clone(),
    })
}

/// Path-sampling estimator: uniform pair, then one uniform shortest path.
/// This is [`estimate_general`] with the uniform pair distribution.
pub fn estimate_path_sampling(
    g: &Graph,
    a: &VertexSet,
    samples: u64,
    seed: u64,
) -> Result<SampleEstimate> {
    estimate_general(g, a, &PairDistribution::UniformPair, samples, seed)
}

/// Scores many candidate sets against one shared sample stream.
///
/// Pairs are drawn over all vertices; a sampled path scores for a set when
/// exactly one member is internal AND neither endpoint is a member, so
/// each per-set estimate matches what that set's own estimator targets.
pub fn estimate_candidate_family(
    g: &Graph,
    family: &[VertexSet],
    dist: &PairDistribution,
    samples: u64,
    seed: u64,
) -> Result<Vec<SampleEstimate>> {
    assert!(samples >= 1);
    if family.is_empty() {
        return Err(Error::InvalidSet("candidate family is empty".into()));
    }
    let n = g.vertex_count();
    let space = PairSpace::all(n)?;
    dist.validate(&space)?;
    let masks: Vec<Vec<bool>> = family.iter().map(|a| a.mask(n)).collect();
    let mut accs = vec![Welford::default(); family.len()];
    for t in 0..samples {
        let mut rng = stream_rng(seed, t);
        let (i, j) = dist.draw(&space, &mut rng);
        let dag = bfs_sssp(g, i)?;
        let path = sample_shortest_path(&dag, j, &mut rng)?;
        let base = dag.sigma[j] as f64 / dist.prob(&space, i, j);
        for (acc, mask) in accs.iter_mut().zip(&masks) {
            let hit = !mask[i] && !mask[j] && exactly_one_internal(&path, mask);
            acc.push(if hit { base } else { 0.0 });
        }
    }
    Ok(family
        .iter()
        .zip(accs)
        .map(|(a, acc)| SampleEstimate {
            mean: acc.mean,
            sample_variance: acc.sample_variance(),
            samples,
            seed,
            target_set: a.clone(),
        })
        .collect())
}
