//! Seeded random graph models: `G(n, p)`, random `r`-regular graphs,
//! random equipartitions, and the codegree statistic of a partition.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};

/// Identifies a random stream: a master seed and a stream (trial) index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSpec {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl RngSpec {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        RngSpec {
            master_seed,
            stream_id,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// Index of the pair `u < v` in the lexicographic order of pairs of `0..n`.
fn pair_index(n: usize, u: usize, v: usize) -> u64 {
    let (u, v) = (u as u64, v as u64);
    let n = n as u64;
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

fn unit_interval(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// The uniform draw deciding pair `{u, v}` in [`gnp`]. It depends only on
/// `spec`, `n` and the pair: word `2 * pair_index` of the ChaCha stream.
pub fn pair_uniform(spec: RngSpec, n: usize, u: usize, v: usize) -> f64 {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    let mut rng = spec.rng();
    rng.set_word_pos(2 * pair_index(n, u, v) as u128);
    unit_interval(rng.next_u64())
}

/// Binomial random graph: each pair independently with probability `p`.
pub fn gnp(n: usize, p: f64, spec: RngSpec) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "p = {p} is not a probability"
        )));
    }
    // Sequential reads visit the pairs in index order, so this agrees with
    // `pair_uniform` pair by pair.
    let mut rng = spec.rng();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if unit_interval(rng.next_u64()) < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// Default restart budget for [`random_regular`].
pub const REGULAR_RESTARTS: usize = 10_000;

/// Largest degree sampled by plain configuration-model rejection; above it
/// the pairing is built incrementally.
pub const EXACT_REJECTION_MAX_DEGREE: usize = 5;

/// Random simple `r`-regular graph on `n` vertices.
///
/// For `r <= 5` this is the configuration model with whole-sample
/// rejection, which is exactly uniform. For larger `r` the acceptance
/// probability of whole-sample rejection (about `exp(-(r^2-1)/4)`) is too
/// small, and points are paired one at a time, rejecting only pairs that
/// would create a loop or a parallel edge and restarting on a dead end. That
/// sampler is asymptotically uniform for fixed `r`.
pub fn random_regular(n: usize, r: usize, spec: RngSpec) -> Result<Graph> {
    if n * r % 2 == 1 {
        return Err(Error::InvalidParameter(format!("n * r = {} is odd", n * r)));
    }
    if r >= n && !(n == 0 && r == 0) {
        return Err(Error::InvalidParameter(format!(
            "r = {r} must be less than n = {n}"
        )));
    }
    let mut rng = spec.rng();
    for _ in 0..REGULAR_RESTARTS {
        let attempt = if r <= EXACT_REJECTION_MAX_DEGREE {
            pairing_whole(n, r, &mut rng)
        } else {
            pairing_incremental(n, r, &mut rng)
        };
        if let Some(edges) = attempt {
            return Graph::new(n, edges);
        }
    }
    Err(Error::RetryBudgetExhausted(REGULAR_RESTARTS))
}

fn pairing_whole<R: Rng>(n: usize, r: usize, rng: &mut R) -> Option<Vec<(usize, usize)>> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| core::iter::repeat_n(v, r)).collect();
    points.shuffle(rng);
    let mut adj = vec![FixedBitSet::with_capacity(n); n];
    let mut edges = Vec::with_capacity(points.len() / 2);
    for pair in points.chunks_exact(2) {
        let (u, v) = (pair[0], pair[1]);
        if u == v || adj[u].contains(v) {
            return None;
        }
        adj[u].insert(v);
        adj[v].insert(u);
        edges.push((u, v));
    }
    Some(edges)
}

fn pairing_incremental<R: Rng>(n: usize, r: usize, rng: &mut R) -> Option<Vec<(usize, usize)>> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| core::iter::repeat_n(v, r)).collect();
    let mut adj = vec![FixedBitSet::with_capacity(n); n];
    let mut edges = Vec::with_capacity(points.len() / 2);
    let mut misses = 0usize;
    while !points.is_empty() {
        let i = rng.gen_range(0..points.len());
        let j = rng.gen_range(0..points.len());
        let (u, v) = (points[i], points[j]);
        if i == j || u == v || adj[u].contains(v) {
            misses += 1;
            if misses > 50 * points.len() {
                let stuck = !points.iter().enumerate().any(|(a, &x)| {
                    points[a + 1..]
                        .iter()
                        .any(|&y| x != y && !adj[x].contains(y))
                });
                if stuck {
                    return None;
                }
                misses = 0;
            }
            continue;
        }
        misses = 0;
        adj[u].insert(v);
        adj[v].insert(u);
        edges.push((u, v));
        let (hi, lo) = if i > j { (i, j) } else { (j, i) };
        points.swap_remove(hi);
        points.swap_remove(lo);
    }
    Some(edges)
}

/// Uniformly random partition of `0..n` into `m` blocks with sizes
/// `ceil(n/m)` or `floor(n/m)`, larger blocks first.
pub fn random_equipartition(n: usize, m: usize, spec: RngSpec) -> Result<Partition> {
    if m == 0 || m > n {
        return Err(Error::InvalidParameter(format!(
            "m = {m} out of range for {n} vertices"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut spec.rng());
    let (q, extra) = (order.len() / m, order.len() % m);
    let mut blocks = Vec::with_capacity(m);
    let mut start = 0;
    for i in 0..m {
        let size = q + usize::from(i < extra);
        blocks.push(order[start..start + size].to_vec());
        start += size;
    }
    Partition::new(n, blocks)
}

/// `δ_2(π)`: the minimum over vertex pairs of the number of blocks that
/// contain a common neighbour of the pair.
pub fn partition_codegree(g: &Graph, partition: &Partition) -> Result<usize> {
    partition.check_graph(g)?;
    let n = g.n();
    if n < 2 {
        return Err(Error::TooFewVertices { n, min: 2 });
    }
    let masks = partition.masks();
    let mut common = FixedBitSet::with_capacity(n);
    let mut best = usize::MAX;
    for u in 0..n {
        for v in u + 1..n {
            common.clone_from(g.neighbors(u));
            common.intersect_with(g.neighbors(v));
            let hit = masks.iter().filter(|m| !m.is_disjoint(&common)).count();
            best = best.min(hit);
            if best == 0 {
                return Ok(0);
            }
        }
    }
    Ok(best)
}

/// Empirical distribution of `δ_2(π)` over random equipartitions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodegreeStats {
    pub m: usize,
    pub samples: Vec<usize>,
}

impl CodegreeStats {
    pub fn min(&self) -> Option<usize> {
        self.samples.iter().copied().min()
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<usize>() as f64 / self.samples.len().max(1) as f64
    }

    /// Fraction of samples with `δ_2(π) * den >= num`, i.e. at least `num/den`.
    pub fn fraction_at_least(&self, num: usize, den: usize) -> f64 {
        let hits = self.samples.iter().filter(|&&s| s * den >= num).count();
        hits as f64 / self.samples.len().max(1) as f64
    }
}

/// Samples `trials` equipartitions into `m` blocks, trial `t` using stream
/// `spec.stream_id + t`.
pub fn codegree_partition_stats(
    g: &Graph,
    m: usize,
    trials: usize,
    spec: RngSpec,
) -> Result<CodegreeStats> {
    let samples = (0..trials)
        .map(|t| {
            let s = RngSpec::new(spec.master_seed, spec.stream_id + t as u64);
            partition_codegree(g, &random_equipartition(g.n(), m, s)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CodegreeStats { m, samples })
}
