//! Connector pipeline: from an equipartition with well-connected block pairs,
//! discard a few vertices per block and certify that the rest induces a
//! `d`-rigid graph.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::certify::{certify_strong_partition, CertifierVerdict};
use crate::error::{Error, Result};
use crate::graph::{bipartite_components, Graph, Partition, VertexSet};
use crate::rigidity::{is_d_rigid, RigidityVerdict, DEFAULT_TRIALS};

/// Largest `C(|V_i|, k)` the connector test enumerates.
pub const CONNECTOR_ENUMERATION_CAP: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectorConfig {
    pub k: usize,
    /// Minimum-degree ratio of `G_0`, kept exact.
    pub eta: Ratio<u64>,
    /// Per-block removal cap.
    pub s: usize,
    pub seed: u64,
    /// Re-check the residual graph with a direct rank computation.
    pub verify_rank: bool,
}

impl ConnectorConfig {
    /// Defaults to `s = 4k` and rank verification on.
    pub fn new(k: usize, eta: Ratio<u64>, seed: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be positive".into()));
        }
        if *eta.numer() * 2 <= *eta.denom() || eta.numer() > eta.denom() {
            return Err(Error::InvalidParameter(format!(
                "eta = {eta} must lie in (1/2, 1]"
            )));
        }
        Ok(ConnectorConfig {
            k,
            eta,
            s: 4 * k,
            seed,
            verify_rank: true,
        })
    }

    /// `floor((eta - 1/2) m)`.
    pub fn target_dimension(&self, m: usize) -> usize {
        let (num, den) = (*self.eta.numer() as u128, *self.eta.denom() as u128);
        ((2 * num - den) * m as u128 / (2 * den)) as usize
    }

    /// `delta >= eta m - 1`.
    pub fn degree_ok(&self, delta: usize, m: usize) -> bool {
        let (num, den) = (*self.eta.numer() as u128, *self.eta.denom() as u128);
        (delta as u128 + 1) * den >= num * m as u128
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
        if acc > CONNECTOR_ENUMERATION_CAP * 1000 {
            return u128::MAX;
        }
    }
    acc
}

/// Whether `(V_i, V_j)` is a `k`-connector pair: every `k`-subset of `V_i`
/// and every `k`-subset of `V_j` span an edge. Equivalently, for each
/// `k`-subset `X` of the smaller block, fewer than `k` vertices of the
/// other block have no neighbour in `X`. Only `X` is enumerated, with
/// pruning once the non-neighbours drop below `k`.
pub fn k_connector_edge(g: &Graph, vi: &[usize], vj: &[usize], k: usize) -> Result<bool> {
    for b in [vi, vj] {
        if b.len() < k {
            return Err(Error::BlockTooSmall { k, size: b.len() });
        }
        for &x in b {
            g.check_vertex(x)?;
        }
    }
    let (side, other) = if vi.len() <= vj.len() {
        (vi, vj)
    } else {
        (vj, vi)
    };
    if binomial(side.len(), k) > CONNECTOR_ENUMERATION_CAP {
        return Err(Error::Undecided {
            size: side.len(),
            k,
        });
    }
    let other = crate::graph::vertex_set(g.n(), other.iter().copied())?;
    Ok(!has_spread_subset(g, side, &other, k))
}

/// Whether some `k`-subset of `side` leaves at least `k` vertices of `other`
/// with no neighbour in the subset.
fn has_spread_subset(g: &Graph, side: &[usize], other: &VertexSet, k: usize) -> bool {
    fn go(
        g: &Graph,
        side: &[usize],
        start: usize,
        left: usize,
        rest: &FixedBitSet,
        k: usize,
    ) -> bool {
        if rest.count_ones(..) < k {
            return false;
        }
        if left == 0 {
            return true;
        }
        for idx in start..=side.len() - left {
            let mut next = rest.clone();
            next.difference_with(g.neighbors(side[idx]));
            if go(g, side, idx + 1, left - 1, &next, k) {
                return true;
            }
        }
        false
    }
    go(g, side, 0, k, other, k)
}

/// Auxiliary graph on the blocks: `ij` is an edge iff `(V_i, V_j)` is a
/// `k`-connector pair.
pub fn build_g0(g: &Graph, partition: &Partition, k: usize) -> Result<Graph> {
    partition.check_graph(g)?;
    let m = partition.len();
    let mut edges = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if k_connector_edge(g, partition.block(i), partition.block(j), k)? {
                edges.push((i, j));
            }
        }
    }
    Graph::new(m, edges)
}

/// The unique component of `G[V_i \ U, V_j \ U]` with at least `k`
/// vertices on each side.
pub fn big_component(
    g: &Graph,
    partition: &Partition,
    i: usize,
    j: usize,
    removed: &VertexSet,
    k: usize,
) -> Result<VertexSet> {
    let mut a = partition.mask(i);
    a.difference_with(removed);
    let mut b = partition.mask(j);
    b.difference_with(removed);
    let (labels, count) = bipartite_components(g, &a, &b);
    let mut sizes = alloc::vec![(0usize, 0usize); count];
    for v in a.ones() {
        sizes[labels[v].unwrap()].0 += 1;
    }
    for v in b.ones() {
        sizes[labels[v].unwrap()].1 += 1;
    }
    let mut big = sizes
        .iter()
        .enumerate()
        .filter(|(_, &(x, y))| x >= k && y >= k)
        .map(|(c, _)| c);
    let Some(c) = big.next() else {
        return Err(Error::NoBigComponent(i, j));
    };
    if big.next().is_some() {
        return Err(Error::MultipleBigComponents(i, j));
    }
    let mut out = FixedBitSet::with_capacity(g.n());
    for (v, l) in labels.iter().enumerate() {
        if *l == Some(c) {
            out.insert(v);
        }
    }
    Ok(out)
}

/// One vertex removal of [`eliminate_bad`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovalStep {
    pub vertex: usize,
    pub block: usize,
    /// Number of `G_0`-neighbours `j` whose big component with the vertex's
    /// block contains it.
    pub memberships: usize,
    pub g0_degree: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ConnectorTrace {
    pub g0_edges: Vec<(usize, usize)>,
    pub steps: Vec<RemovalStep>,
    pub removed: Vec<usize>,
    pub residual: Vec<usize>,
    pub d: usize,
}

type BigComponents = BTreeMap<(usize, usize), VertexSet>;

fn all_big_components(
    g: &Graph,
    p: &Partition,
    g0: &Graph,
    removed: &VertexSet,
    k: usize,
) -> Result<BigComponents> {
    let mut comps = BTreeMap::new();
    for &(i, j) in g0.edges() {
        comps.insert((i, j), big_component(g, p, i, j, removed, k)?);
    }
    Ok(comps)
}

/// Vertex `v` of `V_i` is bad when it lies in the big component for fewer
/// than `(1 - k/s)` of the `G_0`-neighbours of `i`. Tested exactly as
/// `count * s < deg * (s - k)`.
fn first_bad(
    p: &Partition,
    g0: &Graph,
    comps: &BigComponents,
    removed: &VertexSet,
    cfg: &ConnectorConfig,
) -> Option<RemovalStep> {
    bad_steps(p, g0, comps, removed, cfg).next()
}

fn bad_steps<'a>(
    p: &'a Partition,
    g0: &'a Graph,
    comps: &'a BigComponents,
    removed: &'a VertexSet,
    cfg: &'a ConnectorConfig,
) -> impl Iterator<Item = RemovalStep> + 'a {
    (0..p.len()).flat_map(move |i| {
        let nbrs: Vec<usize> = g0.neighbors(i).ones().collect();
        let deg = nbrs.len();
        p.block(i)
            .iter()
            .copied()
            .filter(|&v| !removed.contains(v))
            .filter_map(move |v| {
                let count = nbrs
                    .iter()
                    .filter(|&&j| comps[&(i.min(j), i.max(j))].contains(v))
                    .count();
                (count * cfg.s < deg * cfg.s.saturating_sub(cfg.k)).then_some(RemovalStep {
                    vertex: v,
                    block: i,
                    memberships: count,
                    g0_degree: deg,
                })
            })
    })
}

/// Vertices of `V \ removed` that are bad for `removed`, recomputed from
/// scratch.
pub fn bad_vertices(
    g: &Graph,
    p: &Partition,
    g0: &Graph,
    removed: &VertexSet,
    cfg: &ConnectorConfig,
) -> Result<Vec<usize>> {
    let comps = all_big_components(g, p, g0, removed, cfg.k)?;
    Ok(bad_steps(p, g0, &comps, removed, cfg)
        .map(|s| s.vertex)
        .collect())
}

/// Removes bad vertices one at a time, lowest block then lowest id first,
/// recomputing the affected big components after each removal. Fails if a
/// block loses more than `s` vertices.
pub fn eliminate_bad(
    g: &Graph,
    p: &Partition,
    g0: &Graph,
    cfg: &ConnectorConfig,
) -> Result<(VertexSet, ConnectorTrace)> {
    let mut removed = FixedBitSet::with_capacity(g.n());
    let mut comps = all_big_components(g, p, g0, &removed, cfg.k)?;
    let mut per_block = alloc::vec![0usize; p.len()];
    let mut trace = ConnectorTrace {
        g0_edges: g0.edges().to_vec(),
        ..ConnectorTrace::default()
    };
    while let Some(step) = first_bad(p, g0, &comps, &removed, cfg) {
        let i = step.block;
        per_block[i] += 1;
        if per_block[i] > cfg.s {
            return Err(Error::CapOverflow(i));
        }
        removed.insert(step.vertex);
        for j in g0.neighbors(i).ones() {
            let key = (i.min(j), i.max(j));
            comps.insert(key, big_component(g, p, key.0, key.1, &removed, cfg.k)?);
        }
        trace.steps.push(step);
    }
    trace.removed = removed.ones().collect();
    trace.residual = (0..g.n()).filter(|&v| !removed.contains(v)).collect();
    Ok((removed, trace))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConnectorOutcome {
    pub d: usize,
    pub certificate: CertifierVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_check: Option<RigidityVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<ConnectorTrace>,
}

impl ConnectorOutcome {
    pub fn accepted(&self) -> bool {
        self.certificate.accepted
    }

    fn violated(d: usize, reason: alloc::string::String) -> Self {
        ConnectorOutcome {
            d,
            certificate: CertifierVerdict::hypothesis_violated(d, reason),
            rank_check: None,
            trace: None,
        }
    }
}

/// Full pipeline. Checks the hypotheses (blocks larger than `7k - 3`,
/// `delta(G_0) >= eta m - 1`, `d >= 1`), removes bad vertices, and certifies
/// the residual graph with a strong partition whose `Q`-graphs ignore the
/// block itself. Hypothesis failures come back as a rejected certificate;
/// pipeline failures (undecidable connector test, missing or ambiguous big
/// component, cap overflow) as errors.
pub fn connector_certify(
    g: &Graph,
    p: &Partition,
    cfg: &ConnectorConfig,
) -> Result<ConnectorOutcome> {
    p.check_graph(g)?;
    let m = p.len();
    let d = cfg.target_dimension(m);
    let min_block = 7 * cfg.k - 3;
    if let Some(i) = (0..m).find(|&i| p.block(i).len() <= min_block) {
        return Ok(ConnectorOutcome::violated(
            d,
            format!(
                "block {i} has {} vertices, need more than {min_block}",
                p.block(i).len()
            ),
        ));
    }
    if d == 0 {
        return Ok(ConnectorOutcome::violated(
            d,
            format!("target dimension is 0 for m = {m}"),
        ));
    }
    let g0 = build_g0(g, p, cfg.k)?;
    let delta = g0.min_degree();
    if !cfg.degree_ok(delta, m) {
        let mut out =
            ConnectorOutcome::violated(d, format!("min degree of G_0 is {delta}, below eta m - 1"));
        out.trace = Some(ConnectorTrace {
            g0_edges: g0.edges().to_vec(),
            d,
            ..ConnectorTrace::default()
        });
        return Ok(out);
    }
    let (removed, mut trace) = eliminate_bad(g, p, &g0, cfg)?;
    trace.d = d;
    let mut keep = FixedBitSet::with_capacity(g.n());
    keep.insert_range(..);
    keep.difference_with(&removed);
    let (residual, old_of_new) = g.induced_subgraph(&keep);
    let mut new_of_old = alloc::vec![usize::MAX; g.n()];
    for (new, &old) in old_of_new.iter().enumerate() {
        new_of_old[old] = new;
    }
    let blocks: Vec<Vec<usize>> = p
        .blocks()
        .iter()
        .map(|b| {
            b.iter()
                .filter(|&&v| !removed.contains(v))
                .map(|&v| new_of_old[v])
                .collect()
        })
        .collect();
    let residual_partition = Partition::new(residual.n(), blocks)?;
    let certificate = certify_strong_partition(&residual, &residual_partition, d, false, cfg.seed)?;
    let rank_check = cfg
        .verify_rank
        .then(|| is_d_rigid(&residual, d, cfg.seed, DEFAULT_TRIALS));
    Ok(ConnectorOutcome {
        d,
        certificate,
        rank_check,
        trace: Some(trace),
    })
}
