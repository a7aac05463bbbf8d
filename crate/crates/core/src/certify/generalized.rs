use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::anchored::{is_d_anchored, ColoredEdge, ColoredMultigraph};
use super::comb::{comb, CombOutcome};
use super::double::DoublePartitionSpec;
use super::{CertifierVerdict, FailingObligation, Witness};
use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::oracles::UnionFind;
use crate::rigidity::{is_d_rigid, DEFAULT_TRIALS};
use crate::seed;

/// The subgraph `G_ij`. For `j < m` its edges lie in `V_i ∪ V_j`; for
/// `j >= m` they lie in `V_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphSpec {
    pub i: usize,
    pub j: usize,
    pub edges: Vec<(usize, usize)>,
}

/// A partition `V_0, .., V_{m-1}` with bounds `m_i >= m` and pairwise
/// edge-disjoint subgraphs `G_ij` of `G` for `i < j < m_i`. Pairs with no
/// entry in `subgraphs` have no edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralizedPartitionSpec {
    pub partition: Partition,
    pub bounds: Vec<usize>,
    pub subgraphs: Vec<SubgraphSpec>,
}

fn invalid(msg: alloc::string::String) -> Error {
    Error::InvalidSpec(msg)
}

impl GeneralizedPartitionSpec {
    /// Strong partitions as a special case: `m_i = m + 1`, `G_ij` the edges
    /// between `V_i` and `V_j`, and `G_{i,m} = G[V_i]`.
    pub fn from_strong(g: &Graph, partition: &Partition) -> Result<Self> {
        partition.check_graph(g)?;
        let m = partition.len();
        let mut by_key: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for &(u, v) in g.edges() {
            let (a, b) = (partition.block_of(u), partition.block_of(v));
            let key = if a == b { (a, m) } else { (a.min(b), a.max(b)) };
            by_key.entry(key).or_default().push((u, v));
        }
        Ok(GeneralizedPartitionSpec {
            partition: partition.clone(),
            bounds: alloc::vec![m + 1; m],
            subgraphs: by_key
                .into_iter()
                .map(|((i, j), edges)| SubgraphSpec { i, j, edges })
                .collect(),
        })
    }

    /// Double partitions as a special case: `m_i = m + |F_i|`, `G_ij` the
    /// edges between `V_i` and `V_j`, and one forest edge per index `j >= m`.
    pub fn from_double(g: &Graph, spec: &DoublePartitionSpec) -> Result<Self> {
        spec.validate(g)?;
        let partition = &spec.partition;
        let m = partition.len();
        let mut by_key: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for &(u, v) in g.edges() {
            let (a, b) = (partition.block_of(u), partition.block_of(v));
            if a != b {
                by_key.entry((a.min(b), a.max(b))).or_default().push((u, v));
            }
        }
        for (i, forest) in spec.forests.iter().enumerate() {
            for (t, &e) in forest.iter().enumerate() {
                by_key.insert((i, m + t), alloc::vec![e]);
            }
        }
        Ok(GeneralizedPartitionSpec {
            partition: partition.clone(),
            bounds: spec.forests.iter().map(|f| m + f.len()).collect(),
            subgraphs: by_key
                .into_iter()
                .map(|((i, j), edges)| SubgraphSpec { i, j, edges })
                .collect(),
        })
    }

    pub fn validate(&self, g: &Graph, d: usize) -> Result<()> {
        let p = &self.partition;
        p.check_graph(g)?;
        let m = p.len();
        if m < d {
            return Err(invalid(format!("{m} blocks are too few for d = {d}")));
        }
        if self.bounds.len() != m {
            return Err(invalid(format!(
                "{} bounds for {m} blocks",
                self.bounds.len()
            )));
        }
        if let Some(i) = self.bounds.iter().position(|&b| b < m) {
            return Err(invalid(format!("bound of block {i} is below {m}")));
        }
        let mut keys = BTreeSet::new();
        let mut used = BTreeSet::new();
        for s in &self.subgraphs {
            let (i, j) = (s.i, s.j);
            if i >= m || j <= i || j >= self.bounds[i] {
                return Err(invalid(format!("index pair ({i}, {j}) is out of range")));
            }
            if !keys.insert((i, j)) {
                return Err(invalid(format!("index pair ({i}, {j}) listed twice")));
            }
            for &(a, b) in &s.edges {
                let (u, v) = (a.min(b), a.max(b));
                if v >= g.n() || !g.has_edge(u, v) {
                    return Err(invalid(format!(
                        "G_({i},{j}) edge {{{u}, {v}}} is not an edge of the graph"
                    )));
                }
                let (bu, bv) = (p.block_of(u), p.block_of(v));
                let inside = if j < m {
                    (bu == i || bu == j) && (bv == i || bv == j)
                } else {
                    bu == i && bv == i
                };
                if !inside {
                    return Err(invalid(format!(
                        "G_({i},{j}) edge {{{u}, {v}}} leaves its support"
                    )));
                }
                if !used.insert((u, v)) {
                    return Err(invalid(format!(
                        "edge {{{u}, {v}}} is shared by two subgraphs"
                    )));
                }
            }
        }
        Ok(())
    }

    fn edges_of(&self) -> BTreeMap<(usize, usize), &[(usize, usize)]> {
        self.subgraphs
            .iter()
            .map(|s| ((s.i, s.j), s.edges.as_slice()))
            .collect()
    }

    /// Edges of `G_ij` inside `V_i`, colored by the other index. This is the
    /// colored graph the comb recursion runs on.
    pub fn within_block_colored(&self, i: usize) -> ColoredMultigraph {
        let p = &self.partition;
        let mut edges = Vec::new();
        for s in &self.subgraphs {
            if s.i != i && s.j != i {
                continue;
            }
            let color = if s.i == i { s.j } else { s.i };
            for &(a, b) in &s.edges {
                if p.block_of(a) == i && p.block_of(b) == i {
                    edges.push(ColoredEdge {
                        u: a.min(b),
                        v: a.max(b),
                        color,
                    });
                }
            }
        }
        ColoredMultigraph { n: p.n(), edges }
    }

    /// `H_i` on local ids of `V_i`: for each `j != i` below `m_i` and each
    /// component of `G_ij`, a spanning star of color `j` on the vertices of
    /// `V_i` in that component. Stars and cliques span the same row space.
    pub fn anchoring_graph(&self, i: usize) -> ColoredMultigraph {
        let p = &self.partition;
        let m = p.len();
        let block = p.block(i);
        let edges_of = self.edges_of();
        let mut edges = Vec::new();
        for j in (0..self.bounds[i]).filter(|&j| j != i) {
            let key = if j < m { (i.min(j), i.max(j)) } else { (i, j) };
            let Some(gij) = edges_of.get(&key) else {
                continue;
            };
            let mut uf = UnionFind::new(p.n());
            for &(a, b) in gij.iter() {
                uf.union(a, b);
            }
            let mut first: BTreeMap<usize, usize> = BTreeMap::new();
            for (local, &v) in block.iter().enumerate() {
                let root = uf.find(v);
                match first.get(&root) {
                    Some(&center) => edges.push(ColoredEdge {
                        u: center,
                        v: local,
                        color: j,
                    }),
                    None => {
                        first.insert(root, local);
                    }
                }
            }
        }
        ColoredMultigraph {
            n: block.len(),
            edges,
        }
    }

    /// Graph on the `m` blocks with `ij` an edge iff `G_ij` joins `V_i` to
    /// `V_j`.
    pub fn reduced(&self) -> Graph {
        let p = &self.partition;
        let m = p.len();
        let mut pairs = BTreeSet::new();
        for s in self.subgraphs.iter().filter(|s| s.j < m) {
            if s.edges.iter().any(|&(a, b)| p.block_of(a) != p.block_of(b)) {
                pairs.insert((s.i, s.j));
            }
        }
        Graph::new(m, pairs).expect("block pairs are in range")
    }

    /// The graph formed by the union of all `G_ij`.
    pub fn union_graph(&self) -> Graph {
        let edges = self
            .subgraphs
            .iter()
            .flat_map(|s| s.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))));
        Graph::new(self.partition.n(), edges).expect("validated spec")
    }
}

/// Generalized-partition certificate: the comb recursion succeeds on every
/// block, every anchoring graph is `d`-anchored, and the reduced graph is
/// `d`-rigid. Acceptance certifies the union of the `G_ij`, hence `G`.
pub fn certify_generalized_partition(
    g: &Graph,
    spec: &GeneralizedPartitionSpec,
    d: usize,
    seed: u64,
) -> Result<CertifierVerdict> {
    super::check_dimension(d)?;
    spec.validate(g, d)?;
    let m = spec.partition.len();
    let mut failing = None;
    let mut witness = Witness::default();
    for i in 0..m {
        match comb(&spec.within_block_colored(i), spec.partition.block(i))? {
            CombOutcome::Success(tree) => witness.comb_trees.push(tree),
            CombOutcome::Failure { subset } => {
                failing.get_or_insert(FailingObligation::CombFailed { block: i, subset });
            }
        }
    }
    for i in 0..m {
        let ok = is_d_anchored(
            &spec.anchoring_graph(i),
            d,
            seed::derive(seed, 1 + i as u64),
        );
        witness.anchored.push(ok);
        if !ok {
            failing.get_or_insert(FailingObligation::AnchoringFailed { block: i });
        }
    }
    let reduced = spec.reduced();
    let verdict = is_d_rigid(&reduced, d, seed, DEFAULT_TRIALS);
    if !verdict.rigid {
        failing.get_or_insert(FailingObligation::ReducedNotRigid);
    }
    witness.reduced_edges = reduced.edges().to_vec();
    witness.reduced_verdict = Some(verdict);
    Ok(CertifierVerdict::finish(d, failing, witness))
}
