use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::strong::{q_edges, QGraph};
use super::{CertifierVerdict, FailingObligation, Witness};
use crate::error::{Error, Result};
use crate::graph::{bipartite_components, reduced_graph, Graph, Partition};
use crate::oracles::{tree_packing_count, Multigraph, UnionFind};
use crate::rigidity::{is_d_rigid, DEFAULT_TRIALS};

/// A partition `V_0, .., V_{m-1}`, a partition of each `V_i` into
/// sub-blocks `V_ij`, and a forest `F_i` in `G[V_i]` for each block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublePartitionSpec {
    pub partition: Partition,
    pub sub_blocks: Vec<Vec<Vec<usize>>>,
    pub forests: Vec<Vec<(usize, usize)>>,
}

impl DoublePartitionSpec {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let p = &self.partition;
        p.check_graph(g)?;
        let m = p.len();
        if self.sub_blocks.len() != m || self.forests.len() != m {
            return Err(Error::InvalidSpec(format!(
                "{m} blocks but {} sub-block lists and {} forests",
                self.sub_blocks.len(),
                self.forests.len()
            )));
        }
        for i in 0..m {
            let mut covered: Vec<usize> = self.sub_blocks[i].iter().flatten().copied().collect();
            covered.sort_unstable();
            if self.sub_blocks[i].iter().any(Vec::is_empty) || covered != p.block(i) {
                return Err(Error::InvalidSpec(format!(
                    "sub-blocks of block {i} do not partition it"
                )));
            }
            let block = p.block(i);
            let mut uf = UnionFind::new(block.len());
            for &(a, b) in &self.forests[i] {
                let (u, v) = (a.min(b), a.max(b));
                if v >= g.n() || !g.has_edge(u, v) || p.block_of(u) != i || p.block_of(v) != i {
                    return Err(Error::InvalidSpec(format!(
                        "forest edge {{{u}, {v}}} is not an edge of G[V_{i}]"
                    )));
                }
                let (lu, lv) = (
                    block.binary_search(&u).unwrap(),
                    block.binary_search(&v).unwrap(),
                );
                if !uf.union(lu, lv) {
                    return Err(Error::NotAForest(i));
                }
            }
        }
        Ok(())
    }

    fn sub_block_of(&self, i: usize) -> impl Fn(usize) -> usize + '_ {
        move |v| {
            self.sub_blocks[i]
                .iter()
                .position(|s| s.contains(&v))
                .expect("validated sub-blocks cover the block")
        }
    }
}

/// `F_i` with every sub-block of `V_i` contracted to one vertex. Forest
/// edges inside a sub-block become loops and are dropped.
pub fn contract_forest(spec: &DoublePartitionSpec, i: usize) -> Multigraph {
    let of = spec.sub_block_of(i);
    let edges = spec.forests[i]
        .iter()
        .map(|&(u, v)| (of(u), of(v)))
        .filter(|(a, b)| a != b)
        .collect();
    Multigraph {
        n: spec.sub_blocks[i].len(),
        edges,
    }
}

/// Double-partition certificate: the reduced graph is `d`-rigid, each
/// contracted forest has `d` edge-disjoint spanning trees, and each
/// sub-block's `Q`-graph (counting only indices `s != i`) is connected.
pub fn certify_double_partition(
    g: &Graph,
    spec: &DoublePartitionSpec,
    d: usize,
    seed: u64,
) -> Result<CertifierVerdict> {
    super::check_dimension(d)?;
    spec.validate(g)?;
    let p = &spec.partition;
    let m = p.len();
    let reduced = reduced_graph(g, p)?;
    let verdict = is_d_rigid(&reduced, d, seed, DEFAULT_TRIALS);
    let mut failing = (!verdict.rigid).then_some(FailingObligation::ReducedNotRigid);
    let mut witness = Witness {
        reduced_edges: reduced.edges().to_vec(),
        reduced_verdict: Some(verdict),
        ..Witness::default()
    };
    let masks = p.masks();
    for i in 0..m {
        let packing = tree_packing_count(&contract_forest(spec, i))?;
        witness.tree_packing.push(packing);
        if packing < d {
            failing.get_or_insert(FailingObligation::TreePackingFailed { block: i });
        }
        let labelings: Vec<Vec<Option<usize>>> = (0..m)
            .filter(|&s| s != i)
            .map(|s| bipartite_components(g, &masks[i], &masks[s]).0)
            .collect();
        for (j, sub) in spec.sub_blocks[i].iter().enumerate() {
            let mut vertices = sub.clone();
            vertices.sort_unstable();
            let edges = q_edges(&vertices, &labelings, d);
            let q = QGraph {
                block: i,
                sub_block: Some(j),
                vertices,
                edges,
            };
            if !q.is_connected() {
                failing.get_or_insert(FailingObligation::QNotConnected {
                    block: i,
                    sub_block: Some(j),
                });
            }
            witness.q_graphs.push(q);
        }
    }
    Ok(CertifierVerdict::finish(d, failing, witness))
}
