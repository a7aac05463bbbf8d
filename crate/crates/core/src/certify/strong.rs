use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{CertifierVerdict, FailingObligation, Witness};
use crate::error::{Error, Result};
use crate::graph::{bipartite_components, reduced_graph, Graph, Partition};
use crate::oracles::UnionFind;
use crate::rigidity::{is_d_rigid, DEFAULT_TRIALS};

/// `Q`-graph of a block (or sub-block): `uv` is an edge when `u` and `v` lie
/// in one component of `G[V_i, V_j]` for at least `d` indices `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QGraph {
    pub block: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub_block: Option<usize>,
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl QGraph {
    pub fn is_connected(&self) -> bool {
        let k = self.vertices.len();
        if k <= 1 {
            return true;
        }
        let local = |v: usize| {
            self.vertices
                .binary_search(&v)
                .expect("Q edge endpoint in vertex list")
        };
        let mut uf = UnionFind::new(k);
        let mut parts = k;
        for &(u, v) in &self.edges {
            if uf.union(local(u), local(v)) {
                parts -= 1;
            }
        }
        parts == 1
    }
}

/// Pairs of `vertices` (sorted, global ids) sharing a label in at least `d`
/// of the labelings.
pub(crate) fn q_edges(
    vertices: &[usize],
    labelings: &[Vec<Option<usize>>],
    d: usize,
) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (a, &u) in vertices.iter().enumerate() {
        for &v in &vertices[a + 1..] {
            let shared = labelings
                .iter()
                .filter(|lab| lab[u].is_some() && lab[u] == lab[v])
                .count();
            if shared >= d {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// The `Q`-graph of every block. With `allow_self` the index `j = i`
/// (contributing the components of `G[V_i]`) counts toward the `d`.
pub fn build_q_graphs(
    g: &Graph,
    partition: &Partition,
    d: usize,
    allow_self: bool,
) -> Result<Vec<QGraph>> {
    partition.check_graph(g)?;
    let m = partition.len();
    let needed = if allow_self { d } else { d + 1 };
    if m < needed {
        return Err(Error::InvalidParameter(format!(
            "{m} blocks are too few for d = {d} (need {needed})"
        )));
    }
    let masks = partition.masks();
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let labelings: Vec<Vec<Option<usize>>> = (0..m)
            .filter(|&j| allow_self || j != i)
            .map(|j| bipartite_components(g, &masks[i], &masks[j]).0)
            .collect();
        let mut vertices = partition.block(i).to_vec();
        vertices.sort_unstable();
        let edges = q_edges(&vertices, &labelings, d);
        out.push(QGraph {
            block: i,
            sub_block: None,
            vertices,
            edges,
        });
    }
    Ok(out)
}

/// Strong-partition certificate: the reduced graph is `d`-rigid and every
/// `Q`-graph is connected.
pub fn certify_strong_partition(
    g: &Graph,
    partition: &Partition,
    d: usize,
    allow_self: bool,
    seed: u64,
) -> Result<CertifierVerdict> {
    super::check_dimension(d)?;
    let q_graphs = build_q_graphs(g, partition, d, allow_self)?;
    let reduced = reduced_graph(g, partition)?;
    let verdict = is_d_rigid(&reduced, d, seed, DEFAULT_TRIALS);
    let failing = if !verdict.rigid {
        Some(FailingObligation::ReducedNotRigid)
    } else {
        q_graphs
            .iter()
            .find(|q| !q.is_connected())
            .map(|q| FailingObligation::QNotConnected {
                block: q.block,
                sub_block: None,
            })
    };
    let witness = Witness {
        reduced_edges: reduced.edges().to_vec(),
        reduced_verdict: Some(verdict),
        q_graphs,
        ..Witness::default()
    };
    Ok(CertifierVerdict::finish(d, failing, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Partition;
    use crate::rigidity::is_d_rigid;
    use alloc::vec;

    /// Blow-up of `K_m`: every block is `size` vertices, every pair of
    /// blocks is joined completely.
    fn complete_blowup(m: usize, size: usize) -> (Graph, Partition) {
        let n = m * size;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if u / size != v / size {
                    edges.push((u, v));
                }
            }
        }
        let blocks = (0..m)
            .map(|i| (i * size..(i + 1) * size).collect())
            .collect();
        (
            Graph::new(n, edges).unwrap(),
            Partition::new(n, blocks).unwrap(),
        )
    }

    #[test]
    fn complete_multipartite_is_accepted() {
        let (g, p) = complete_blowup(4, 3);
        let v = certify_strong_partition(&g, &p, 2, false, 5).unwrap();
        assert!(v.accepted, "{v:?}");
        assert!(is_d_rigid(&g, 2, 5, 2).rigid);
        let w = v.witness.unwrap();
        assert_eq!(w.q_graphs.len(), 4);
        assert!(w.q_graphs.iter().all(|q| q.edges.len() == 3));
    }

    #[test]
    fn flexible_reduced_graph_is_reported() {
        // Reduced graph is the path 0-1-2, not 2-rigid.
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let p = Partition::singletons(3);
        let v = certify_strong_partition(&g, &p, 2, true, 0).unwrap();
        assert!(!v.accepted);
        assert_eq!(
            v.failing_obligation,
            Some(FailingObligation::ReducedNotRigid)
        );
    }

    #[test]
    fn disconnected_q_graph_is_reported() {
        // Blocks {2,3}, {0}, {1}: reduced graph K_3, but 3 only sees block 2.
        let g = Graph::new(4, [(2, 0), (3, 1), (0, 1)]).unwrap();
        let p = Partition::new(4, vec![vec![2, 3], vec![0], vec![1]]).unwrap();
        let v = certify_strong_partition(&g, &p, 2, false, 0).unwrap();
        assert_eq!(
            v.failing_obligation,
            Some(FailingObligation::QNotConnected {
                block: 0,
                sub_block: None
            })
        );
    }

    #[test]
    fn self_index_counts_only_when_allowed() {
        // Block 0 = {0, 1} joined inside and both adjacent to block 1.
        let g = Graph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let p = Partition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        let with = build_q_graphs(&g, &p, 2, true).unwrap();
        assert_eq!(with[0].edges, vec![(0, 1)]);
        assert!(build_q_graphs(&g, &p, 2, false).is_err());
        let without = build_q_graphs(&g, &p, 1, false).unwrap();
        assert_eq!(without[0].edges, vec![(0, 1)]);
    }

    #[test]
    fn too_few_blocks_is_an_error() {
        let (g, p) = complete_blowup(2, 2);
        assert!(certify_strong_partition(&g, &p, 2, false, 0).is_err());
        assert!(certify_strong_partition(&g, &p, 2, true, 0).is_ok());
    }

    #[test]
    fn invalid_partition_is_an_error() {
        let g = Graph::complete(3);
        let p = Partition::singletons(4);
        assert!(certify_strong_partition(&g, &p, 1, true, 0).is_err());
    }
}
