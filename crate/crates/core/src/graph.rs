//! Simple graphs on dense vertex ids, vertex partitions, and the basic
//! surgery and counting operations used throughout the crate.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex sets are bit sets over `0..n`.
pub type VertexSet = FixedBitSet;

/// Builds a vertex set over `0..n` from a list of ids.
pub fn vertex_set(n: usize, vertices: impl IntoIterator<Item = usize>) -> Result<VertexSet> {
    let mut s = FixedBitSet::with_capacity(n);
    for v in vertices {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        s.insert(v);
    }
    Ok(s)
}

fn full_set(n: usize) -> VertexSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

/// Immutable simple graph on vertices `0..n`.
///
/// Edges are kept as a sorted list of pairs `(u, v)` with `u < v`, alongside
/// one adjacency bit-row per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<FixedBitSet>,
}

impl Graph {
    /// Validating constructor. Edges may be given in either orientation.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        let mut list = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if adj[u].contains(v) {
                return Err(Error::DuplicateEdge(u, v));
            }
            adj[u].insert(v);
            adj[v].insert(u);
            list.push((u, v));
        }
        list.sort_unstable();
        Ok(Graph {
            n,
            edges: list,
            adj,
        })
    }

    fn from_adjacency(adj: Vec<FixedBitSet>) -> Self {
        let n = adj.len();
        let mut edges = Vec::new();
        for (u, row) in adj.iter().enumerate() {
            for v in row.ones() {
                if v > u {
                    edges.push((u, v));
                }
            }
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`, for `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    /// Complete bipartite graph between `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::new(a + b, edges).expect("complete bipartite graph is simple")
    }

    /// Two cliques of size `size` whose vertex sets share `shared` vertices.
    /// The shared vertices are `size - shared .. size`.
    pub fn overlapping_cliques(size: usize, shared: usize) -> Self {
        assert!(shared <= size);
        let n = 2 * size - shared;
        let first: Vec<usize> = (0..size).collect();
        let second: Vec<usize> = (size - shared..n).collect();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for clique in [&first, &second] {
            for &u in clique.iter() {
                for &v in clique.iter() {
                    if u != v {
                        adj[u].insert(v);
                    }
                }
            }
        }
        Graph::from_adjacency(adj)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].contains(v)
    }

    /// Minimum degree; 0 for the empty vertex set.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.ones().find(|&v| v >= self.n) {
            Some(v) => Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            }),
            None => Ok(()),
        }
    }

    /// `self` plus one edge; `self` if the edge is already present.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let mut adj = self.adj.clone();
        adj[u].insert(v);
        adj[v].insert(u);
        Ok(Graph::from_adjacency(adj))
    }

    /// The subgraph induced on `vertices`, relabelled to `0..|vertices|` in
    /// ascending order of the original ids. Returns the graph and the
    /// new-to-old id map.
    pub fn induced_subgraph(&self, vertices: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = vertices.ones().filter(|&v| v < self.n).collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![FixedBitSet::with_capacity(map.len()); map.len()];
        for (i, &v) in map.iter().enumerate() {
            for w in self.adj[v].ones() {
                if index[w] != usize::MAX {
                    adj[i].insert(index[w]);
                }
            }
        }
        (Graph::from_adjacency(adj), map)
    }

    /// Connected components restricted to `within`: a label per vertex
    /// (`None` outside `within`) and the component count. Labels follow the
    /// order of each component's smallest vertex.
    pub fn components_within(&self, within: &VertexSet) -> (Vec<Option<usize>>, usize) {
        let mut label = vec![None; self.n];
        let mut unvisited = within.clone();
        let mut count = 0;
        let mut queue = VecDeque::new();
        while let Some(start) = unvisited.minimum() {
            unvisited.set(start, false);
            label[start] = Some(count);
            queue.push_back(start);
            while let Some(x) = queue.pop_front() {
                let mut next = self.adj[x].clone();
                next.intersect_with(&unvisited);
                for y in next.ones() {
                    unvisited.set(y, false);
                    label[y] = Some(count);
                    queue.push_back(y);
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components_within(&full_set(self.n)).1 <= 1
    }
}

/// Ordered list of disjoint nonempty vertex blocks covering `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PartitionBlocks", into = "PartitionBlocks")]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

/// Serialized form of a partition: just the blocks. The vertex count is
/// their total size.
#[derive(Serialize, Deserialize)]
struct PartitionBlocks {
    blocks: Vec<Vec<usize>>,
}

impl TryFrom<PartitionBlocks> for Partition {
    type Error = Error;

    fn try_from(p: PartitionBlocks) -> Result<Self> {
        let n = p.blocks.iter().map(Vec::len).sum();
        Partition::new(n, p.blocks)
    }
}

impl From<Partition> for PartitionBlocks {
    fn from(p: Partition) -> Self {
        PartitionBlocks { blocks: p.blocks }
    }
}

impl Partition {
    /// Validates and normalizes (each block sorted ascending; block order kept).
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; n];
        let mut blocks = blocks;
        for (i, block) in blocks.iter_mut().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {i} is empty")));
            }
            block.sort_unstable();
            for &v in block.iter() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if block_of[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
                }
                block_of[v] = i;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "vertex {v} is not covered"
            )));
        }
        Ok(Partition { blocks, block_of })
    }

    pub fn singletons(n: usize) -> Self {
        Partition::new(n, (0..n).map(|v| vec![v]).collect()).expect("singletons partition")
    }

    pub fn n(&self) -> usize {
        self.block_of.len()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn mask(&self, i: usize) -> VertexSet {
        vertex_set(self.n(), self.blocks[i].iter().copied()).expect("validated block")
    }

    pub fn masks(&self) -> Vec<VertexSet> {
        (0..self.len()).map(|i| self.mask(i)).collect()
    }

    pub fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.n() != g.n() {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} vertices, graph has {}",
                self.n(),
                g.n()
            )));
        }
        Ok(())
    }
}

/// `G[A, B]`: the edges of `G` meeting both `A` and `B` and contained in
/// `A ∪ B`. The result keeps the vertex ids of `G`; vertices outside `A ∪ B`
/// are isolated. For `A = B` this is the induced subgraph `G[A]`.
pub fn induced_bipartite(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<Graph> {
    g.check_set(a)?;
    g.check_set(b)?;
    let edges = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| (a.contains(u) && b.contains(v)) || (b.contains(u) && a.contains(v)));
    Graph::new(g.n(), edges)
}

/// Component labels of `G[A, B]` on `A ∪ B`, computed without materializing
/// the subgraph.
pub fn bipartite_components(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
) -> (Vec<Option<usize>>, usize) {
    let n = g.n();
    let mut label = vec![None; n];
    let mut unvisited = a.clone();
    unvisited.union_with(b);
    let mut count = 0;
    let mut queue = VecDeque::new();
    let mut next = FixedBitSet::with_capacity(n);
    let mut scratch = FixedBitSet::with_capacity(n);
    while let Some(start) = unvisited.minimum() {
        unvisited.set(start, false);
        label[start] = Some(count);
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            next.clear();
            if a.contains(x) {
                scratch.clone_from(g.neighbors(x));
                scratch.intersect_with(b);
                next.union_with(&scratch);
            }
            if b.contains(x) {
                scratch.clone_from(g.neighbors(x));
                scratch.intersect_with(a);
                next.union_with(&scratch);
            }
            next.intersect_with(&unvisited);
            for y in next.ones() {
                unvisited.set(y, false);
                label[y] = Some(count);
                queue.push_back(y);
            }
        }
        count += 1;
    }
    (label, count)
}

/// Quotient graph of a partition: `{i, j}` is an edge iff some edge of `G`
/// joins block `i` to block `j`.
pub fn reduced_graph(g: &Graph, partition: &Partition) -> Result<Graph> {
    partition.check_graph(g)?;
    let m = partition.len();
    let mut adj = vec![FixedBitSet::with_capacity(m); m];
    for &(u, v) in g.edges() {
        let (i, j) = (partition.block_of(u), partition.block_of(v));
        if i != j {
            adj[i].insert(j);
            adj[j].insert(i);
        }
    }
    Ok(Graph::from_adjacency(adj))
}

/// Adds vertex `n` adjacent exactly to `s`.
pub fn zero_extension(g: &Graph, s: &VertexSet) -> Result<Graph> {
    g.check_set(s)?;
    if s.is_clear() {
        return Err(Error::EmptySet);
    }
    let new = g.n();
    let edges = g.edges().iter().copied().chain(s.ones().map(|v| (v, new)));
    Graph::new(new + 1, edges)
}

/// The two vertex splitting moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitMode {
    /// The copies are joined by an edge (overlap `>= d - 1` preserves rigidity).
    WithEdge,
    /// The copies are not joined (overlap `>= d` preserves rigidity).
    WithoutEdge,
}

/// Replaces `v` by two vertices `x` and `y` with neighbourhoods `nx` and `ny`,
/// where `nx ∪ ny` must equal `N(v)`. Vertex `x` reuses the id `v` and `y`
/// is the new id `n`. Returns `(graph, x, y)`.
pub fn vertex_split(
    g: &Graph,
    v: usize,
    nx: &VertexSet,
    ny: &VertexSet,
    mode: SplitMode,
) -> Result<(Graph, usize, usize)> {
    g.check_vertex(v)?;
    g.check_set(nx)?;
    g.check_set(ny)?;
    let mut cover = nx.clone();
    cover.union_with(ny);
    cover.grow(g.n());
    let mut nbrs = g.neighbors(v).clone();
    nbrs.grow(cover.len());
    if cover != nbrs {
        return Err(Error::NeighborhoodMismatch(v));
    }
    let y = g.n();
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| a != v && b != v)
        .collect();
    edges.extend(nx.ones().map(|w| (w, v)));
    edges.extend(ny.ones().map(|w| (w, y)));
    if mode == SplitMode::WithEdge {
        edges.push((v, y));
    }
    Ok((Graph::new(g.n() + 1, edges)?, v, y))
}

/// `|N(u) ∩ N(v)|`.
pub fn codegree(g: &Graph, u: usize, v: usize) -> Result<usize> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    Ok(g.neighbors(u).intersection_count(g.neighbors(v)))
}

/// Minimum codegree over all unordered pairs of distinct vertices.
pub fn min_codegree(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooFewVertices { n, min: 2 });
    }
    let mut best = usize::MAX;
    for u in 0..n {
        for v in u + 1..n {
            best = best.min(g.neighbors(u).intersection_count(g.neighbors(v)));
        }
    }
    Ok(best)
}

/// Default vertex cap for exact isoperimetric enumeration.
pub const ISOPERIMETRIC_CAP: usize = 24;

/// Exact `min |∂U| / |U|` over `k <= |U| <= n/2`, by enumerating subsets.
pub fn isoperimetric(g: &Graph, k: usize) -> Result<Ratio<u64>> {
    isoperimetric_capped(g, k, ISOPERIMETRIC_CAP)
}

pub fn isoperimetric_capped(g: &Graph, k: usize, cap: usize) -> Result<Ratio<u64>> {
    let n = g.n();
    if k == 0 || k > n / 2 {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n/2, got k = {k}, n = {n}"
        )));
    }
    if n > cap || n > 63 {
        return Err(Error::CapExceeded {
            what: "vertex count for exact isoperimetry",
            limit: cap.min(63),
        });
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).ones().fold(0u64, |m, w| m | 1 << w))
        .collect();
    let deg: Vec<i64> = (0..n).map(|v| g.degree(v) as i64).collect();
    let half = n / 2;
    let mut best: Option<Ratio<u64>> = None;
    // Gray-code walk over all subsets, maintaining |U| and |∂U|.
    let (mut mask, mut size, mut boundary) = (0u64, 0usize, 0i64);
    for step in 1u64..(1u64 << n) {
        let bit = step.trailing_zeros() as usize;
        let inside = (adj[bit] & mask).count_ones() as i64;
        if mask >> bit & 1 == 1 {
            mask &= !(1 << bit);
            size -= 1;
            boundary -= deg[bit] - 2 * inside;
        } else {
            mask |= 1 << bit;
            size += 1;
            boundary += deg[bit] - 2 * inside;
        }
        if size >= k && size <= half {
            let r = Ratio::new(boundary as u64, size as u64);
            if best.is_none_or(|b| r < b) {
                best = Some(r);
            }
        }
    }
    Ok(best.expect("k <= n/2 admits a subset"))
}

/// Sampling proxy for `i(G; k)` on graphs too large to enumerate: the
/// minimum ratio over `samples` random sets `U` with `k <= |U| <= n/2`. This
/// is an upper bound on the true value.
pub fn isoperimetric_upper_bound<R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    samples: usize,
    rng: &mut R,
) -> Result<Ratio<u64>> {
    let n = g.n();
    if k == 0 || k > n / 2 || samples == 0 {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n/2 and samples > 0, got k = {k}, n = {n}"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut best: Option<Ratio<u64>> = None;
    let mut in_u = FixedBitSet::with_capacity(n);
    for _ in 0..samples {
        let size = rng.gen_range(k..=n / 2);
        order.shuffle(rng);
        in_u.clear();
        for &v in &order[..size] {
            in_u.insert(v);
        }
        let boundary: usize = order[..size]
            .iter()
            .map(|&v| g.neighbors(v).count_ones(..) - g.neighbors(v).intersection_count(&in_u))
            .sum();
        let r = Ratio::new(boundary as u64, size as u64);
        if best.is_none_or(|b| r < b) {
            best = Some(r);
        }
    }
    Ok(best.expect("samples > 0"))
}
