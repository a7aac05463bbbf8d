//! Independent ground-truth checkers: connectivity, the (2,3) pebble game,
//! exact rational rank, and edge-disjoint spanning tree packing.
//!
//! None of these share code paths with the field rank engine, so the test
//! suites can use them to cross-check it.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn connected(g: &Graph) -> bool {
    g.is_connected()
}

/// State of the (2,3) pebble game: free pebbles per vertex and the
/// orientation of accepted edges (each pointing away from the vertex whose
/// pebble covers it).
#[derive(Clone, Debug)]
pub struct PebbleState {
    pebbles: Vec<u8>,
    out: Vec<Vec<usize>>,
    accepted: usize,
}

impl PebbleState {
    pub fn new(n: usize) -> Self {
        PebbleState {
            pebbles: vec![2; n],
            out: vec![Vec::new(); n],
            accepted: 0,
        }
    }

    pub fn accepted(&self) -> usize {
        self.accepted
    }

    pub fn pebbles(&self, v: usize) -> u8 {
        self.pebbles[v]
    }

    /// Moves one free pebble to `root` along a reversed directed path, never
    /// drawing from `keep`. Returns false if none is reachable.
    fn gather(&mut self, root: usize, keep: usize) -> bool {
        let n = self.pebbles.len();
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        seen[keep] = true;
        let mut stack = vec![root];
        let mut found = None;
        'search: while let Some(x) = stack.pop() {
            for &y in &self.out[x] {
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                parent[y] = x;
                if self.pebbles[y] > 0 {
                    found = Some(y);
                    break 'search;
                }
                stack.push(y);
            }
        }
        let Some(mut y) = found else { return false };
        self.pebbles[y] -= 1;
        self.pebbles[root] += 1;
        while y != root {
            let x = parent[y];
            let pos = self.out[x]
                .iter()
                .position(|&z| z == y)
                .expect("edge on path");
            self.out[x].swap_remove(pos);
            self.out[y].push(x);
            y = x;
        }
        true
    }

    /// Tries to accept edge `{u, v}`; succeeds iff four pebbles can be
    /// collected on its endpoints, i.e. the edge is independent.
    pub fn try_insert(&mut self, u: usize, v: usize) -> bool {
        while self.pebbles[u] < 2 && self.gather(u, v) {}
        while self.pebbles[v] < 2 && self.gather(v, u) {}
        if self.pebbles[u] + self.pebbles[v] < 4 {
            return false;
        }
        self.pebbles[u] -= 1;
        self.out[u].push(v);
        self.accepted += 1;
        true
    }
}

/// Whether `G` contains a spanning Laman subgraph: the pebble game accepts
/// `2n - 3` independent edges.
pub fn laman_rigid(g: &Graph) -> Result<bool> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooFewVertices { n, min: 2 });
    }
    let mut state = PebbleState::new(n);
    for &(u, v) in g.edges() {
        state.try_insert(u, v);
        if state.accepted() == 2 * n - 3 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Size cap (rows times columns) for [`exact_rank_rational`].
pub const EXACT_RANK_CAP: usize = 400;

/// Rank over the rationals by exact fraction elimination.
pub fn exact_rank_rational(rows: &[Vec<i64>]) -> Result<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.len() * cols > EXACT_RANK_CAP {
        return Err(Error::CapExceeded {
            what: "matrix size for exact rank",
            limit: EXACT_RANK_CAP,
        });
    }
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged matrix");
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(p, rank);
        let pivot = m[rank][col].clone();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..cols {
                let delta = &f * &m[rank][c];
                m[r][c] -= delta;
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Multigraph: parallel edges allowed, no self-loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
        }
        Ok(Multigraph { n, edges })
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.n);
        let mut parts = self.n;
        for &(u, v) in &self.edges {
            if uf.union(u, v) {
                parts -= 1;
            }
        }
        parts <= 1
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Vertex cap for [`tree_packing_count`].
pub const TREE_PACKING_CAP: usize = 12;

/// Path between `a` and `b` in the forest given by edge ids `forest`, as a
/// list of edge ids; `None` if they are in different trees.
fn forest_path(
    n: usize,
    edges: &[(usize, usize)],
    forest: &[usize],
    a: usize,
    b: usize,
) -> Option<Vec<usize>> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &e in forest {
        let (u, v) = edges[e];
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let mut via = vec![None; n];
    let mut seen = vec![false; n];
    seen[a] = true;
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            let mut path = Vec::new();
            let mut y = b;
            while let Some((prev, e)) = via[y] {
                path.push(e);
                y = prev;
            }
            return Some(path);
        }
        for &(y, e) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                via[y] = Some((x, e));
                queue.push_back(y);
            }
        }
    }
    None
}

/// Maximum size of a union of `t` forests (matroid partitioning with
/// shortest augmenting paths).
fn forest_union_rank(g: &Multigraph, t: usize) -> usize {
    let m = g.edges.len();
    let mut owner: Vec<Option<usize>> = vec![None; m];
    let mut placed = 0;
    for start in 0..m {
        let members = |owner: &[Option<usize>], f: usize| -> Vec<usize> {
            (0..m).filter(|&e| owner[e] == Some(f)).collect()
        };
        let forests: Vec<Vec<usize>> = (0..t).map(|f| members(&owner, f)).collect();
        let mut label: Vec<Option<usize>> = vec![None; m];
        let mut seen = vec![false; m];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut hit = None;
        'bfs: while let Some(x) = queue.pop_front() {
            let (a, b) = g.edges[x];
            for (f, forest) in forests.iter().enumerate() {
                if owner[x] == Some(f) {
                    continue;
                }
                match forest_path(g.n, &g.edges, forest, a, b) {
                    None => {
                        hit = Some((x, f));
                        break 'bfs;
                    }
                    Some(cycle) => {
                        for y in cycle {
                            if !seen[y] {
                                seen[y] = true;
                                label[y] = Some(x);
                                queue.push_back(y);
                            }
                        }
                    }
                }
            }
        }
        if let Some((mut x, mut f)) = hit {
            loop {
                let old = owner[x];
                owner[x] = Some(f);
                match (label[x], old) {
                    (Some(prev), Some(old_f)) => {
                        x = prev;
                        f = old_f;
                    }
                    _ => break,
                }
            }
            placed += 1;
        }
    }
    placed
}

/// Maximum number of edge-disjoint spanning trees. On one vertex every
/// number of (empty) trees fits, reported as `usize::MAX`.
pub fn tree_packing_count(g: &Multigraph) -> Result<usize> {
    if g.n > TREE_PACKING_CAP {
        return Err(Error::CapExceeded {
            what: "vertex count for tree packing",
            limit: TREE_PACKING_CAP,
        });
    }
    if g.n <= 1 {
        return Ok(usize::MAX);
    }
    let upper = g.edges.len() / (g.n - 1);
    let mut best = 0;
    for t in 1..=upper {
        if forest_union_rank(g, t) == t * (g.n - 1) {
            best = t;
        } else {
            break;
        }
    }
    Ok(best)
}
