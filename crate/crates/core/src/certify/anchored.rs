use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::matrix::{self, FFMatrix, SparseRow};
use crate::rigidity::DEFAULT_TRIALS;
use crate::seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredEdge {
    pub u: usize,
    pub v: usize,
    pub color: usize,
}

/// Multigraph with a color on every edge. Parallel edges of equal or
/// different colors are allowed; self-loops are not.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredMultigraph {
    pub n: usize,
    pub edges: Vec<ColoredEdge>,
}

impl ColoredMultigraph {
    pub fn new(n: usize, edges: Vec<ColoredEdge>) -> Result<Self> {
        for e in &edges {
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if e.u == e.v {
                return Err(Error::SelfLoop(e.u));
            }
        }
        Ok(ColoredMultigraph { n, edges })
    }

    /// One past the largest color in use.
    pub fn color_bound(&self) -> usize {
        self.edges.iter().map(|e| e.color + 1).max().unwrap_or(0)
    }
}

/// Points `x_0, .., x_{colors-1}` in `F_q^d`, a pure function of the seed.
pub fn color_points(colors: usize, d: usize, seed: u64) -> Vec<Vec<Fq>> {
    matrix::generic_points(colors, d, seed)
}

fn anchoring_rows(h: &ColoredMultigraph, d: usize, points: &[Vec<Fq>]) -> Vec<SparseRow> {
    h.edges
        .iter()
        .map(|e| {
            let x = &points[e.color];
            let mut row = Vec::with_capacity(2 * d);
            for k in 0..d {
                row.push((e.u * d + k, x[k]));
            }
            for k in 0..d {
                row.push((e.v * d + k, -x[k]));
            }
            row
        })
        .collect()
}

/// Constraint matrix of `h`: the row of an edge `uv` of color `c` has `x_c`
/// in the columns of `u` and `-x_c` in those of `v`. Translations lie in
/// the kernel, so the rank is at most `d(n - 1)`.
pub fn anchoring_matrix(h: &ColoredMultigraph, d: usize, points: &[Vec<Fq>]) -> FFMatrix {
    assert!(points.len() >= h.color_bound(), "one point per color");
    let rows = anchoring_rows(h, d, points);
    let mut m = FFMatrix::zeros(rows.len(), d * h.n);
    for (r, row) in rows.iter().enumerate() {
        for &(c, v) in row {
            m[(r, c)] += v;
        }
    }
    m
}

/// Whether the constraint matrix reaches rank `d(n - 1)` at generic color
/// points. One-sided like the rigidity test: `true` is certain, `false` is
/// wrong with probability at most `(d n / q)^trials`.
pub fn is_d_anchored(h: &ColoredMultigraph, d: usize, seed: u64) -> bool {
    if h.n <= 1 {
        return true;
    }
    let target = d * (h.n - 1);
    if h.edges.len() < target {
        return false;
    }
    (0..DEFAULT_TRIALS as u64).any(|t| {
        let s = seed::derive(seed, t);
        let points = color_points(h.color_bound(), d, seed::derive(s, 0));
        let rows = anchoring_rows(h, d, &points);
        matrix::rank_of_sparse_rows(d * h.n, &rows, seed::derive(s, 1)) == target
    })
}
