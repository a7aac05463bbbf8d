//! Rigidity matrices and generic `d`-rigidity.
//!
//! Generic real positions are replaced by uniform points of `F_q`. A rank
//! computed at random points never exceeds the generic rank, so a "rigid"
//! verdict is exact; a "flexible" verdict is wrong with probability at most
//! `(D/q)^trials`, where `D` bounds the degree of the relevant minor.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fq, MODULUS};
use crate::graph::{Graph, VertexSet};
use crate::matrix::{self, FFMatrix, SparseRow};
use crate::seed;

/// Default number of independent rank trials.
pub const DEFAULT_TRIALS: u32 = 2;

/// Tag attached to verdicts on graphs with `n <= d`, where rigidity means
/// completeness.
pub const SMALL_N_CONVENTION: &str = "small-n";

/// A framework `(G, p)` with positions in `F_q^d`.
#[derive(Clone, Debug)]
pub struct FrameworkSpec {
    pub graph: Graph,
    pub d: usize,
    pub positions: Vec<Vec<Fq>>,
}

/// A limit framework `(G, p, g)`. `directions[e]` is `g(u, e)` for the edge
/// `e = (u, v)` of `graph.edges()` with `u < v`; `g(v, e) = -g(u, e)`.
/// Directions are not normalized.
#[derive(Clone, Debug)]
pub struct LimitFrameworkSpec {
    pub graph: Graph,
    pub d: usize,
    pub positions: Vec<Vec<Fq>>,
    pub directions: Vec<Vec<Fq>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RigidityVerdict {
    pub d: usize,
    pub rank: usize,
    pub target: usize,
    pub rigid: bool,
    pub trials: u32,
    pub seed: u64,
    pub error_bound: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
}

fn binom2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// Rank that a rigid framework on `n` vertices reaches: `dn - C(d+1, 2)`
/// for `n >= d + 1`, and `C(n, 2)` (complete graph) below that.
pub fn rank_target(n: usize, d: usize) -> usize {
    if n > d {
        d * n - binom2(d + 1)
    } else {
        binom2(n)
    }
}

fn edge_rows(
    graph: &Graph,
    d: usize,
    mut entry: impl FnMut(usize, usize, usize) -> Vec<Fq>,
) -> Vec<SparseRow> {
    graph
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| {
            let g = entry(e, u, v);
            let mut row = Vec::with_capacity(2 * d);
            for k in 0..d {
                row.push((u * d + k, g[k]));
            }
            for k in 0..d {
                row.push((v * d + k, -g[k]));
            }
            row
        })
        .collect()
}

fn dense(cols: usize, rows: &[SparseRow]) -> FFMatrix {
    let mut m = FFMatrix::zeros(rows.len(), cols);
    for (r, row) in rows.iter().enumerate() {
        for &(c, v) in row {
            m[(r, c)] += v;
        }
    }
    m
}

fn difference(a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

/// `R(G, p)`: row `{u, v}` carries `p(u) - p(v)` in the columns of `u` and
/// `p(v) - p(u)` in those of `v`.
pub fn rigidity_matrix(f: &FrameworkSpec) -> FFMatrix {
    let rows = framework_rows(f);
    dense(f.d * f.graph.n(), &rows)
}

fn framework_rows(f: &FrameworkSpec) -> Vec<SparseRow> {
    assert_eq!(f.positions.len(), f.graph.n(), "one position per vertex");
    edge_rows(&f.graph, f.d, |_, u, v| {
        difference(&f.positions[u], &f.positions[v])
    })
}

/// Rank of the rigidity matrix at points derived from `seed`.
fn rank_at_seed(g: &Graph, d: usize, seed: u64) -> usize {
    let positions = matrix::generic_points(g.n(), d, seed::derive(seed, 0));
    let f = FrameworkSpec {
        graph: g.clone(),
        d,
        positions,
    };
    matrix::rank_of_sparse_rows(d * g.n(), &framework_rows(&f), seed::derive(seed, 1))
}

/// Largest rank the rigidity matrix of `g` can have in dimension `d`.
fn rank_ceiling(g: &Graph, d: usize) -> usize {
    g.edge_count().min(rank_target(g.n(), d))
}

/// Maximum over `trials` independent random placements of the rigidity
/// matrix rank. Stops early once the ceiling `min(|E|, target)` is hit.
pub fn generic_rank(g: &Graph, d: usize, seed: u64, trials: u32) -> usize {
    generic_rank_counted(g, d, seed, trials).0
}

fn generic_rank_counted(g: &Graph, d: usize, seed: u64, trials: u32) -> (usize, u32) {
    assert!(d >= 1, "dimension must be positive");
    let ceiling = rank_ceiling(g, d);
    let mut best = 0;
    let mut used = 0;
    for t in 0..trials.max(1) {
        used += 1;
        best = best.max(rank_at_seed(g, d, seed::derive(seed, t as u64)));
        if best == ceiling {
            break;
        }
    }
    (best, used)
}

/// Probability bound for a wrong "flexible" verdict: the minor certifying
/// the target rank has degree at most `2 * target` in the random inputs
/// (positions and, for tall matrices, the compression coefficients).
fn flexible_error_bound(target: usize, trials: u32) -> f64 {
    let per_trial = (2 * target.max(1)) as f64 / MODULUS as f64;
    let mut bound = 1.0;
    for _ in 0..trials {
        bound *= per_trial;
    }
    bound
}

/// Too few edges to reach the target is a certain negative.
fn verdict(
    d: usize,
    n: usize,
    edges: usize,
    rank: usize,
    trials: u32,
    seed: u64,
) -> RigidityVerdict {
    let target = rank_target(n, d);
    let rigid = rank == target;
    let certain = rigid || edges < target;
    RigidityVerdict {
        d,
        rank,
        target,
        rigid,
        trials,
        seed,
        error_bound: if certain {
            0.0
        } else {
            flexible_error_bound(target, trials)
        },
        convention: (n <= d).then(|| String::from(SMALL_N_CONVENTION)),
    }
}

/// Generic `d`-rigidity. For `n >= d + 1` the graph is rigid iff the generic
/// rank equals `dn - C(d+1, 2)`; for smaller `n` iff it is complete.
pub fn is_d_rigid(g: &Graph, d: usize, seed: u64, trials: u32) -> RigidityVerdict {
    let (rank, used) = generic_rank_counted(g, d, seed, trials);
    verdict(d, g.n(), g.edge_count(), rank, used, seed)
}

/// `R(G, p, g)`: row `e = {u, v}` carries `g(u, e)` in the columns of `u`
/// and `-g(u, e)` in those of `v`.
pub fn limit_rigidity_matrix(l: &LimitFrameworkSpec) -> Result<FFMatrix> {
    Ok(dense(l.d * l.graph.n(), &limit_rows(l)?))
}

fn limit_rows(l: &LimitFrameworkSpec) -> Result<Vec<SparseRow>> {
    assert_eq!(
        l.directions.len(),
        l.graph.edge_count(),
        "one direction per edge"
    );
    if let Some(e) = l
        .directions
        .iter()
        .position(|g| g.iter().all(|x| x.is_zero()))
    {
        return Err(Error::ZeroDirection(e));
    }
    Ok(edge_rows(&l.graph, l.d, |e, _, _| l.directions[e].clone()))
}

/// Infinitesimal rigidity of a limit framework via the rank target
/// `dn - C(d+1, 2)`. Reading the verdict as `d`-rigidity of the graph
/// requires the positions to affinely span at least `d - 1` dimensions.
pub fn is_limit_inf_rigid(l: &LimitFrameworkSpec, seed: u64) -> Result<RigidityVerdict> {
    let rows = limit_rows(l)?;
    let rank = matrix::rank_of_sparse_rows(l.d * l.graph.n(), &rows, seed);
    Ok(verdict(
        l.d,
        l.graph.n(),
        l.graph.edge_count(),
        rank,
        1,
        seed,
    ))
}

/// Closure of `b` under 0-extension: repeatedly adds any outside vertex with
/// at least `d` neighbours inside. Vertices are scanned in ascending id
/// order until a full pass adds nothing.
pub fn absorb(g: &Graph, b: &VertexSet, d: usize) -> Result<VertexSet> {
    if b.is_clear() {
        return Err(Error::EmptySet);
    }
    if let Some(v) = b.ones().find(|&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        });
    }
    let mut w = b.clone();
    w.grow(g.n());
    loop {
        let mut changed = false;
        for v in 0..g.n() {
            if !w.contains(v) && g.neighbors(v).intersection_count(&w) >= d {
                w.insert(v);
                changed = true;
            }
        }
        if !changed {
            return Ok(w);
        }
    }
}

/// Minimum-degree sufficient condition `δ(G) >= n/2 + d - 1`. `false` is
/// inconclusive.
pub fn jlv_sufficient(g: &Graph, d: usize) -> Result<bool> {
    let n = g.n();
    if d == 0 || d >= n {
        return Err(Error::InvalidParameter(alloc::format!(
            "need 1 <= d < n, got d = {d}, n = {n}"
        )));
    }
    Ok(2 * g.min_degree() + 2 >= n + 2 * d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vertex_set;
    use crate::oracles::{connected, exact_rank_rational};

    #[test]
    fn single_edge_and_empty() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let f = FrameworkSpec {
            graph: g.clone(),
            d: 1,
            positions: alloc::vec![alloc::vec![Fq::new(5)], alloc::vec![Fq::new(2)]],
        };
        let m = rigidity_matrix(&f);
        assert_eq!((m.rows(), m.cols()), (1, 2));
        assert_eq!(m[(0, 0)], Fq::new(3));
        assert_eq!(m[(0, 1)], -Fq::new(3));
        assert_eq!(m.rank(), 1);
        let e = FrameworkSpec {
            graph: Graph::empty(3),
            d: 2,
            positions: matrix::generic_points(3, 2, 0),
        };
        assert_eq!(rigidity_matrix(&e).rows(), 0);
        assert_eq!(rigidity_matrix(&e).rank(), 0);
    }

    #[test]
    fn triangle_rank_matches_rational_oracle() {
        // small integer positions so the rational oracle sees the same matrix
        let pos = [[0i64, 0], [3, 1], [1, 4]];
        let g = Graph::complete(3);
        let f = FrameworkSpec {
            graph: g.clone(),
            d: 2,
            positions: pos
                .iter()
                .map(|p| p.iter().map(|&x| Fq::from_i64(x)).collect())
                .collect(),
        };
        let mut int_rows = Vec::new();
        for &(u, v) in g.edges() {
            let mut row = alloc::vec![0i64; 6];
            for k in 0..2 {
                row[2 * u + k] = pos[u][k] - pos[v][k];
                row[2 * v + k] = pos[v][k] - pos[u][k];
            }
            int_rows.push(row);
        }
        assert_eq!(exact_rank_rational(&int_rows).unwrap(), 3);
        assert_eq!(rigidity_matrix(&f).rank(), 3);
        assert_eq!(generic_rank(&g, 2, 1, 2), 3);
    }

    #[test]
    fn generic_rank_examples() {
        assert_eq!(generic_rank(&Graph::cycle(4), 2, 1, 2), 4);
        assert_eq!(generic_rank(&Graph::complete(4), 2, 1, 2), 5);
        assert_eq!(generic_rank(&Graph::path(3), 1, 1, 2), 2);
    }

    #[test]
    fn complete_graphs_are_rigid() {
        for d in 1..=6 {
            let v = is_d_rigid(&Graph::complete(d + 1), d, 3, 2);
            assert!(v.rigid, "K_{} in dimension {}", d + 1, d);
            assert_eq!(v.error_bound, 0.0);
        }
        let v = is_d_rigid(&Graph::cycle(4), 2, 3, 2);
        assert!(!v.rigid);
        assert_eq!(v.error_bound, 0.0);
        // Two K_4 sharing a vertex: 12 edges against a target of 11, yet
        // flexible, so the negative is probabilistic.
        let hinge = Graph::overlapping_cliques(4, 1);
        assert_eq!(hinge.n(), 7);
        let v = is_d_rigid(&hinge, 2, 3, 2);
        assert!(!v.rigid);
        assert_eq!(v.trials, 2);
        assert!(v.error_bound > 0.0 && v.error_bound < 1e-30);
    }

    #[test]
    fn small_n_convention() {
        let v = is_d_rigid(&Graph::complete(3), 5, 0, 2);
        assert!(v.rigid);
        assert_eq!(v.convention.as_deref(), Some(SMALL_N_CONVENTION));
        assert!(!is_d_rigid(&Graph::path(3), 5, 0, 2).rigid);
        assert!(is_d_rigid(&Graph::empty(1), 3, 0, 2).rigid);
        assert!(is_d_rigid(&Graph::complete(4), 3, 0, 2)
            .convention
            .is_none());
    }

    #[test]
    fn overlapping_cliques_sharpness() {
        let g = Graph::overlapping_cliques(8, 4);
        assert_eq!(g.n(), 12);
        assert!(is_d_rigid(&g, 4, 9, 2).rigid);
        assert!(!is_d_rigid(&g, 5, 9, 2).rigid);
    }

    #[test]
    fn limit_matrix_specializes_ordinary_matrix() {
        let g = Graph::complete(5);
        let positions = matrix::generic_points(5, 2, 4);
        let directions = g
            .edges()
            .iter()
            .map(|&(u, v)| difference(&positions[u], &positions[v]))
            .collect();
        let l = LimitFrameworkSpec {
            graph: g.clone(),
            d: 2,
            positions: positions.clone(),
            directions,
        };
        let f = FrameworkSpec {
            graph: g,
            d: 2,
            positions,
        };
        assert_eq!(limit_rigidity_matrix(&l).unwrap(), rigidity_matrix(&f));
        assert!(is_limit_inf_rigid(&l, 0).unwrap().rigid);

        let one = LimitFrameworkSpec {
            graph: Graph::new(2, [(0, 1)]).unwrap(),
            d: 2,
            positions: matrix::generic_points(2, 2, 0),
            directions: alloc::vec![alloc::vec![Fq::ONE, Fq::ZERO]],
        };
        assert_eq!(limit_rigidity_matrix(&one).unwrap().rank(), 1);
        let zero = LimitFrameworkSpec {
            directions: alloc::vec![alloc::vec![Fq::ZERO; 2]],
            ..one
        };
        assert_eq!(limit_rigidity_matrix(&zero), Err(Error::ZeroDirection(0)));
    }

    #[test]
    fn absorb_cases() {
        let k6 = Graph::complete(6);
        let w = absorb(&k6, &vertex_set(6, [0, 1, 2]).unwrap(), 2).unwrap();
        assert_eq!(w.count_ones(..), 6);
        let g = Graph::overlapping_cliques(8, 4);
        let w = absorb(&g, &vertex_set(12, 0..8).unwrap(), 4).unwrap();
        assert_eq!(w.count_ones(..), 12);
        assert!(is_d_rigid(&g, 4, 1, 2).rigid);
        let all = vertex_set(6, 0..6).unwrap();
        assert_eq!(absorb(&k6, &all, 3).unwrap(), all);
        assert_eq!(
            absorb(&k6, &vertex_set(6, []).unwrap(), 2),
            Err(Error::EmptySet)
        );
    }

    #[test]
    fn jlv_examples() {
        assert!(jlv_sufficient(&Graph::complete(10), 5).unwrap());
        assert!(!jlv_sufficient(&Graph::cycle(8), 1).unwrap());
        assert!(is_d_rigid(&Graph::cycle(8), 1, 0, 2).rigid);
        assert!(jlv_sufficient(&Graph::complete(4), 4).is_err());
        assert!(jlv_sufficient(&Graph::complete(4), 0).is_err());
    }

    #[test]
    fn one_rigid_iff_connected_on_paths_and_forests() {
        let g = Graph::new(5, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(is_d_rigid(&g, 1, 0, 2).rigid, connected(&g));
        assert!(is_d_rigid(&Graph::path(7), 1, 0, 2).rigid);
    }
}
