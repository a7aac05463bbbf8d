use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::comb::CombTree;
use super::generalized::GeneralizedPartitionSpec;
use crate::error::{Error, Result};
use crate::field::Fq;
use crate::rigidity::LimitFrameworkSpec;

fn difference(a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

/// Limit framework on the union of the `G_ij`: every vertex of `V_i` sits at
/// `x_i`. An edge of `G_ij` between blocks points along `x_i - x_j`. An edge
/// of `G_ij` inside `V_i` points along `x_i - x_j` from the side of the comb
/// split holding the lowest vertex, and the other way from the other side.
///
/// `points` needs one entry per index below `max m_i`; `comb_trees[i]` is the
/// successful comb tree of block `i`.
pub fn assemble_limit_framework(
    spec: &GeneralizedPartitionSpec,
    comb_trees: &[CombTree],
    points: &[Vec<Fq>],
) -> Result<LimitFrameworkSpec> {
    let p = &spec.partition;
    let m = p.len();
    let needed = spec.bounds.iter().copied().max().unwrap_or(m);
    if points.len() < needed {
        return Err(Error::InvalidParameter(format!(
            "{} points given, {needed} needed",
            points.len()
        )));
    }
    if comb_trees.len() != m {
        return Err(Error::InvalidParameter(format!(
            "{} comb trees for {m} blocks",
            comb_trees.len()
        )));
    }
    let d = points[0].len();
    let mut color: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for s in &spec.subgraphs {
        for &(a, b) in &s.edges {
            color.insert((a.min(b), a.max(b)), (s.i, s.j));
        }
    }
    let graph = spec.union_graph();
    let positions = (0..p.n()).map(|v| points[p.block_of(v)].clone()).collect();
    let mut directions = Vec::with_capacity(graph.edge_count());
    for &(u, v) in graph.edges() {
        let (bu, bv) = (p.block_of(u), p.block_of(v));
        if bu != bv {
            directions.push(difference(&points[bu], &points[bv]));
            continue;
        }
        let (a, b) = color[&(u, v)];
        let j = if a == bu { b } else { a };
        let node = comb_trees[bu].separating_node(u, v).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "comb tree of block {bu} does not separate {u} and {v}"
            ))
        })?;
        if node.color != Some(j) {
            return Err(Error::InvalidParameter(format!(
                "comb tree of block {bu} splits {{{u}, {v}}} with the wrong color"
            )));
        }
        let left = node.left.as_ref().expect("separating node is internal");
        let toward = difference(&points[bu], &points[j]);
        if left.subset.binary_search(&u).is_ok() {
            directions.push(toward);
        } else {
            directions.push(toward.into_iter().map(|x| -x).collect());
        }
    }
    Ok(LimitFrameworkSpec {
        graph,
        d,
        positions,
        directions,
    })
}
