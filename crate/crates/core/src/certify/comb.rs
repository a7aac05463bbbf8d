use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::anchored::{ColoredEdge, ColoredMultigraph};
use crate::error::{Error, Result};
use crate::oracles::UnionFind;

/// Largest vertex set [`monochromatic_cuts_exhaustive`] accepts.
pub const EXHAUSTIVE_CUTS_CAP: usize = 18;

/// One node of a successful comb recursion. Internal nodes split `subset`
/// into `left` (the part holding the lowest vertex) and `right`; every edge
/// between them has color `color`, or there are none and `color` is `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombTree {
    pub subset: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<Box<CombTree>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<Box<CombTree>>,
}

impl CombTree {
    pub fn is_leaf(&self) -> bool {
        self.left.is_none()
    }

    /// The node at which `u` and `v` are separated, if both lie in `subset`.
    pub fn separating_node(&self, u: usize, v: usize) -> Option<&CombTree> {
        let mut node = self;
        if node.subset.binary_search(&u).is_err() || node.subset.binary_search(&v).is_err() {
            return None;
        }
        loop {
            let left = node.left.as_deref()?;
            let right = node.right.as_deref()?;
            let (lu, lv) = (
                left.subset.binary_search(&u).is_ok(),
                left.subset.binary_search(&v).is_ok(),
            );
            match (lu, lv) {
                (true, true) => node = left,
                (false, false) => node = right,
                _ => return Some(node),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum CombOutcome {
    Success(CombTree),
    /// `subset` has no monochromatic cut.
    Failure {
        subset: Vec<usize>,
    },
}

fn sorted_subset(h: &ColoredMultigraph, u: &[usize]) -> Result<Vec<usize>> {
    if u.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut s = u.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != u.len() {
        return Err(Error::InvalidParameter(
            "vertex repeated in comb subset".into(),
        ));
    }
    if let Some(&v) = s.iter().find(|&&v| v >= h.n) {
        return Err(Error::VertexOutOfRange { vertex: v, n: h.n });
    }
    Ok(s)
}

/// Splits `subset` along the components of its edges minus those colored
/// `skip`. `None` when that graph is connected.
fn split(
    subset: &[usize],
    edges: &[ColoredEdge],
    skip: Option<usize>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let local = |v: usize| subset.binary_search(&v).unwrap();
    let mut uf = UnionFind::new(subset.len());
    let mut parts = subset.len();
    for e in edges.iter().filter(|e| Some(e.color) != skip) {
        if uf.union(local(e.u), local(e.v)) {
            parts -= 1;
        }
    }
    if parts == 1 {
        return None;
    }
    let root = uf.find(0);
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for (i, &v) in subset.iter().enumerate() {
        if uf.find(i) == root {
            left.push(v);
        } else {
            right.push(v);
        }
    }
    Some((left, right))
}

fn inside(edges: &[ColoredEdge], subset: &[usize]) -> Vec<ColoredEdge> {
    edges
        .iter()
        .copied()
        .filter(|e| subset.binary_search(&e.u).is_ok() && subset.binary_search(&e.v).is_ok())
        .collect()
}

fn node(subset: Vec<usize>, edges: Vec<ColoredEdge>) -> core::result::Result<CombTree, Vec<usize>> {
    if subset.len() == 1 {
        return Ok(CombTree {
            subset,
            color: None,
            left: None,
            right: None,
        });
    }
    let found = split(&subset, &edges, None).map(|s| (None, s)).or_else(|| {
        let colors: BTreeSet<usize> = edges.iter().map(|e| e.color).collect();
        colors
            .into_iter()
            .find_map(|c| split(&subset, &edges, Some(c)).map(|s| (Some(c), s)))
    });
    let Some((color, (l, r))) = found else {
        return Err(subset);
    };
    let (le, re) = (inside(&edges, &l), inside(&edges, &r));
    let left = node(l, le)?;
    let right = node(r, re)?;
    Ok(CombTree {
        subset,
        color,
        left: Some(Box::new(left)),
        right: Some(Box::new(right)),
    })
}

/// Monochromatic-cuts recursion on `h[u]`. Colors are tried in ascending
/// order; a subset that is already disconnected splits with no color. The
/// left part is always the component holding the lowest vertex id.
pub fn comb(h: &ColoredMultigraph, u: &[usize]) -> Result<CombOutcome> {
    let subset = sorted_subset(h, u)?;
    let edges = inside(&h.edges, &subset);
    Ok(match node(subset, edges) {
        Ok(tree) => CombOutcome::Success(tree),
        Err(subset) => CombOutcome::Failure { subset },
    })
}

/// Checks every subset `S` of `u` with `|S| >= 2` for a split `S = A ⊔ B`
/// whose crossing edges in `h` all share one color, by enumerating splits
/// directly. Returns the first subset (in bitmask order) with no such split.
pub fn monochromatic_cuts_exhaustive(
    h: &ColoredMultigraph,
    u: &[usize],
) -> Result<Option<Vec<usize>>> {
    let subset = sorted_subset(h, u)?;
    let k = subset.len();
    if k > EXHAUSTIVE_CUTS_CAP {
        return Err(Error::CapExceeded {
            what: "exhaustive monochromatic cuts",
            limit: EXHAUSTIVE_CUTS_CAP,
        });
    }
    let edges: Vec<(u32, u32, usize)> = inside(&h.edges, &subset)
        .into_iter()
        .map(|e| {
            let a = subset.binary_search(&e.u).unwrap();
            let b = subset.binary_search(&e.v).unwrap();
            (1u32 << a, 1u32 << b, e.color)
        })
        .collect();
    for s in 1u32..(1 << k) {
        if s.count_ones() < 2 {
            continue;
        }
        let low = s & s.wrapping_neg();
        let within: Vec<&(u32, u32, usize)> = edges
            .iter()
            .filter(|(a, b, _)| s & a != 0 && s & b != 0)
            .collect();
        let rest = s ^ low;
        let mut found = false;
        // a ranges over subsets of `rest`; the part holding `low` is `low | a`.
        let mut a = 0u32;
        loop {
            let part = low | a;
            if part != s {
                let mut color = None;
                let ok = within.iter().all(|&&(x, y, c)| {
                    if (part & x != 0) == (part & y != 0) {
                        return true;
                    }
                    match color {
                        None => {
                            color = Some(c);
                            true
                        }
                        Some(prev) => prev == c,
                    }
                });
                if ok {
                    found = true;
                    break;
                }
            }
            if a == rest {
                break;
            }
            a = (a.wrapping_sub(rest)) & rest;
        }
        if !found {
            return Ok(Some(
                (0..k)
                    .filter(|&i| s & (1 << i) != 0)
                    .map(|i| subset[i])
                    .collect(),
            ));
        }
    }
    Ok(None)
}
