//! Splitting a graph at a degree-1 vertex, and the two ways a bad tree of
//! order at least 3 comes apart.

use super::dp::{classify_tree, vertex_status, StatusLabel};
use super::TreeError;
use crate::graph::{MultiGraph, Subgraph};

/// For `v` of degree 1 with neighbour `v'`, every component `G_i` of
/// `G - v - v'` yields the subgraph induced by `G_i + v + v'`. In each piece
/// `v` is local vertex 0 and `v'` local vertex 1.
///
/// `v'v` must be the only edge between `v'` and its side, i.e. every edge at
/// `v'` other than `v'v` is a bridge, so that the pieces share only the path
/// `v v'`.
pub fn decompose_at_degree1(g: &MultiGraph, v: usize) -> Result<Vec<Subgraph>, TreeError> {
    if v >= g.n() {
        return Err(TreeError::NoSuchVertex(v));
    }
    if g.degree(v) != 1 {
        return Err(TreeError::DegreeNotOne(v));
    }
    let vp = g.neighbours(v).next().unwrap();
    let rest = g.without_vertices(&[v, vp]);
    // without_vertices keeps ids; v and v' are isolated there
    let mut pieces = Vec::new();
    for comp in rest.components() {
        if comp.len() == 1 && (comp[0] == v || comp[0] == vp) {
            continue;
        }
        let links = g.neighbours(vp).filter(|w| comp.contains(w)).count();
        let copies: usize = comp.iter().map(|&w| g.multiplicity(vp, w) as usize).sum();
        if links != 1 || copies != 1 {
            return Err(TreeError::NonBridgeAtNeighbour(vp));
        }
        let mut keep = vec![v, vp];
        keep.extend(comp);
        pieces.push(g.induced_subgraph(&keep));
    }
    Ok(pieces)
}

/// One way a bad tree splits into smaller constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BadSplit {
    /// `hub` is joined to `v` and to `s` pendant copies of `K2`; the branch
    /// at `v` is a `G(s,s+1)`-tree at `v`.
    FromGvS1 { hub: usize, v: usize, s: usize },
    /// `hub` has degree 3 and the leaf neighbour `leaf`; the two other
    /// branches, each with `hub` and `leaf` added, are bad trees.
    Glue { hub: usize, leaf: usize },
}

fn branch(t: &MultiGraph, hub: usize, start: usize) -> Vec<usize> {
    let mut seen = vec![false; t.n()];
    seen[hub] = true;
    seen[start] = true;
    let mut stack = vec![start];
    let mut out = vec![start];
    while let Some(x) = stack.pop() {
        for w in t.neighbours(x) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
                out.push(w);
            }
        }
    }
    out
}

/// All splits of a tree of order at least 3 that certify badness.
pub fn bad_splits(t: &MultiGraph) -> Result<Vec<BadSplit>, TreeError> {
    super::dp::check_tree(t)?;
    let mut out = Vec::new();
    for hub in 0..t.n() {
        let nbrs: Vec<usize> = t.neighbours(hub).collect();
        let pendant_k2 = |c: usize| t.degree(c) == 2 && t.neighbours(c).any(|d| d != hub && t.degree(d) == 1);
        if nbrs.len() >= 2 {
            for &v in &nbrs {
                if !nbrs.iter().all(|&c| c == v || pendant_k2(c)) {
                    continue;
                }
                let s = nbrs.len() - 1;
                let side = branch(t, hub, v);
                let sub = t.induced_subgraph(&side).graph;
                if vertex_status(&sub, 0)?.label == StatusLabel::GvPair(s as i64, s as i64 + 1) {
                    out.push(BadSplit::FromGvS1 { hub, v, s });
                }
            }
        }
        if nbrs.len() == 3 {
            for &leaf in &nbrs {
                if t.degree(leaf) != 1 {
                    continue;
                }
                let both_bad = nbrs.iter().filter(|&&w| w != leaf).all(|&w| {
                    let mut keep = vec![hub, leaf];
                    keep.extend(branch(t, hub, w));
                    let sub = t.induced_subgraph(&keep).graph;
                    classify_tree(&sub).is_ok_and(|v| v.is_bad())
                });
                if both_bad {
                    out.push(BadSplit::Glue { hub, leaf });
                }
            }
        }
    }
    Ok(out)
}
