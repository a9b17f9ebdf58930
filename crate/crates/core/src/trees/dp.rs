//! Feasibility table for `{0,1}`-weightings of trees.
//!
//! `g(v, p, D)` says whether the subtree of `v` can be weighted so that every
//! edge inside it is conflict-free and `v` ends at weighted degree `D`, where
//! `p` is the weight of the edge to `v`'s parent and `D` counts `p` and `v`'s
//! increment. For a fixed `D`, child `c` may use edge weight `q` iff some
//! `D_c != D` has `g(c, q, D_c)`. Each child then allows `{0}`, `{1}` or
//! both, so the reachable child sums form the interval
//! `[forced, forced + flexible]` and no general subset-sum is needed.

use std::collections::BTreeSet;

use super::TreeError;
use crate::graph::{EdgeCopy, MultiGraph};
use crate::weighting::Weighting;

/// Feasibility table of a tree rooted at `root`.
#[derive(Debug, Clone)]
pub struct RootedProfile {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    increments: Vec<u32>,
    // table[v][p][D]
    table: Vec<[Vec<bool>; 2]>,
}

pub(crate) fn check_tree(t: &MultiGraph) -> Result<(), TreeError> {
    if t.n() == 0 || !t.is_simple() || !t.is_tree() {
        Err(TreeError::NotATree)
    } else {
        Ok(())
    }
}

/// Builds the table bottom-up. `increments` has one entry per vertex.
pub fn profile(t: &MultiGraph, root: usize, increments: &[u32]) -> Result<RootedProfile, TreeError> {
    check_tree(t)?;
    if root >= t.n() {
        return Err(TreeError::NoSuchVertex(root));
    }
    if increments.len() != t.n() {
        return Err(TreeError::IncrementsLength {
            expected: t.n(),
            found: increments.len(),
        });
    }
    let n = t.n();
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        order.push(v);
        for w in t.neighbours(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                children[v].push(w);
                stack.push(w);
            }
        }
    }
    for c in &mut children {
        c.sort_unstable();
    }
    let mut table: Vec<[Vec<bool>; 2]> = vec![[Vec::new(), Vec::new()]; n];
    for &v in order.iter().rev() {
        let top = children[v].len() + 1 + increments[v] as usize;
        for p in 0..2 {
            let mut row = vec![false; top + 1];
            for (d, slot) in row.iter_mut().enumerate() {
                *slot = child_range(&table, &children[v], d).is_some_and(|(lo, hi)| {
                    let need = d as i64 - p as i64 - increments[v] as i64;
                    lo as i64 <= need && need <= hi as i64
                });
            }
            table[v][p] = row;
        }
    }
    Ok(RootedProfile {
        root,
        parent,
        children,
        increments: increments.to_vec(),
        table,
    })
}

/// Allowed child edge weights when the parent ends at `d`.
fn allowed(table: &[[Vec<bool>; 2]], c: usize, d: usize) -> [bool; 2] {
    let ok = |q: usize| table[c][q].iter().enumerate().any(|(dc, &f)| f && dc != d);
    [ok(0), ok(1)]
}

/// Interval of achievable child-edge sums, or `None` if some child is stuck.
fn child_range(table: &[[Vec<bool>; 2]], children: &[usize], d: usize) -> Option<(usize, usize)> {
    let mut forced = 0;
    let mut flexible = 0;
    for &c in children {
        match allowed(table, c, d) {
            [true, true] => flexible += 1,
            [false, true] => forced += 1,
            [true, false] => {}
            [false, false] => return None,
        }
    }
    Some((forced, forced + flexible))
}

impl RootedProfile {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// `g(v, p, d)`; out-of-range degrees are infeasible.
    pub fn feasible(&self, v: usize, p: u8, d: i64) -> bool {
        d >= 0 && self.table[v][p as usize].get(d as usize).copied().unwrap_or(false)
    }

    /// Degrees `v` can end at with parent-edge weight `p`.
    pub fn degrees(&self, v: usize, p: u8) -> BTreeSet<i64> {
        self.table[v][p as usize]
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(d, _)| d as i64)
            .collect()
    }

    /// Achievable weighted degrees of the root over proper weightings.
    pub fn root_degrees(&self) -> BTreeSet<i64> {
        self.degrees(self.root, 0)
    }

    /// Proper weighting reaching the smallest feasible root degree, found by
    /// walking the table back down.
    pub fn witness<'g>(&self, t: &'g MultiGraph) -> Option<Weighting<'g>> {
        let d0 = *self.root_degrees().iter().next()?;
        let mut ones = Vec::new();
        let mut stack = vec![(self.root, 0usize, d0 as usize)];
        while let Some((v, p, d)) = stack.pop() {
            let (forced, _) = child_range(&self.table, &self.children[v], d)?;
            let mut extra = d - p - self.increments[v] as usize - forced;
            for &c in &self.children[v] {
                let q = match allowed(&self.table, c, d) {
                    [false, true] => 1,
                    [true, true] if extra > 0 => {
                        extra -= 1;
                        1
                    }
                    _ => 0,
                };
                if q == 1 {
                    ones.push(EdgeCopy {
                        pair: t.pair_index(v, c).expect("tree edge"),
                        copy: 0,
                    });
                }
                let dc = self.table[c][q]
                    .iter()
                    .enumerate()
                    .position(|(dc, &f)| f && dc != d)
                    .expect("allowed weight has a degree");
                stack.push((c, q, dc));
            }
        }
        let w = Weighting::zero_one(t, ones)
            .expect("tree copies")
            .with_increments(self.increments.clone())
            .expect("lengths match");
        debug_assert!(w.is_proper());
        Some(w)
    }
}

/// Outcome of [`classify_tree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeVerdict<'g> {
    Good(Weighting<'g>),
    Bad,
}

impl TreeVerdict<'_> {
    pub fn is_bad(&self) -> bool {
        matches!(self, TreeVerdict::Bad)
    }
}

pub fn classify_tree(t: &MultiGraph) -> Result<TreeVerdict<'_>, TreeError> {
    let p = profile(t, 0, &vec![0; t.n()])?;
    Ok(match p.witness(t) {
        Some(w) => TreeVerdict::Good(w),
        None => TreeVerdict::Bad,
    })
}

/// What a vertex is forced to do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum StatusLabel {
    /// No proper weighting at all.
    Bad,
    /// None once `v` is incremented; both sides even.
    GvMinus,
    /// `v` always ends at `a`, and at `b` when incremented; odd order.
    GvPair(i64, i64),
    Unconstrained,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexStatus {
    pub s0: BTreeSet<i64>,
    pub s1: BTreeSet<i64>,
    pub label: StatusLabel,
}

pub fn vertex_status(t: &MultiGraph, v: usize) -> Result<VertexStatus, TreeError> {
    let mut inc = vec![0; t.n()];
    let s0 = profile(t, v, &inc)?.root_degrees();
    inc[v] = 1;
    let s1 = profile(t, v, &inc)?.root_degrees();
    let bp = t.bipartition().expect("trees are bipartite");
    let (x, y) = (bp.count(crate::graph::Side::X), bp.count(crate::graph::Side::Y));
    let label = if s0.is_empty() {
        StatusLabel::Bad
    } else if s1.is_empty() && x % 2 == 0 && y % 2 == 0 {
        StatusLabel::GvMinus
    } else if s0.len() == 1 && s1.len() == 1 && t.n() % 2 == 1 {
        StatusLabel::GvPair(*s0.first().unwrap(), *s1.first().unwrap())
    } else {
        StatusLabel::Unconstrained
    };
    Ok(VertexStatus { s0, s1, label })
}
