//! Free trees by canonical level sequences.
//!
//! Rooted trees are generated in Beyer-Hedetniemi order, each once. A rooted
//! tree is kept when its root is a centre and, for trees with two centres,
//! its AHU code is at least the code of the tree rooted at the other centre.
//! That leaves one rooting per free tree.

use super::TreeError;
use crate::graph::MultiGraph;

pub const MAX_ENUMERATED_ORDER: usize = 16;

/// Iterator over all free trees on `n` vertices.
#[derive(Debug, Clone)]
pub struct FreeTrees {
    levels: Option<Vec<usize>>,
}

pub fn enumerate_trees(n: usize) -> Result<FreeTrees, TreeError> {
    if n == 0 || n > MAX_ENUMERATED_ORDER {
        return Err(TreeError::OrderOutOfRange(n));
    }
    Ok(FreeTrees {
        levels: Some((0..n).collect()),
    })
}

impl Iterator for FreeTrees {
    type Item = MultiGraph;

    fn next(&mut self) -> Option<MultiGraph> {
        loop {
            let current = self.levels.take()?;
            self.levels = successor(&current);
            let parents = parents(&current);
            if is_canonical_free(&parents) {
                return Some(tree_from_parents(&parents));
            }
        }
    }
}

fn successor(l: &[usize]) -> Option<Vec<usize>> {
    let p = l.iter().rposition(|&x| x > 1)?;
    let q = l[..p]
        .iter()
        .rposition(|&x| x == l[p] - 1)
        .expect("a parent level exists");
    let mut s = l.to_vec();
    for i in p..l.len() {
        s[i] = s[i - (p - q)];
    }
    Some(s)
}

fn parents(l: &[usize]) -> Vec<Option<usize>> {
    let mut last_at = vec![0usize; l.len() + 1];
    let mut out = Vec::with_capacity(l.len());
    for (i, &lev) in l.iter().enumerate() {
        out.push(if lev == 0 { None } else { Some(last_at[lev - 1]) });
        last_at[lev] = i;
    }
    out
}

fn tree_from_parents(parents: &[Option<usize>]) -> MultiGraph {
    MultiGraph::from_edges(
        parents.len(),
        parents.iter().enumerate().filter_map(|(i, p)| p.map(|p| (p, i))),
    )
    .expect("valid tree")
}

fn adjacency(parents: &[Option<usize>]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); parents.len()];
    for (i, p) in parents.iter().enumerate() {
        if let Some(p) = *p {
            adj[i].push(p);
            adj[p].push(i);
        }
    }
    adj
}

/// Centres by repeatedly stripping leaves.
pub(crate) fn centres(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// AHU code of the tree rooted at `root`.
pub(crate) fn ahu(adj: &[Vec<usize>], root: usize) -> String {
    fn go(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = adj[v]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| go(adj, w, v))
            .collect();
        kids.sort_unstable();
        format!("({})", kids.concat())
    }
    go(adj, root, usize::MAX)
}

fn is_canonical_free(parents: &[Option<usize>]) -> bool {
    let adj = adjacency(parents);
    let c = centres(&adj);
    if !c.contains(&0) {
        return false;
    }
    match c.as_slice() {
        [_] => true,
        [a, b] => {
            let other = if *a == 0 { *b } else { *a };
            ahu(&adj, 0) >= ahu(&adj, other)
        }
        _ => unreachable!("a tree has one or two centres"),
    }
}

/// Isomorphism-invariant code of a free tree: the largest AHU code over its
/// centres.
pub fn free_tree_code(t: &MultiGraph) -> String {
    let adj: Vec<Vec<usize>> = (0..t.n()).map(|v| t.neighbours(v).collect()).collect();
    centres(&adj)
        .into_iter()
        .map(|c| ahu(&adj, c))
        .max()
        .unwrap_or_default()
}
