use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{key, recognize, CactusError};
use crate::graph::MultiGraph;
use crate::weighting::Weighting;

/// `{0,1}`-weighting of a simple odd multi-cactus other than `K2` in which `v`
/// and every vertex on the other side get weighted degree 1 and the rest of
/// `v`'s side gets 0 or 2.
///
/// The cycles are ordered outward from one containing `v`. That cycle takes
/// the pattern where the `k`-th edge from `v` has weight 1 iff
/// `k = 0, 1 (mod 4)`. Each later cycle adds a path of length `1 (mod 4)`
/// between the ends of its green edge. Counted from the end opposite `v`, its
/// `k`-th edge gets 1 iff `k = 0, 3 (mod 4)`, so both end edges get 0 and the
/// old degrees are kept.
pub fn cactus_weighting(g: &MultiGraph, v: usize) -> Result<Weighting<'_>, CactusError> {
    if v >= g.n() {
        return Err(CactusError::NoSuchVertex(v));
    }
    if !g.is_simple() {
        return Err(CactusError::NotSimpleOMC);
    }
    let cert = recognize(g).ok_or(CactusError::NotSimpleOMC)?;
    let cycles = cert.host_cycles();
    if cycles.is_empty() {
        return Err(CactusError::IsK2);
    }
    let bp = g.bipartition().expect("odd multi-cacti are bipartite");

    let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, c) in cycles.iter().enumerate() {
        for e in 0..c.len() {
            by_pair.entry(key(c[e], c[(e + 1) % c.len()])).or_default().push(i);
        }
    }
    let root = cycles
        .iter()
        .position(|c| c.contains(&v))
        .expect("every vertex lies on a cycle");

    let mut ones = BTreeSet::new();
    let r = &cycles[root];
    let at = r.iter().position(|&x| x == v).unwrap();
    let len = r.len();
    for k in 1..=len {
        if k % 4 <= 1 {
            ones.insert(key(r[(at + k - 1) % len], r[(at + k) % len]));
        }
    }

    let mut seen = vec![false; cycles.len()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(i) = queue.pop_front() {
        let c = &cycles[i];
        for e in 0..c.len() {
            let (a, b) = (c[e], c[(e + 1) % c.len()]);
            for &j in &by_pair[&key(a, b)] {
                if seen[j] {
                    continue;
                }
                seen[j] = true;
                queue.push_back(j);
                let path = path_around(&cycles[j], a, b);
                // count from the end on the side opposite v
                let from_opposite: Vec<usize> = if bp.side(path[0]) != bp.side(v) {
                    path
                } else {
                    path.into_iter().rev().collect()
                };
                for k in 1..from_opposite.len() {
                    if k % 4 == 0 || k % 4 == 3 {
                        ones.insert(key(from_opposite[k - 1], from_opposite[k]));
                    }
                }
            }
        }
    }

    let copies = ones.into_iter().map(|(a, b)| crate::graph::EdgeCopy {
        pair: g.pair_index(a, b).expect("edge of g"),
        copy: 0,
    });
    let w = Weighting::zero_one(g, copies).expect("copies of g");
    debug_assert!(has_cactus_pattern(&w, v));
    Ok(w)
}

/// Cycle `c` walked from `a` to `b` the long way round.
fn path_around(c: &[usize], a: usize, b: usize) -> Vec<usize> {
    let n = c.len();
    let ia = c.iter().position(|&x| x == a).unwrap();
    let step = if c[(ia + 1) % n] == b { n - 1 } else { 1 };
    (0..n).map(|i| c[(ia + i * step) % n]).collect()
}

/// Checks the degree pattern produced by [`cactus_weighting`].
pub fn has_cactus_pattern(w: &Weighting<'_>, v: usize) -> bool {
    let g = w.graph();
    let Ok(bp) = g.bipartition() else {
        return false;
    };
    let own = bp.side(v);
    (0..g.n()).all(|x| {
        let d = w.weighted_degree(x);
        if x == v || bp.side(x) == own.opposite() {
            d == 1
        } else {
            d == 0 || d == 2
        }
    })
}
