//! Parity tools: factors modulo 2 and the weightings built from them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{Bipartition, EdgeCopy, MultiGraph, Side};
use crate::weighting::Weighting;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParityError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("parity target has odd total")]
    OddTotal,
    #[error("parity target has {found} entries, graph has {expected} vertices")]
    TargetLength { expected: usize, found: usize },
    #[error("parity target values must be 0 or 1 (vertex {0})")]
    TargetValue(usize),
    #[error("bipartition does not match the graph")]
    InvalidBipartition,
    #[error("both bipartition sides have odd size")]
    BothSidesOdd,
    #[error("precondition violated: {0}")]
    PreconditionViolated(Precondition),
    #[error("no connectivity-preserving choice of edges exists")]
    NoRemovalFound,
}

/// The clause of a procedure's hypothesis that failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Precondition {
    #[error("q = {0} is below 4")]
    QTooSmall(usize),
    #[error("|A| = {size} exceeds q = {q}")]
    TooManyVertices { size: usize, q: usize },
    #[error("vertex {0} is listed twice or out of range")]
    BadVertex(usize),
    #[error("vertices {0} and {1} of A are adjacent")]
    NotIndependent(usize, usize),
    #[error("degrees in A are too small for q")]
    DegreeTooSmall,
    #[error("vertex {0} of A is incident to a bridge")]
    IncidentToBridge(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not simple")]
    NotSimple,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("a bipartition side has even size")]
    SideEven,
    #[error("vertex {0} has degree below 4")]
    DegreeBelowFour(usize),
    #[error("vertex {0} is a cutvertex")]
    CutVertex(usize),
    #[error("neighbour {0} has larger degree")]
    NotLocalMaximum(usize),
    #[error("same-degree neighbour {0} is incident to a bridge after deleting the centre")]
    NeighbourOnBridge(usize),
    #[error("edge removal hits the exceptional configuration")]
    Exceptional,
}

fn violated(p: Precondition) -> ParityError {
    ParityError::PreconditionViolated(p)
}

/// Target parity `f(v) in {0, 1}` per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityTarget(Vec<u8>);

impl ParityTarget {
    pub fn new(values: Vec<u8>) -> Result<Self, ParityError> {
        if let Some(v) = values.iter().position(|&x| x > 1) {
            return Err(ParityError::TargetValue(v));
        }
        Ok(ParityTarget(values))
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Self {
        ParityTarget((0..n).map(|v| u8::from(f(v))).collect())
    }

    pub fn get(&self, v: usize) -> u8 {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_is_even(&self) -> bool {
        self.0.iter().map(|&x| x as usize).sum::<usize>() % 2 == 0
    }
}

/// A set of parallel edge copies of some host graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeSubset(BTreeSet<EdgeCopy>);

impl EdgeSubset {
    pub fn contains(&self, c: EdgeCopy) -> bool {
        self.0.contains(&c)
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeCopy> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Degrees of the spanning subgraph formed by the subset.
    pub fn degrees(&self, g: &MultiGraph) -> Vec<usize> {
        let mut d = vec![0; g.n()];
        for c in &self.0 {
            let (u, v) = g.endpoints(*c);
            d[u] += 1;
            d[v] += 1;
        }
        d
    }
}

/// Spanning subgraph whose degrees match `f` modulo 2.
///
/// Uses the BFS tree from vertex 0: every non-tree copy is left out and each
/// tree edge is decided from the leaves upward, so only the root is never
/// forced; the even total makes it come out right.
pub fn f_factor_mod2(g: &MultiGraph, f: &ParityTarget) -> Result<EdgeSubset, ParityError> {
    if f.len() != g.n() {
        return Err(ParityError::TargetLength {
            expected: g.n(),
            found: f.len(),
        });
    }
    if !g.is_connected() {
        return Err(ParityError::Disconnected);
    }
    if !f.total_is_even() {
        return Err(ParityError::OddTotal);
    }
    let n = g.n();
    if n == 0 {
        return Ok(EdgeSubset::default());
    }
    let mut order = Vec::with_capacity(n);
    let mut parent_pair = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &(w, pair) in g.incident(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                parent_pair[w] = pair;
                queue.push_back(w);
            }
        }
    }
    let mut parity = vec![0u8; n];
    let mut chosen = BTreeSet::new();
    for &v in order.iter().skip(1).rev() {
        if parity[v] != f.get(v) {
            chosen.insert(EdgeCopy {
                pair: parent_pair[v],
                copy: 0,
            });
            parity[v] ^= 1;
            parity[parent[v]] ^= 1;
        }
    }
    debug_assert_eq!(parity[0], f.get(0));
    Ok(EdgeSubset(chosen))
}

/// Proper `{0,1}`-weighting of a connected bipartite graph with an even side:
/// that side gets odd weighted degrees and the other side even ones. When both
/// sides are even, side X is the odd-degree side.
pub fn parity_proper_weighting<'g>(g: &'g MultiGraph, bp: &Bipartition) -> Result<Weighting<'g>, ParityError> {
    if !bp.is_valid_for(g) {
        return Err(ParityError::InvalidBipartition);
    }
    if !g.is_connected() {
        return Err(ParityError::Disconnected);
    }
    let odd_side = if bp.count(Side::X).is_multiple_of(2) {
        Side::X
    } else if bp.count(Side::Y).is_multiple_of(2) {
        Side::Y
    } else {
        return Err(ParityError::BothSidesOdd);
    };
    let f = ParityTarget::from_fn(g.n(), |v| bp.side(v) == odd_side);
    let h = f_factor_mod2(g, &f)?;
    Ok(Weighting::zero_one(g, h.iter()).expect("copies of g"))
}

/// Result of [`remove_edges_connected`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RemovalOutcome {
    /// One incident copy per vertex of `A`; deleting them all keeps the graph
    /// connected.
    Removed(BTreeMap<usize, EdgeCopy>),
    /// `|A| = q = 4`, every vertex of `A` has degree 3, and `G - A` splits
    /// into six components, each attached to exactly two vertices of `A`.
    Exceptional { components: Vec<Vec<usize>> },
}

/// Picks an edge at every vertex of the independent set `a` so that deleting
/// all of them leaves `g` connected.
pub fn remove_edges_connected(g: &MultiGraph, a: &[usize], q: usize) -> Result<RemovalOutcome, ParityError> {
    if q < 4 {
        return Err(violated(Precondition::QTooSmall(q)));
    }
    let mut in_a = vec![false; g.n()];
    for &v in a {
        if v >= g.n() || in_a[v] {
            return Err(violated(Precondition::BadVertex(v)));
        }
        in_a[v] = true;
    }
    if a.len() > q {
        return Err(violated(Precondition::TooManyVertices { size: a.len(), q }));
    }
    if !g.is_connected() {
        return Err(violated(Precondition::Disconnected));
    }
    for &v in a {
        if let Some(w) = g.neighbours(v).find(|&w| in_a[w]) {
            return Err(violated(Precondition::NotIndependent(v.min(w), v.max(w))));
        }
    }
    let all_q_minus_one = a.iter().all(|&v| g.degree(v) + 1 >= q);
    let short = a.iter().filter(|&&v| g.degree(v) < q).count();
    if !all_q_minus_one && short > 1 {
        return Err(violated(Precondition::DegreeTooSmall));
    }
    let bridges = g.bridges();
    for &v in a {
        if bridges.iter().any(|&(x, y)| x == v || y == v) {
            return Err(violated(Precondition::IncidentToBridge(v)));
        }
    }
    if a.is_empty() {
        return Ok(RemovalOutcome::Removed(BTreeMap::new()));
    }
    if let Some(components) = exceptional_components(g, a, q) {
        return Ok(RemovalOutcome::Exceptional { components });
    }

    // candidates per vertex: one copy per incident pair, parallel pairs first
    let candidates: Vec<Vec<EdgeCopy>> = a
        .iter()
        .map(|&v| {
            let mut c: Vec<EdgeCopy> = g
                .incident(v)
                .iter()
                .map(|&(_, pair)| EdgeCopy {
                    pair,
                    copy: g.pair(pair).multiplicity - 1,
                })
                .collect();
            c.sort_by_key(|e| std::cmp::Reverse(g.pair(e.pair).multiplicity));
            c
        })
        .collect();
    let mut picked = Vec::with_capacity(a.len());
    if search_removal(g, &candidates, &mut picked) {
        Ok(RemovalOutcome::Removed(a.iter().copied().zip(picked).collect()))
    } else {
        Err(ParityError::NoRemovalFound)
    }
}

fn search_removal(g: &MultiGraph, candidates: &[Vec<EdgeCopy>], picked: &mut Vec<EdgeCopy>) -> bool {
    let depth = picked.len();
    if depth == candidates.len() {
        return true;
    }
    for &c in &candidates[depth] {
        picked.push(c);
        let h = g.without_copies(picked).expect("distinct copies of g");
        if h.is_connected() && search_removal(g, candidates, picked) {
            return true;
        }
        picked.pop();
    }
    false
}

fn exceptional_components(g: &MultiGraph, a: &[usize], q: usize) -> Option<Vec<Vec<usize>>> {
    if !(a.len() == 4 && q == 4 && a.iter().all(|&v| g.degree(v) == 3)) {
        return None;
    }
    let rest: Vec<usize> = (0..g.n()).filter(|v| !a.contains(v)).collect();
    let sub = g.induced_subgraph(&rest);
    let comps: Vec<Vec<usize>> = sub
        .graph
        .components()
        .into_iter()
        .map(|c| c.into_iter().map(|i| sub.to_host[i]).collect())
        .collect();
    if comps.len() != 6 {
        return None;
    }
    let two_each = comps.iter().all(|comp| {
        let touched: BTreeSet<usize> = comp
            .iter()
            .flat_map(|&v| g.neighbours(v))
            .filter(|w| a.contains(w))
            .collect();
        touched.len() == 2
    });
    two_each.then_some(comps)
}

/// Proper `{0,1}`-weighting of a simple bipartite graph with both sides odd,
/// centred on a vertex `w0` of locally maximum degree: every edge at `w0` gets
/// weight 1 and `w0` ends strictly above each neighbour.
pub fn local_max_weighting(g: &MultiGraph, w0: usize) -> Result<Weighting<'_>, ParityError> {
    if w0 >= g.n() {
        return Err(violated(Precondition::BadVertex(w0)));
    }
    if !g.is_simple() {
        return Err(violated(Precondition::NotSimple));
    }
    if !g.is_connected() {
        return Err(violated(Precondition::Disconnected));
    }
    let bp = g.bipartition().map_err(|_| violated(Precondition::NotBipartite))?;
    if bp.count(Side::X) % 2 == 0 || bp.count(Side::Y) % 2 == 0 {
        return Err(violated(Precondition::SideEven));
    }
    let d0 = g.degree(w0);
    if d0 < 4 {
        return Err(violated(Precondition::DegreeBelowFour(w0)));
    }
    if g.is_cut_vertex(w0) {
        return Err(violated(Precondition::CutVertex(w0)));
    }
    if let Some(w) = g.neighbours(w0).find(|&w| g.degree(w) > d0) {
        return Err(violated(Precondition::NotLocalMaximum(w)));
    }
    let same: Vec<usize> = g.neighbours(w0).filter(|&w| g.degree(w) == d0).collect();

    let rest: Vec<usize> = (0..g.n()).filter(|&v| v != w0).collect();
    let sub = g.induced_subgraph(&rest);
    let local = |v: usize| sub.from_host[v].expect("not w0");
    let bridges = sub.graph.bridges();
    for &a in &same {
        let la = local(a);
        if bridges.iter().any(|&(x, y)| x == la || y == la) {
            return Err(violated(Precondition::NeighbourOnBridge(a)));
        }
    }
    let a_local: Vec<usize> = same.iter().map(|&a| local(a)).collect();
    let removed = match remove_edges_connected(&sub.graph, &a_local, d0)? {
        RemovalOutcome::Removed(map) => map,
        RemovalOutcome::Exceptional { .. } => return Err(violated(Precondition::Exceptional)),
    };
    let removed_copies: Vec<EdgeCopy> = removed.values().copied().collect();
    let reduced = sub
        .graph
        .without_copies(&removed_copies)
        .expect("copies of the subgraph");

    let side0 = bp.side(w0);
    let near: BTreeSet<usize> = g.neighbours(w0).collect();
    let even = d0.is_multiple_of(2);
    let f = ParityTarget::from_fn(reduced.n(), |i| {
        let h = sub.to_host[i];
        let own_side_or_near = bp.side(h) == side0 || near.contains(&h);
        own_side_or_near == even
    });
    let factor = f_factor_mod2(&reduced, &f)?;

    let mut w = Weighting::uniform(g, crate::weighting::WeightPair::ZERO_ONE);
    for &(_, pair) in g.incident(w0) {
        w.set(EdgeCopy { pair, copy: 0 }, true).expect("copy of g");
    }
    for c in factor.iter() {
        let (u, v) = reduced.endpoints(c);
        let pair = g.pair_index(sub.to_host[u], sub.to_host[v]).expect("edge of g");
        w.set(EdgeCopy { pair, copy: 0 }, true).expect("copy of g");
    }
    debug_assert!(w.is_proper());
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use crate::weighting::{oracle_exists_proper, WeightPair};

    fn complete_bipartite(p: usize, q: usize) -> MultiGraph {
        MultiGraph::from_edges(p + q, (0..p).flat_map(|i| (0..q).map(move |j| (i, p + j)))).unwrap()
    }

    #[test]
    fn p3_factor() {
        let p3 = Family::Path(3).build().unwrap();
        let f = ParityTarget::new(vec![1, 0, 1]).unwrap();
        let h = f_factor_mod2(&p3, &f).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h.degrees(&p3), vec![1, 2, 1]);
    }

    #[test]
    fn zero_target_gives_even_degrees() {
        let g = Family::RandomBridgelessBipartite { n: 10, m: 14, seed: 3 }
            .build()
            .unwrap();
        let h = f_factor_mod2(&g, &ParityTarget::from_fn(10, |_| false)).unwrap();
        assert!(h.degrees(&g).iter().all(|d| d % 2 == 0));
    }

    #[test]
    fn c4_adjacent_odd_pair() {
        let c4 = Family::Cycle(4).build().unwrap();
        let f = ParityTarget::new(vec![1, 1, 0, 0]).unwrap();
        let h = f_factor_mod2(&c4, &f).unwrap();
        let only: Vec<EdgeCopy> = h.iter().collect();
        assert_eq!(
            only,
            vec![EdgeCopy {
                pair: c4.pair_index(0, 1).unwrap(),
                copy: 0
            }]
        );
        assert_eq!(h.degrees(&c4), vec![1, 1, 0, 0]);
    }

    #[test]
    fn factor_errors() {
        let p3 = Family::Path(3).build().unwrap();
        let odd = ParityTarget::new(vec![1, 0, 0]).unwrap();
        assert_eq!(f_factor_mod2(&p3, &odd), Err(ParityError::OddTotal));
        let split = MultiGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let zero = ParityTarget::from_fn(4, |_| false);
        assert_eq!(f_factor_mod2(&split, &zero), Err(ParityError::Disconnected));
        assert!(ParityTarget::new(vec![2]).is_err());
    }

    #[test]
    fn parity_weightings() {
        let c4 = Family::Cycle(4).build().unwrap();
        let bp = c4.bipartition().unwrap();
        let w = parity_proper_weighting(&c4, &bp).unwrap();
        let d = w.weighted_degrees();
        for (v, dv) in d.iter().enumerate() {
            assert_eq!(dv % 2 == 1, bp.side(v) == Side::X);
        }
        assert!(w.is_proper());

        let p5 = Family::Path(5).build().unwrap();
        let bp = p5.bipartition().unwrap();
        let w = parity_proper_weighting(&p5, &bp).unwrap();
        assert!(w.conflicts().conflicts.is_empty());
        let d = w.weighted_degrees();
        // vertices 1 and 3 form the size-2 side
        for (v, dv) in d.iter().enumerate() {
            assert_eq!(dv % 2 == 1, v % 2 == 1);
        }

        let p6 = Family::Path(6).build().unwrap();
        let bp = p6.bipartition().unwrap();
        assert_eq!(parity_proper_weighting(&p6, &bp), Err(ParityError::BothSidesOdd));
    }

    #[test]
    fn removal_around_a_hub() {
        // vertices 0 and 1 joined by four paths of length 2 through 2..=5
        let g = MultiGraph::from_edges(6, (2..6).flat_map(|m| [(0, m), (m, 1)])).unwrap();
        match remove_edges_connected(&g, &[0], 4).unwrap() {
            RemovalOutcome::Removed(map) => {
                let c = map[&0];
                assert!(g.without_copies(&[c]).unwrap().is_connected());
                let (u, v) = g.endpoints(c);
                assert!(u == 0 || v == 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn removal_detects_exceptional_case() {
        // subdivided K4: branch vertices 0..4, one subdivision vertex per pair
        let mut edges = Vec::new();
        let mut next = 4;
        for i in 0..4 {
            for j in i + 1..4 {
                edges.push((i, next));
                edges.push((next, j));
                next += 1;
            }
        }
        let g = MultiGraph::from_edges(10, edges).unwrap();
        match remove_edges_connected(&g, &[0, 1, 2, 3], 4).unwrap() {
            RemovalOutcome::Exceptional { components } => {
                assert_eq!(components.len(), 6);
                assert!(components.iter().all(|c| c.len() == 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn removal_with_empty_set() {
        let c4 = Family::Cycle(4).build().unwrap();
        assert_eq!(
            remove_edges_connected(&c4, &[], 4),
            Ok(RemovalOutcome::Removed(BTreeMap::new()))
        );
    }

    #[test]
    fn removal_preconditions() {
        let c4 = Family::Cycle(4).build().unwrap();
        assert_eq!(
            remove_edges_connected(&c4, &[0], 3),
            Err(violated(Precondition::QTooSmall(3)))
        );
        assert_eq!(
            remove_edges_connected(&c4, &[0, 1], 4),
            Err(violated(Precondition::NotIndependent(0, 1)))
        );
        assert_eq!(
            remove_edges_connected(&c4, &[0, 2], 4),
            Err(violated(Precondition::DegreeTooSmall))
        );
        let lu = Family::LuExample.build().unwrap();
        let k = complete_bipartite(3, 3);
        assert!(remove_edges_connected(&k, &[0], 4).is_ok());
        assert_eq!(
            remove_edges_connected(&lu, &[12], 4),
            Err(violated(Precondition::IncidentToBridge(12)))
        );
    }

    #[test]
    fn local_max_on_k55_minus_matching() {
        let g = MultiGraph::from_edges(
            10,
            (0..5).flat_map(|i| (0..5).filter(move |&j| j != i).map(move |j| (i, 5 + j))),
        )
        .unwrap();
        for w0 in [0, 3, 7] {
            let w = local_max_weighting(&g, w0).unwrap();
            assert!(w.conflicts().conflicts.is_empty());
            for &(_, pair) in g.incident(w0) {
                assert_eq!(w.weight(EdgeCopy { pair, copy: 0 }), 1);
            }
        }
    }

    #[test]
    fn local_max_on_k55() {
        let g = complete_bipartite(5, 5);
        let w = local_max_weighting(&g, 0).unwrap();
        assert!(w.is_proper());
        let d = w.weighted_degrees();
        assert_eq!(d[0], 5);
        for v in g.neighbours(0) {
            assert!(d[v] < 5);
        }
    }

    #[test]
    fn local_max_rejects_cutvertex() {
        // a 4-cycle and a K_{2,3} sharing vertex 0; sides have sizes 3 and 5
        let g = MultiGraph::from_edges(
            8,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (0, 4),
                (4, 5),
                (5, 6),
                (6, 0),
                (0, 7),
                (7, 5),
            ],
        )
        .unwrap();
        assert_eq!(local_max_weighting(&g, 0), Err(violated(Precondition::CutVertex(0))));
        let p = Family::Path(5).build().unwrap();
        assert!(local_max_weighting(&p, 2).is_err());
    }

    #[test]
    fn parity_weighting_matches_oracle_verdict_on_small_graphs() {
        for seed in 0..40 {
            let g = Family::RandomBridgelessBipartite { n: 8, m: 10, seed }.build().unwrap();
            let bp = g.bipartition().unwrap();
            if let Ok(w) = parity_proper_weighting(&g, &bp) {
                assert!(w.is_proper());
                assert!(oracle_exists_proper(&g, WeightPair::ZERO_ONE, &[0; 8], 22)
                    .unwrap()
                    .is_some());
            }
        }
    }
}
