use std::collections::VecDeque;

use super::{GraphError, MultiGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

/// A proper 2-colouring of the vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    side: Vec<Side>,
}

impl Bipartition {
    pub fn from_sides(side: Vec<Side>) -> Self {
        Bipartition { side }
    }

    pub fn side(&self, v: usize) -> Side {
        self.side[v]
    }

    pub fn sides(&self) -> &[Side] {
        &self.side
    }

    pub fn vertices(&self, s: Side) -> Vec<usize> {
        (0..self.side.len()).filter(|&v| self.side[v] == s).collect()
    }

    pub fn count(&self, s: Side) -> usize {
        self.side.iter().filter(|&&t| t == s).count()
    }

    /// Every edge of `g` joins the two sides.
    pub fn is_valid_for(&self, g: &MultiGraph) -> bool {
        self.side.len() == g.n() && g.pairs().iter().all(|p| self.side[p.u] != self.side[p.v])
    }
}

/// A maximal chain of vertices that each have degree 2 and two distinct
/// neighbours.
///
/// `vertices` lists the whole chain including its two end vertices; for a
/// closed chain the first and last entries coincide. `degenerate` is set when
/// the host graph is itself a bare path or cycle, so no end vertex has degree
/// at least 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuspendedPath {
    pub vertices: Vec<usize>,
    pub closed: bool,
    pub degenerate: bool,
}

impl SuspendedPath {
    /// Number of edges along the chain.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn internal(&self) -> &[usize] {
        if self.vertices.len() <= 2 {
            &[]
        } else {
            &self.vertices[1..self.vertices.len() - 1]
        }
    }

    pub fn ends(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }

    /// Both end vertices have degree at least 3 in `g`.
    pub fn is_suspended_in(&self, g: &MultiGraph) -> bool {
        let (a, b) = self.ends();
        !self.degenerate && g.degree(a) >= 3 && g.degree(b) >= 3
    }
}

impl MultiGraph {
    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for w in self.neighbours(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// True for graphs with at most one component (the empty graph counts).
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Simple, connected and acyclic.
    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.is_simple() && self.pair_count() + 1 == self.n() && self.is_connected()
    }

    /// 2-colouring of a possibly disconnected graph; the smallest vertex of
    /// each component goes to side X.
    pub fn two_colouring(&self) -> Result<Bipartition, GraphError> {
        let n = self.n();
        let mut side: Vec<Option<Side>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(Side::X);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let sv = side[v].unwrap();
                for w in self.neighbours(v) {
                    match side[w] {
                        None => {
                            side[w] = Some(sv.opposite());
                            parent[w] = v;
                            depth[w] = depth[v] + 1;
                            queue.push_back(w);
                        }
                        Some(sw) if sw == sv => {
                            return Err(GraphError::NonBipartite {
                                cycle: odd_cycle(&parent, &depth, v, w),
                            });
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(Bipartition {
            side: side.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// Bipartition of a connected graph with vertex 0 on side X.
    pub fn bipartition(&self) -> Result<Bipartition, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        self.two_colouring()
    }

    /// Cut edges by the lowpoint method. A pair of multiplicity at least 2 is
    /// never a bridge. Returned as sorted `(u, v)` with `u < v`.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut out = Vec::new();
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, pair used to enter, next incident index)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(frame) = stack.last_mut() {
                let (v, via, idx) = *frame;
                if idx < self.incident(v).len() {
                    frame.2 += 1;
                    let (w, pair) = self.incident(v)[idx];
                    if pair == via && self.pair(pair).multiplicity == 1 {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, pair, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(u, _, _)) = stack.last() {
                        low[u] = low[u].min(low[v]);
                        if low[v] > disc[u] {
                            out.push((u.min(v), u.max(v)));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Cut edges by deleting each simple pair and testing connectivity of its
    /// endpoints. Quadratic; used to cross-check [`MultiGraph::bridges`].
    pub fn bridges_naive(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, p) in self.pairs().iter().enumerate() {
            if p.multiplicity != 1 {
                continue;
            }
            if !self.reachable_avoiding_pair(p.u, p.v, i) {
                out.push((p.u, p.v));
            }
        }
        out
    }

    fn reachable_avoiding_pair(&self, from: usize, to: usize, skip: usize) -> bool {
        let mut seen = vec![false; self.n()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(v) = stack.pop() {
            if v == to {
                return true;
            }
            for &(w, pair) in self.incident(v) {
                if pair != skip && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }

    /// Whether deleting `v` increases the number of components among the
    /// remaining vertices.
    pub fn is_cut_vertex(&self, v: usize) -> bool {
        let before = self.components().len();
        let keep: Vec<usize> = (0..self.n()).filter(|&w| w != v).collect();
        let after = self.induced_subgraph(&keep).graph.components().len();
        // an isolated v disappears together with its component
        let isolated = self.neighbour_count(v) == 0;
        after > before - usize::from(isolated)
    }

    /// All maximal chains of degree-2 vertices (each with two distinct
    /// neighbours). Every such vertex lies in exactly one returned chain.
    ///
    /// When the graph is a bare path or cycle the whole graph is returned as a
    /// single chain tagged `degenerate`.
    pub fn suspended_paths(&self) -> Vec<SuspendedPath> {
        let n = self.n();
        let inner = |v: usize| self.degree(v) == 2 && self.neighbour_count(v) == 2;
        if n == 0 {
            return Vec::new();
        }
        if self.max_degree() <= 2 && self.is_connected() && self.pair_count() > 0 {
            return vec![self.degenerate_chain()];
        }
        let mut used = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if inner(start) {
                continue;
            }
            for w in self.neighbours(start) {
                if !inner(w) || used[w] {
                    continue;
                }
                let mut vertices = vec![start];
                let (mut prev, mut cur) = (start, w);
                while inner(cur) {
                    used[cur] = true;
                    vertices.push(cur);
                    let next = self.neighbours(cur).find(|&x| x != prev).unwrap();
                    prev = cur;
                    cur = next;
                }
                vertices.push(cur);
                let closed = cur == start;
                out.push(SuspendedPath {
                    vertices,
                    closed,
                    degenerate: false,
                });
            }
        }
        out
    }

    fn degenerate_chain(&self) -> SuspendedPath {
        let n = self.n();
        let start = (0..n).find(|&v| self.neighbour_count(v) == 1).unwrap_or(0);
        let mut vertices = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = self.neighbours(cur).find(|&x| x != prev && x != cur);
            match next {
                Some(x) if x == start => {
                    vertices.push(start);
                    break;
                }
                Some(x) => {
                    vertices.push(x);
                    prev = cur;
                    cur = x;
                }
                None => break,
            }
        }
        let closed = vertices.len() > 1 && vertices.first() == vertices.last();
        // a doubled K2 is a closed chain of length 2
        let closed = closed || (n == 2 && self.multiplicity(0, 1) == 2);
        if closed && vertices.first() != vertices.last() {
            vertices.push(start);
        }
        SuspendedPath {
            vertices,
            closed,
            degenerate: true,
        }
    }
}

fn odd_cycle(parent: &[usize], depth: &[usize], a: usize, b: usize) -> Vec<usize> {
    let (mut x, mut y) = (a, b);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x];
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        right.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        left.push(x);
        right.push(y);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    #[test]
    fn even_cycle_alternates() {
        let c6 = Family::Cycle(6).build().unwrap();
        let bp = c6.bipartition().unwrap();
        assert_eq!(bp.side(0), Side::X);
        assert_eq!(bp.count(Side::X), 3);
        assert_eq!(bp.count(Side::Y), 3);
        assert!(bp.is_valid_for(&c6));
    }

    #[test]
    fn path_sides() {
        let p6 = Family::Path(6).build().unwrap();
        let bp = p6.bipartition().unwrap();
        assert_eq!((bp.count(Side::X), bp.count(Side::Y)), (3, 3));
    }

    #[test]
    fn odd_cycle_witness() {
        let c5 = Family::Cycle(5).build().unwrap();
        match c5.bipartition() {
            Err(GraphError::NonBipartite { cycle }) => {
                assert_eq!(cycle.len(), 5);
                for i in 0..5 {
                    assert!(c5.has_edge(cycle[i], cycle[(i + 1) % 5]));
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn disconnected_bipartition() {
        let g = MultiGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.bipartition(), Err(GraphError::Disconnected));
        assert!(g.two_colouring().is_ok());
    }

    #[test]
    fn bridges_of_named_graphs() {
        let p6 = Family::Path(6).build().unwrap();
        assert_eq!(p6.bridges().len(), 5);
        let c6 = Family::Cycle(6).build().unwrap();
        assert!(c6.bridges().is_empty());
        let lu = Family::LuExample.build().unwrap();
        assert_eq!(lu.bridges(), vec![(0, 12), (6, 13), (12, 13)]);
    }

    #[test]
    fn doubled_pair_is_not_a_bridge() {
        let g = MultiGraph::new(3, [(0, 1, 2), (1, 2, 1)]).unwrap();
        assert_eq!(g.bridges(), vec![(1, 2)]);
        assert_eq!(g.bridges_naive(), vec![(1, 2)]);
    }

    #[test]
    fn suspended_path_of_c6_with_parallel_copy() {
        let g = MultiGraph::new(6, [(0, 1, 2), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (0, 5, 1)]).unwrap();
        let paths = g.suspended_paths();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].vertices, vec![0, 5, 4, 3, 2, 1]);
        assert_eq!(paths[0].length(), 5);
        assert!(paths[0].is_suspended_in(&g));
    }

    #[test]
    fn k4_has_no_suspended_paths() {
        let k4 = MultiGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(k4.suspended_paths().is_empty());
    }

    #[test]
    fn bare_path_and_cycle_are_degenerate() {
        let p6 = Family::Path(6).build().unwrap();
        let paths = p6.suspended_paths();
        assert_eq!(paths.len(), 1);
        assert!(paths[0].degenerate && !paths[0].closed);
        assert_eq!(paths[0].vertices, vec![0, 1, 2, 3, 4, 5]);

        let c6 = Family::Cycle(6).build().unwrap();
        let paths = c6.suspended_paths();
        assert_eq!(paths.len(), 1);
        assert!(paths[0].degenerate && paths[0].closed);
        assert_eq!(paths[0].length(), 6);
    }

    #[test]
    fn theta_graph_chains() {
        // two hubs joined by three paths of length 2
        let g = MultiGraph::from_edges(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
        let paths = g.suspended_paths();
        assert_eq!(paths.len(), 3);
        assert!(paths.iter().all(|p| p.ends() == (0, 1) && p.length() == 2));
    }

    #[test]
    fn cut_vertices() {
        let p3 = Family::Path(3).build().unwrap();
        assert!(p3.is_cut_vertex(1));
        assert!(!p3.is_cut_vertex(0));
        let c4 = Family::Cycle(4).build().unwrap();
        assert!((0..4).all(|v| !c4.is_cut_vertex(v)));
    }
}
