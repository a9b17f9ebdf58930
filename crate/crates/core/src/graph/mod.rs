//! Undirected multigraphs on dense vertex ids `0..n`.
//!
//! A [`MultiGraph`] stores each unordered vertex pair once together with its
//! multiplicity. Pairs are kept sorted lexicographically, which fixes the
//! canonical ordering of pairs and of their parallel copies used by every
//! weighting in this crate.

mod generate;
mod io;
mod structure;

pub use generate::{Family, SplitMix64};
pub use io::{parse_edge_list, to_dot, to_edge_list, ParseError, ParseErrorKind};
pub use structure::{Bipartition, Side, SuspendedPath};

use std::collections::BTreeMap;

use thiserror::Error;

/// Errors raised by graph construction and structural queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("pair {{{0}, {1}}} has multiplicity zero")]
    ZeroMultiplicity(usize, usize),
    #[error("graph is not bipartite (odd cycle {cycle:?})")]
    NonBipartite { cycle: Vec<usize> },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge copy {pair}:{copy} does not exist")]
    NoSuchCopy { pair: usize, copy: u32 },
    #[error("unsatisfiable parameters: {0}")]
    InvalidParameters(String),
}

/// One unordered vertex pair `{u, v}` with `u < v` and its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    pub u: usize,
    pub v: usize,
    pub multiplicity: u32,
}

impl Pair {
    /// The endpoint that is not `w`.
    pub fn other(&self, w: usize) -> usize {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn key(&self) -> (usize, usize) {
        (self.u, self.v)
    }
}

/// A single parallel copy of a pair, addressed by pair index and copy index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeCopy {
    pub pair: usize,
    pub copy: u32,
}

/// A multigraph without loops. Immutable once built; every "modification"
/// returns a new value.
#[derive(Debug, Clone)]
pub struct MultiGraph {
    n: usize,
    pairs: Vec<Pair>,
    // copy_offset[i] is the flat index of copy 0 of pair i; last entry is the copy count
    copy_offset: Vec<usize>,
    // (neighbour, pair index), sorted by neighbour
    adj: Vec<Vec<(usize, usize)>>,
}

impl PartialEq for MultiGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.pairs == other.pairs
    }
}

impl Eq for MultiGraph {}

impl std::hash::Hash for MultiGraph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.pairs.hash(state);
    }
}

fn normalize(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl MultiGraph {
    /// Graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_merged(n, BTreeMap::new())
    }

    /// Builds a multigraph from `(u, v, multiplicity)` triples. Repeated pairs
    /// have their multiplicities added.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, u32)>) -> Result<Self, GraphError> {
        let mut merged: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for (u, v, k) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if k == 0 {
                return Err(GraphError::ZeroMultiplicity(u.min(v), u.max(v)));
            }
            *merged.entry(normalize(u, v)).or_insert(0) += k;
        }
        Ok(Self::from_merged(n, merged))
    }

    /// Builds a graph where every listed pair has multiplicity one (repeats
    /// are merged into higher multiplicities).
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        Self::new(n, edges.into_iter().map(|(u, v)| (u, v, 1)))
    }

    fn from_merged(n: usize, merged: BTreeMap<(usize, usize), u32>) -> Self {
        let pairs: Vec<Pair> = merged
            .into_iter()
            .map(|((u, v), multiplicity)| Pair { u, v, multiplicity })
            .collect();
        let mut copy_offset = Vec::with_capacity(pairs.len() + 1);
        let mut acc = 0usize;
        let mut adj = vec![Vec::new(); n];
        for (i, p) in pairs.iter().enumerate() {
            copy_offset.push(acc);
            acc += p.multiplicity as usize;
            adj[p.u].push((p.v, i));
            adj[p.v].push((p.u, i));
        }
        copy_offset.push(acc);
        for list in &mut adj {
            list.sort_unstable();
        }
        MultiGraph {
            n,
            pairs,
            copy_offset,
            adj,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of distinct vertex pairs.
    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// Number of edges counted with multiplicity.
    pub fn copy_count(&self) -> usize {
        *self.copy_offset.last().unwrap_or(&0)
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn pair(&self, index: usize) -> Pair {
        self.pairs[index]
    }

    pub fn pair_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = normalize(u, v);
        self.pairs.binary_search_by(|p| p.key().cmp(&key)).ok()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        self.pair_index(u, v).map_or(0, |i| self.pairs[i].multiplicity)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.pair_index(u, v).is_some()
    }

    /// Degree counting parallel copies.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v]
            .iter()
            .map(|&(_, p)| self.pairs[p].multiplicity as usize)
            .sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Distinct neighbours in increasing order.
    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn neighbour_count(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// `(neighbour, pair index)` entries at `v`, sorted by neighbour.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn is_simple(&self) -> bool {
        self.pairs.iter().all(|p| p.multiplicity == 1)
    }

    /// Flat index of a copy in the canonical copy order.
    pub fn copy_index(&self, c: EdgeCopy) -> usize {
        self.copy_offset[c.pair] + c.copy as usize
    }

    pub fn copy_at(&self, index: usize) -> EdgeCopy {
        let pair = self.copy_offset.partition_point(|&o| o <= index) - 1;
        EdgeCopy {
            pair,
            copy: (index - self.copy_offset[pair]) as u32,
        }
    }

    /// Flat index range of the copies of a pair.
    pub fn copy_range(&self, pair: usize) -> std::ops::Range<usize> {
        self.copy_offset[pair]..self.copy_offset[pair + 1]
    }

    pub fn contains_copy(&self, c: EdgeCopy) -> bool {
        c.pair < self.pairs.len() && c.copy < self.pairs[c.pair].multiplicity
    }

    /// All copies in canonical order: by pair, then by copy index.
    pub fn copies(&self) -> impl Iterator<Item = EdgeCopy> + '_ {
        self.pairs
            .iter()
            .enumerate()
            .flat_map(|(pair, p)| (0..p.multiplicity).map(move |copy| EdgeCopy { pair, copy }))
    }

    pub fn endpoints(&self, c: EdgeCopy) -> (usize, usize) {
        let p = self.pairs[c.pair];
        (p.u, p.v)
    }

    /// Edge triples `(u, v, multiplicity)` in canonical order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.pairs.iter().map(|p| (p.u, p.v, p.multiplicity))
    }

    /// Same vertex set with every edge at the listed vertices removed.
    pub fn without_vertices(&self, removed: &[usize]) -> MultiGraph {
        let mut gone = vec![false; self.n];
        for &v in removed {
            gone[v] = true;
        }
        let merged = self
            .pairs
            .iter()
            .filter(|p| !gone[p.u] && !gone[p.v])
            .map(|p| (p.key(), p.multiplicity))
            .collect();
        Self::from_merged(self.n, merged)
    }

    /// Same vertex set with the listed copies deleted. A pair losing all its
    /// copies disappears.
    pub fn without_copies(&self, removed: &[EdgeCopy]) -> Result<MultiGraph, GraphError> {
        let mut merged: BTreeMap<(usize, usize), u32> = self.pairs.iter().map(|p| (p.key(), p.multiplicity)).collect();
        let mut seen = std::collections::HashSet::new();
        for &c in removed {
            if !self.contains_copy(c) || !seen.insert(c) {
                return Err(GraphError::NoSuchCopy {
                    pair: c.pair,
                    copy: c.copy,
                });
            }
            let key = self.pairs[c.pair].key();
            let m = merged.get_mut(&key).expect("pair present");
            *m -= 1;
            if *m == 0 {
                merged.remove(&key);
            }
        }
        Ok(Self::from_merged(self.n, merged))
    }

    /// Adds edges (and `extra_vertices` new isolated vertices first).
    pub fn with_added(
        &self,
        extra_vertices: usize,
        edges: impl IntoIterator<Item = (usize, usize, u32)>,
    ) -> Result<MultiGraph, GraphError> {
        MultiGraph::new(self.n + extra_vertices, self.triples().chain(edges))
    }

    /// The subgraph induced by `keep`, relabelled to `0..keep.len()` in the
    /// order given.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Subgraph {
        let mut from_host = vec![None; self.n];
        for (i, &v) in keep.iter().enumerate() {
            from_host[v] = Some(i);
        }
        let merged = self
            .pairs
            .iter()
            .filter_map(|p| match (from_host[p.u], from_host[p.v]) {
                (Some(a), Some(b)) => Some((normalize(a, b), p.multiplicity)),
                _ => None,
            })
            .collect();
        Subgraph {
            graph: Self::from_merged(keep.len(), merged),
            to_host: keep.to_vec(),
            from_host,
        }
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> MultiGraph {
        let merged = self
            .pairs
            .iter()
            .map(|p| (normalize(perm[p.u], perm[p.v]), p.multiplicity))
            .collect();
        Self::from_merged(self.n, merged)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &MultiGraph) -> MultiGraph {
        let shift = self.n;
        let merged = self
            .triples()
            .map(|(u, v, k)| ((u, v), k))
            .chain(other.triples().map(|(u, v, k)| ((u + shift, v + shift), k)))
            .collect();
        Self::from_merged(self.n + other.n, merged)
    }
}

/// An induced subgraph together with the vertex maps back to its host.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: MultiGraph,
    pub to_host: Vec<usize>,
    pub from_host: Vec<Option<usize>>,
}
