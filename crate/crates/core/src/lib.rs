//! Neighbour sum-distinguishing `{0,1}`-edge-weightings of bipartite graphs.
//!
//! A weighting `w: E(G) -> {a, b}` is *proper* when adjacent vertices receive
//! different sums of incident weights. This crate decides the `{0,1}` case
//! for bridgeless bipartite graphs (via odd multi-cactus recognition) and
//! for trees (via a feasibility table), constructs witnesses, and keeps an
//! exhaustive oracle around to check all of it.

pub mod cactus;
pub mod cli;
pub mod graph;
pub mod parity;
pub mod trees;
pub mod weighting;
