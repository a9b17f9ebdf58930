//! Instance corpora shared by the integration tests.
#![allow(dead_code)]

use sumdistinct::cactus::{build_from_recipe, red_green_colourings, CactusRecipe};
use sumdistinct::cli::bridgeless_instance;
use sumdistinct::graph::{Family, MultiGraph, SplitMix64};
use sumdistinct::weighting::{oracle_exists_proper, WeightPair};

pub const BUDGET: usize = 22;

pub fn is_bad_under(g: &MultiGraph, pair: WeightPair) -> bool {
    oracle_exists_proper(g, pair, &vec![0; g.n()], BUDGET)
        .expect("within budget")
        .is_none()
}

pub fn is_bad(g: &MultiGraph) -> bool {
    is_bad_under(g, WeightPair::ZERO_ONE)
}

pub fn random_recipe(rng: &mut SplitMix64, max_cycles: usize, lengths: &[usize], max_mult: u32) -> CactusRecipe {
    let k = 1 + rng.below(max_cycles);
    CactusRecipe::random(rng, k, lengths, max_mult)
}

/// Odd multi-cacti from recipes (and multiplied `K2`s) within `max_copies`.
pub fn omc_graphs(seed: u64, count: usize, max_copies: usize, max_mult: u32) -> Vec<MultiGraph> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < 100 * count {
        tries += 1;
        let g = if rng.below(10) == 0 {
            let k = 1 + rng.below(max_mult.max(1) as usize) as u32;
            build_from_recipe(&CactusRecipe::Edge { multiplicity: k }).unwrap()
        } else {
            build_from_recipe(&random_recipe(&mut rng, 3, &[6, 10], max_mult)).unwrap()
        };
        if g.copy_count() <= max_copies {
            out.push(g);
        }
    }
    out
}

/// The odd multi-cactus with one red pair doubled, for every unique-colouring
/// cactus in `graphs` and every red pair, within `max_copies`.
pub fn red_doublings(graphs: &[MultiGraph], max_copies: usize) -> Vec<MultiGraph> {
    let mut out = Vec::new();
    for g in graphs {
        if g.copy_count() + 1 > max_copies {
            continue;
        }
        let Ok(cols) = red_green_colourings(g) else { continue };
        if cols.len() != 1 {
            continue;
        }
        for p in cols[0].red_pairs() {
            out.push(bump(g, p));
        }
    }
    out
}

/// `g` with one more copy of pair index `p`.
pub fn bump(g: &MultiGraph, p: usize) -> MultiGraph {
    let edges = g
        .triples()
        .enumerate()
        .map(|(i, (u, v, k))| (u, v, k + u32::from(i == p)));
    MultiGraph::new(g.n(), edges).unwrap()
}

/// Bridgeless corpus: random bridgeless bipartite graphs, odd multi-cacti,
/// cacti with a red pair doubled, and the even cycles `C4..C22`.
pub fn bridgeless_corpus() -> Vec<(String, MultiGraph)> {
    let mut out: Vec<(String, MultiGraph)> = (0..500u64)
        .map(|s| (format!("random seed {s}"), bridgeless_instance(s, 20)))
        .collect();
    let omcs = omc_graphs(11, 80, 20, 3);
    for (i, g) in red_doublings(&omcs, 20).into_iter().enumerate() {
        out.push((format!("doubled red pair {i}"), g));
    }
    for (i, g) in omcs.into_iter().enumerate() {
        out.push((format!("cactus {i}"), g));
    }
    for n in (4..=22).step_by(2) {
        out.push((format!("C{n}"), Family::Cycle(n).build().unwrap()));
    }
    out
}

/// Connected multigraph on `n` vertices: a random tree plus random extra
/// pairs, multiplicities up to 3. Not necessarily bipartite.
pub fn random_connected_multigraph(rng: &mut SplitMix64, n: usize) -> MultiGraph {
    let tree = Family::RandomTree {
        n,
        seed: rng.next_u64(),
    }
    .build()
    .unwrap();
    let mut edges: Vec<(usize, usize, u32)> = tree.triples().collect();
    if n >= 2 {
        for _ in 0..rng.below(n + 1) {
            let u = rng.below(n);
            let v = rng.below(n);
            if u != v {
                edges.push((u, v, 1));
            }
        }
    }
    for e in edges.iter_mut() {
        if rng.below(5) == 0 {
            e.2 += rng.below(2) as u32 + 1;
        }
    }
    MultiGraph::new(n, edges).unwrap()
}

/// Random connected bipartite graph with pendant vertices: a random tree,
/// a few extra edges between the two sides, then a couple of leaves.
pub fn random_bipartite_with_leaves(rng: &mut SplitMix64, n: usize) -> MultiGraph {
    let tree = Family::RandomTree {
        n,
        seed: rng.next_u64(),
    }
    .build()
    .unwrap();
    let bp = tree.bipartition().unwrap();
    let mut edges: Vec<(usize, usize, u32)> = tree.triples().collect();
    for _ in 0..rng.below(3) {
        let u = rng.below(n);
        let v = rng.below(n);
        if bp.side(u) != bp.side(v) {
            edges.push((u, v, 1));
        }
    }
    let mut total = n;
    for _ in 0..1 + rng.below(2) {
        edges.push((rng.below(total), total, 1));
        total += 1;
    }
    MultiGraph::new(total, edges).unwrap()
}
