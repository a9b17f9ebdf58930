//! Library side of the command-line tool: deciding the property for one
//! graph, cross-check sweeps, instance generation and witness checking.
//!
//! Exit codes are `0` has the property, `1` lacks it, `2` unknown (the oracle
//! budget was too small), `3` input error.

use rayon::prelude::*;
use serde::Serialize;

use crate::cactus::{build_from_recipe, recognize, CactusRecipe};
use crate::graph::{parse_edge_list, Family, MultiGraph, Side, SplitMix64};
use crate::parity::{f_factor_mod2, local_max_weighting, ParityTarget};
use crate::trees::{classify_tree, construct, enumerate_trees, ConstructionSpec, StatusLabel, TreeVerdict};
use crate::weighting::{oracle_exists_proper, WeightPair, Weighting, WeightingError};

pub const EXIT_HAS: i32 = 0;
pub const EXIT_LACKS: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Which procedure settled a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Recognizer,
    TreeDp,
    Parity,
    LocalMax,
    Repair,
    Oracle,
    None,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Recognizer => "recognizer",
            Method::TreeDp => "tree-dp",
            Method::Parity => "parity",
            Method::LocalMax => "local-max",
            Method::Repair => "repair",
            Method::Oracle => "oracle",
            Method::None => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub pair: WeightPair,
    /// `None` when undecided within the budget.
    pub has_property: Option<bool>,
    pub method: Method,
    /// Text form of a proper weighting.
    pub witness: Option<String>,
    /// Cactus certificate, or a short account of why a tree is bad.
    pub certificate: Option<String>,
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self.has_property {
            Some(true) => EXIT_HAS,
            Some(false) => EXIT_LACKS,
            None => EXIT_UNKNOWN,
        }
    }

    fn found(pair: WeightPair, method: Method, w: &Weighting<'_>) -> Self {
        debug_assert!(w.is_proper());
        Verdict {
            pair,
            has_property: Some(true),
            method,
            witness: Some(w.to_text()),
            certificate: None,
        }
    }

    fn lacks(pair: WeightPair, method: Method, certificate: Option<String>) -> Self {
        Verdict {
            pair,
            has_property: Some(false),
            method,
            witness: None,
            certificate,
        }
    }

    /// `key: value` lines; multi-line values are indented.
    pub fn to_record(&self) -> String {
        let mut out = format!("pair: {},{}\n", self.pair.a(), self.pair.b());
        let has = match self.has_property {
            Some(true) => "yes",
            Some(false) => "no",
            None => "unknown",
        };
        out.push_str(&format!("has_property: {has}\nmethod: {}\n", self.method.name()));
        for (key, body) in [("witness", &self.witness), ("certificate", &self.certificate)] {
            if let Some(text) = body {
                out.push_str(key);
                out.push_str(":\n");
                for line in text.lines() {
                    out.push_str("  ");
                    out.push_str(line);
                    out.push('\n');
                }
            }
        }
        out
    }
}

/// Options shared by the deciding procedures.
#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub budget: usize,
    pub seed: u64,
    /// Local-search steps per copy before giving up.
    pub repair_effort: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            budget: crate::weighting::DEFAULT_EDGE_BUDGET,
            seed: 0,
            repair_effort: 40,
        }
    }
}

/// Pairs for which the odd multi-cactus test decides the bridgeless case.
fn recognizer_decides(pair: WeightPair) -> bool {
    pair.zero_based().is_some() || pair == WeightPair::ONE_TWO || pair == WeightPair::new(2, 1).unwrap()
}

pub fn run_classify(g: &MultiGraph, pair: WeightPair, opts: &ClassifyOptions) -> Verdict {
    if g.n() == 0 || g.pair_count() == 0 {
        // no adjacent pairs, nothing to distinguish
        return Verdict::found(pair, Method::Parity, &Weighting::uniform(g, pair));
    }
    if g.is_simple() && g.is_tree() {
        if let Some(v) = tree_verdict(g, pair) {
            return v;
        }
    }
    let bipartite = g.bipartition().ok();
    let connected = g.is_connected();
    if connected && bipartite.is_some() && g.bridges().is_empty() && recognizer_decides(pair) {
        if let Some(cert) = recognize(g) {
            return Verdict::lacks(pair, Method::Recognizer, Some(cert.to_text()));
        }
    }
    if connected {
        if let Some(w) = parity_witness(g, pair) {
            return Verdict::found(pair, Method::Parity, &w);
        }
        if pair.zero_based().is_some() {
            if let Some(w) = local_max_witness(g, pair) {
                return Verdict::found(pair, Method::LocalMax, &w);
            }
        }
    }
    if g.copy_count() <= opts.budget {
        return oracle_verdict(g, pair, opts.budget);
    }
    if let Some(w) = repair(g, pair, opts) {
        return Verdict::found(pair, Method::Repair, &w);
    }
    Verdict {
        pair,
        has_property: None,
        method: Method::None,
        witness: None,
        certificate: None,
    }
}

fn tree_verdict(t: &MultiGraph, pair: WeightPair) -> Option<Verdict> {
    let x = pair.zero_based()?;
    Some(match classify_tree(t).expect("checked to be a tree") {
        TreeVerdict::Good(w) => {
            let w = w
                .scaled_from_zero_one(WeightPair::new(0, x).unwrap())
                .expect("zero-one");
            let w = if pair.a() == 0 { w } else { flip_orientation(&w, pair) };
            Verdict::found(pair, Method::TreeDp, &w)
        }
        TreeVerdict::Bad => Verdict::lacks(
            pair,
            Method::TreeDp,
            Some(format!(
                "tree on {} vertices: no feasible degree at the root of the table",
                t.n()
            )),
        ),
    })
}

/// Same weights, written with `pair`'s orientation (`{x,0}` instead of `{0,x}`).
fn flip_orientation<'g>(w: &Weighting<'g>, pair: WeightPair) -> Weighting<'g> {
    let flipped: Vec<bool> = w.graph().copies().map(|c| w.weight(c) == pair.b()).collect();
    Weighting::from_choices(w.graph(), pair, flipped).expect("same graph")
}

/// For weights of different parity on a connected bipartite graph: make one
/// side odd and the other even. Works whenever one of the two parity targets
/// has an even total.
pub fn parity_witness<'g>(g: &'g MultiGraph, pair: WeightPair) -> Option<Weighting<'g>> {
    if !pair.mixed_parity() {
        return None;
    }
    let bp = g.bipartition().ok()?;
    for odd_side in [Side::X, Side::Y] {
        // degree = a*deg + (b-a)*|F at v|, and b-a is odd
        let target = ParityTarget::from_fn(g.n(), |v| {
            let want = u8::from(bp.side(v) == odd_side);
            let base = (pair.a().rem_euclid(2) as usize * g.degree(v)) % 2;
            (want as usize + base) % 2 == 1
        });
        if !target.total_is_even() {
            continue;
        }
        let f = f_factor_mod2(g, &target).ok()?;
        let choices = g.copies().map(|c| f.contains(c)).collect();
        let w = Weighting::from_choices(g, pair, choices).expect("one choice per copy");
        if w.is_proper() {
            return Some(w);
        }
    }
    None
}

fn local_max_witness<'g>(g: &'g MultiGraph, pair: WeightPair) -> Option<Weighting<'g>> {
    let x = pair.zero_based()?;
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    order.into_iter().find_map(|w0| {
        let w = local_max_weighting(g, w0).ok()?;
        if !w.is_proper() {
            return None;
        }
        let w = w.scaled_from_zero_one(WeightPair::new(0, x).unwrap())?;
        Some(if pair.a() == 0 { w } else { flip_orientation(&w, pair) })
    })
}

fn oracle_verdict(g: &MultiGraph, pair: WeightPair, budget: usize) -> Verdict {
    match oracle_exists_proper(g, pair, &vec![0; g.n()], budget) {
        Ok(Some(w)) => Verdict::found(pair, Method::Oracle, &w),
        Ok(None) => Verdict::lacks(
            pair,
            Method::Oracle,
            Some(format!("exhaustive search over {} copies", g.copy_count())),
        ),
        Err(_) => Verdict {
            pair,
            has_property: None,
            method: Method::None,
            witness: None,
            certificate: None,
        },
    }
}

/// Seeded local search flipping single copies at conflicted vertices.
pub fn repair<'g>(g: &'g MultiGraph, pair: WeightPair, opts: &ClassifyOptions) -> Option<Weighting<'g>> {
    let mut rng = SplitMix64::new(opts.seed);
    let total = g.copy_count();
    let mut choice: Vec<bool> = (0..total).map(|_| rng.coin()).collect();
    let conflicts = |choice: &[bool]| {
        let w = Weighting::from_choices(g, pair, choice.to_vec()).expect("sizes match");
        w.conflicts().conflicts.len()
    };
    let mut current = conflicts(&choice);
    for _ in 0..opts.repair_effort * total.max(1) {
        if current == 0 {
            break;
        }
        let w = Weighting::from_choices(g, pair, choice.clone()).expect("sizes match");
        let report = w.conflicts();
        let &(u, v) = rng.pick(&report.conflicts);
        let at = if rng.coin() { u } else { v };
        let candidates: Vec<usize> = g.incident(at).iter().flat_map(|&(_, p)| g.copy_range(p)).collect();
        let mut best = (usize::MAX, candidates[0]);
        for &i in &candidates {
            choice[i] = !choice[i];
            let c = conflicts(&choice);
            choice[i] = !choice[i];
            if c < best.0 {
                best = (c, i);
            }
        }
        // accept sideways moves now and then to leave plateaus
        if best.0 < current || rng.below(4) == 0 {
            choice[best.1] = !choice[best.1];
            current = best.0;
        }
    }
    (current == 0).then(|| Weighting::from_choices(g, pair, choice).expect("sizes match"))
}

// ---- verify ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub degrees: Vec<i64>,
    pub conflicts: Vec<(usize, usize)>,
}

impl VerifyReport {
    pub fn exit_code(&self) -> i32 {
        if self.conflicts.is_empty() {
            EXIT_HAS
        } else {
            EXIT_LACKS
        }
    }
}

/// Checks a weighting given in text form, with optional increments.
pub fn run_verify(
    g: &MultiGraph,
    weighting: &str,
    increments: Option<Vec<u32>>,
) -> Result<VerifyReport, WeightingError> {
    let mut w = Weighting::parse(g, weighting)?;
    if let Some(inc) = increments {
        w = w.with_increments(inc)?;
    }
    Ok(VerifyReport {
        degrees: w.weighted_degrees(),
        conflicts: w.conflicts().conflicts,
    })
}

// ---- generate ----

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenerateRequest {
    Family(Family),
    /// Random odd multi-cactus with the given number of cycles.
    Cactus {
        cycles: usize,
        max_multiplicity: u32,
        seed: u64,
    },
    /// Construction in s-expression form, optionally checked against an
    /// expected class.
    Spec {
        text: String,
        expect: Option<StatusLabel>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum GenerateError {
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
    #[error(transparent)]
    Cactus(#[from] crate::cactus::CactusError),
    #[error(transparent)]
    Tree(#[from] crate::trees::TreeError),
    #[error("construction has class {found:?}, expected {expected:?}")]
    Expectation { expected: StatusLabel, found: StatusLabel },
}

pub fn run_generate(req: &GenerateRequest) -> Result<MultiGraph, GenerateError> {
    Ok(match req {
        GenerateRequest::Family(f) => f.build()?,
        GenerateRequest::Cactus {
            cycles,
            max_multiplicity,
            seed,
        } => {
            let mut rng = SplitMix64::new(*seed);
            let r = CactusRecipe::random(&mut rng, *cycles, &[6, 10, 14], *max_multiplicity);
            build_from_recipe(&r)?
        }
        GenerateRequest::Spec { text, expect } => {
            let spec: ConstructionSpec = text.parse()?;
            let c = construct(&spec)?;
            if let Some(e) = expect {
                if *e != c.class {
                    return Err(GenerateError::Expectation {
                        expected: *e,
                        found: c.class,
                    });
                }
            }
            c.graph
        }
    })
}

// ---- crosscheck ----

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrosscheckFamily {
    /// Every free tree up to `max_n` vertices.
    Trees { max_n: usize },
    /// Random connected bridgeless bipartite graphs with at most
    /// `max_copies` copies, one per seed.
    Bridgeless { seeds: u64, max_copies: usize },
    /// Random odd multi-cactus recipes: expand, recognize, rebuild.
    Recipes { seeds: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub family: String,
    pub instances: usize,
    pub agreements: usize,
    /// One line per disagreement, naming the instance.
    pub disagreements: Vec<String>,
}

impl CrosscheckReport {
    pub fn exit_code(&self) -> i32 {
        if self.disagreements.is_empty() {
            EXIT_HAS
        } else {
            EXIT_LACKS
        }
    }
}

/// Random connected bridgeless bipartite graph for seed `seed`, possibly with
/// doubled edges, within `max_copies` copies.
pub fn bridgeless_instance(seed: u64, max_copies: usize) -> MultiGraph {
    let mut rng = SplitMix64::new(seed);
    let max_copies = max_copies.max(4);
    loop {
        let half = rng.range(2, (max_copies / 2).clamp(2, 8));
        let n = 2 * half;
        let extra = rng.below(max_copies.saturating_sub(n).min(half * half - n) + 1);
        let m = n + extra;
        let Ok(g) = (Family::RandomBridgelessBipartite {
            n,
            m,
            seed: rng.next_u64(),
        })
        .build() else {
            continue;
        };
        let room = max_copies - g.copy_count().min(max_copies);
        let bumps = rng.below(room.min(3) + 1);
        let mut edges: Vec<(usize, usize, u32)> = g.triples().collect();
        for _ in 0..bumps {
            let i = rng.below(edges.len());
            edges[i].2 += 1;
        }
        return MultiGraph::new(g.n(), edges).expect("same pairs");
    }
}

pub fn run_crosscheck(family: &CrosscheckFamily, budget: usize) -> CrosscheckReport {
    let results: Vec<Option<String>> = match family {
        CrosscheckFamily::Trees { max_n } => {
            let trees: Vec<MultiGraph> = (1..=*max_n)
                .flat_map(|n| enumerate_trees(n).expect("order in range"))
                .collect();
            trees
                .par_iter()
                .map(|t| {
                    let dp = classify_tree(t).expect("tree").is_bad();
                    let oracle = oracle_exists_proper(t, WeightPair::ZERO_ONE, &vec![0; t.n()], budget)
                        .ok()?
                        .is_none();
                    (dp != oracle).then(|| {
                        format!(
                            "tree {}: table says bad={dp}, oracle says bad={oracle}",
                            crate::trees::free_tree_code(t)
                        )
                    })
                })
                .collect()
        }
        CrosscheckFamily::Bridgeless { seeds, max_copies } => (0..*seeds)
            .into_par_iter()
            .map(|seed| {
                let g = bridgeless_instance(seed, *max_copies);
                let omc = recognize(&g).is_some();
                let bad = oracle_exists_proper(&g, WeightPair::ZERO_ONE, &vec![0; g.n()], budget)
                    .ok()?
                    .is_none();
                (omc != bad).then(|| format!("seed {seed}: recognizer={omc}, oracle bad={bad}"))
            })
            .collect(),
        CrosscheckFamily::Recipes { seeds } => (0..*seeds)
            .into_par_iter()
            .map(|seed| {
                let mut rng = SplitMix64::new(seed);
                let r = {
                    let k = 1 + rng.below(6);
                    CactusRecipe::random(&mut rng, k, &[6, 10, 14], 3)
                };
                let g = build_from_recipe(&r).expect("random recipes are valid");
                match recognize(&g) {
                    Some(cert) if cert.verify(&g) => None,
                    Some(_) => Some(format!("seed {seed}: certificate does not rebuild the graph")),
                    None => Some(format!("seed {seed}: recipe graph not recognised")),
                }
            })
            .collect(),
    };
    let name = match family {
        CrosscheckFamily::Trees { .. } => "trees",
        CrosscheckFamily::Bridgeless { .. } => "bridgeless",
        CrosscheckFamily::Recipes { .. } => "recipes",
    };
    let instances = results.len();
    let disagreements: Vec<String> = results.into_iter().flatten().collect();
    CrosscheckReport {
        family: name.to_string(),
        instances,
        agreements: instances - disagreements.len(),
        disagreements,
    }
}

/// Reads a graph from edge-list text, mapping errors to a message.
pub fn read_graph(text: &str) -> Result<MultiGraph, String> {
    parse_edge_list(text).map_err(|e| e.to_string())
}
