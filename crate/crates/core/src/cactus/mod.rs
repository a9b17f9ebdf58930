//! Odd multi-cacti.
//!
//! An odd multi-cactus is `K2` (any multiplicity) or a tree-like pasting of
//! cycles of length `2 (mod 4)` along green edges, where each cycle's edges
//! alternate green and red and only green edges may be multiplied.
//!
//! A [`CactusRecipe`] numbers the edges of every cycle `0..len` with edge `k`
//! joining local vertices `k` and `k + 1`. Even indices are green. A child
//! cycle's edge 0 is identified with a green edge of its parent: its local
//! vertices 0 and 1 are the parent's local vertices `paste` and `paste + 1`,
//! and its remaining `len - 2` vertices are new.

mod pattern;
mod recognize;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{MultiGraph, SplitMix64};

pub use pattern::{cactus_weighting, has_cactus_pattern};
pub use recognize::{recognize, red_green_colourings, CactusCertificate, Colouring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CactusError {
    #[error("recipe has no cycles")]
    Empty,
    #[error("cycle {cycle}: length {length} is not 2 mod 4 (or below 6)")]
    InvalidLength { cycle: usize, length: usize },
    #[error("cycle {cycle}: parent {parent} is not an earlier cycle")]
    NoSuchParent { cycle: usize, parent: usize },
    #[error("cycle {0} has no parent; only cycle 0 is a root")]
    MissingParent(usize),
    #[error("cycle {cycle}: paste edge {edge} is not a green edge of the parent")]
    NonGreenPaste { cycle: usize, edge: usize },
    #[error("cycle {cycle}: edge {edge} is red or out of range and cannot be multiplied")]
    NotGreen { cycle: usize, edge: usize },
    #[error("zero multiplicity")]
    ZeroMultiplicity,
    #[error("cycle {cycle}: shared edge gets multiplicities {first} and {second}")]
    ConflictingMultiplicity { cycle: usize, first: u32, second: u32 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph is not an odd multi-cactus")]
    NotOMC,
    #[error("graph is not a simple odd multi-cactus")]
    NotSimpleOMC,
    #[error("K2 has no weighting of the required form")]
    IsK2,
    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),
}

/// Where a non-root cycle hangs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Attachment {
    pub parent: usize,
    /// Green edge index in the parent cycle.
    pub edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSpec {
    pub length: usize,
    pub attach: Option<Attachment>,
    /// Green edge index -> multiplicity; absent means 1.
    pub multiplicities: BTreeMap<usize, u32>,
}

impl CycleSpec {
    pub fn root(length: usize) -> Self {
        CycleSpec {
            length,
            attach: None,
            multiplicities: BTreeMap::new(),
        }
    }

    pub fn child(length: usize, parent: usize, edge: usize) -> Self {
        CycleSpec {
            length,
            attach: Some(Attachment { parent, edge }),
            multiplicities: BTreeMap::new(),
        }
    }

    pub fn with_multiplicity(mut self, edge: usize, k: u32) -> Self {
        self.multiplicities.insert(edge, k);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CactusRecipe {
    /// Two vertices joined by `multiplicity` parallel edges.
    Edge { multiplicity: u32 },
    /// Cycle 0 is the root; every other cycle names an earlier parent.
    Cycles(Vec<CycleSpec>),
}

/// A recipe laid out on concrete vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub graph: MultiGraph,
    /// Vertices of each cycle in local order.
    pub cycles: Vec<Vec<usize>>,
    /// Normalised green pairs.
    pub green: Vec<(usize, usize)>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl CactusRecipe {
    pub fn single(length: usize) -> Self {
        CactusRecipe::Cycles(vec![CycleSpec::root(length)])
    }

    pub fn validate(&self) -> Result<(), CactusError> {
        self.expand().map(|_| ())
    }

    pub fn expand(&self) -> Result<Expansion, CactusError> {
        let cycles = match self {
            CactusRecipe::Edge { multiplicity } => {
                if *multiplicity == 0 {
                    return Err(CactusError::ZeroMultiplicity);
                }
                let graph = MultiGraph::new(2, [(0, 1, *multiplicity)]).expect("valid");
                return Ok(Expansion {
                    graph,
                    cycles: Vec::new(),
                    green: vec![(0, 1)],
                });
            }
            CactusRecipe::Cycles(c) => c,
        };
        if cycles.is_empty() {
            return Err(CactusError::Empty);
        }
        let mut n = 0;
        let mut layout: Vec<Vec<usize>> = Vec::with_capacity(cycles.len());
        // pair -> declared multiplicity
        let mut mult: BTreeMap<(usize, usize), Option<u32>> = BTreeMap::new();
        let mut green = std::collections::BTreeSet::new();
        for (i, c) in cycles.iter().enumerate() {
            if c.length < 6 || c.length % 4 != 2 {
                return Err(CactusError::InvalidLength {
                    cycle: i,
                    length: c.length,
                });
            }
            let mut verts = Vec::with_capacity(c.length);
            match c.attach {
                None if i == 0 => {}
                None => return Err(CactusError::MissingParent(i)),
                Some(a) if a.parent >= i => {
                    return Err(CactusError::NoSuchParent {
                        cycle: i,
                        parent: a.parent,
                    })
                }
                Some(a) => {
                    let parent = &layout[a.parent];
                    if a.edge % 2 == 1 || a.edge >= parent.len() {
                        return Err(CactusError::NonGreenPaste { cycle: i, edge: a.edge });
                    }
                    verts.push(parent[a.edge]);
                    verts.push(parent[(a.edge + 1) % parent.len()]);
                }
            }
            while verts.len() < c.length {
                verts.push(n);
                n += 1;
            }
            for (&e, &k) in &c.multiplicities {
                if e % 2 == 1 || e >= c.length {
                    return Err(CactusError::NotGreen { cycle: i, edge: e });
                }
                if k == 0 {
                    return Err(CactusError::ZeroMultiplicity);
                }
            }
            for e in 0..c.length {
                let p = key(verts[e], verts[(e + 1) % c.length]);
                if e % 2 == 0 {
                    green.insert(p);
                }
                let declared = c.multiplicities.get(&e).copied();
                let slot = mult.entry(p).or_insert(None);
                match (*slot, declared) {
                    (Some(first), Some(second)) if first != second => {
                        return Err(CactusError::ConflictingMultiplicity {
                            cycle: i,
                            first,
                            second,
                        })
                    }
                    (None, Some(d)) => *slot = Some(d),
                    _ => {}
                }
            }
            layout.push(verts);
        }
        let graph =
            MultiGraph::new(n, mult.iter().map(|(&(u, v), m)| (u, v, m.unwrap_or(1)))).expect("recipe edges are valid");
        Ok(Expansion {
            graph,
            cycles: layout,
            green: green.into_iter().collect(),
        })
    }

    /// Number of vertices of the expanded graph, without building it.
    pub fn vertex_count(&self) -> usize {
        match self {
            CactusRecipe::Edge { .. } => 2,
            CactusRecipe::Cycles(c) => c
                .iter()
                .enumerate()
                .map(|(i, c)| if i == 0 { c.length } else { c.length - 2 })
                .sum(),
        }
    }

    pub fn is_simple(&self) -> bool {
        match self {
            CactusRecipe::Edge { multiplicity } => *multiplicity == 1,
            CactusRecipe::Cycles(c) => c.iter().all(|c| c.multiplicities.values().all(|&k| k == 1)),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            CactusRecipe::Edge { multiplicity } => writeln!(out, "e {multiplicity}").unwrap(),
            CactusRecipe::Cycles(cycles) => {
                for c in cycles {
                    match c.attach {
                        None => writeln!(out, "c {} parent=none", c.length).unwrap(),
                        Some(a) => writeln!(out, "c {} parent={} paste={}", c.length, a.parent, a.edge).unwrap(),
                    }
                    for (e, k) in &c.multiplicities {
                        writeln!(out, "g {e} {k}").unwrap();
                    }
                }
            }
        }
        out
    }

    /// Parses the line format written by [`CactusRecipe::to_text`]:
    ///
    /// ```text
    /// c <len> parent=<id|none> [paste=<green edge of parent>]
    /// g <edge> <multiplicity>      (applies to the latest cycle)
    /// e <multiplicity>             (K2 instead of cycles)
    /// ```
    ///
    /// The result is validated.
    pub fn parse(text: &str) -> Result<Self, CactusError> {
        let mut cycles: Vec<CycleSpec> = Vec::new();
        let mut edge = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let bad = |msg: &str| CactusError::Parse {
                line,
                msg: msg.to_string(),
            };
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = t.split_whitespace().collect();
            let num = |s: &str| s.parse::<usize>().map_err(|_| bad(&format!("`{s}` is not a number")));
            match toks[0] {
                "e" => {
                    if toks.len() != 2 || edge.is_some() || !cycles.is_empty() {
                        return Err(bad("`e <multiplicity>` must be the only entry"));
                    }
                    edge = Some(num(toks[1])? as u32);
                }
                "c" => {
                    if edge.is_some() {
                        return Err(bad("cycles cannot follow an `e` line"));
                    }
                    if toks.len() < 3 || toks.len() > 4 {
                        return Err(bad("expected `c <len> parent=<id|none> [paste=<edge>]`"));
                    }
                    let length = num(toks[1])?;
                    let parent = toks[2]
                        .strip_prefix("parent=")
                        .ok_or_else(|| bad("missing `parent=`"))?;
                    let paste = match toks.get(3) {
                        Some(p) => {
                            let v = p.strip_prefix("paste=").ok_or_else(|| bad("missing `paste=`"))?;
                            if v == "none" {
                                None
                            } else {
                                Some(num(v)?)
                            }
                        }
                        None => None,
                    };
                    let attach = match (parent, paste) {
                        ("none", None) => None,
                        ("none", Some(_)) => return Err(bad("a root cycle has no paste edge")),
                        (p, Some(e)) => Some(Attachment {
                            parent: num(p)?,
                            edge: e,
                        }),
                        (_, None) => return Err(bad("a child cycle needs `paste=`")),
                    };
                    cycles.push(CycleSpec {
                        length,
                        attach,
                        multiplicities: BTreeMap::new(),
                    });
                }
                "g" => {
                    let c = cycles.last_mut().ok_or_else(|| bad("`g` before any cycle"))?;
                    if toks.len() != 3 {
                        return Err(bad("expected `g <edge> <multiplicity>`"));
                    }
                    let e = num(toks[1])?;
                    let k = num(toks[2])? as u32;
                    if c.multiplicities.insert(e, k).is_some() {
                        return Err(bad("edge listed twice"));
                    }
                }
                other => return Err(bad(&format!("unknown line kind `{other}`"))),
            }
        }
        let recipe = match edge {
            Some(multiplicity) => CactusRecipe::Edge { multiplicity },
            None => CactusRecipe::Cycles(cycles),
        };
        recipe.validate()?;
        Ok(recipe)
    }

    /// Random valid recipe: `cycles` cycles with lengths drawn from `lengths`,
    /// each pasted on a uniform green edge of a uniform earlier cycle. Each
    /// green edge is multiplied with probability 1/3 to a value in
    /// `2..=max_multiplicity` (never when that bound is 1).
    pub fn random(rng: &mut SplitMix64, cycles: usize, lengths: &[usize], max_multiplicity: u32) -> Self {
        assert!(cycles >= 1 && !lengths.is_empty());
        let mut out: Vec<CycleSpec> = Vec::with_capacity(cycles);
        for i in 0..cycles {
            let length = *rng.pick(lengths);
            let mut c = if i == 0 {
                CycleSpec::root(length)
            } else {
                let parent = rng.below(i);
                let edge = 2 * rng.below(out[parent].length / 2);
                CycleSpec::child(length, parent, edge)
            };
            // edge 0 of a child belongs to the parent
            let first = if i == 0 { 0 } else { 2 };
            if max_multiplicity >= 2 {
                for e in (first..length).step_by(2) {
                    if rng.below(3) == 0 {
                        c.multiplicities
                            .insert(e, rng.range(2, max_multiplicity as usize) as u32);
                    }
                }
            }
            out.push(c);
        }
        CactusRecipe::Cycles(out)
    }
}

/// Expands a recipe into its multigraph.
pub fn build_from_recipe(r: &CactusRecipe) -> Result<MultiGraph, CactusError> {
    r.expand().map(|e| e.graph)
}
