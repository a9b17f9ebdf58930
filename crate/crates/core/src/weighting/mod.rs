//! Edge weightings with two weights, weighted degrees and conflicts.
//!
//! Each parallel copy of a pair is weighted independently. A vertex may carry
//! a non-negative increment that is added to its weighted degree, which models
//! a pre-assigned weight on the vertex.

mod oracle;

pub use oracle::{achievable_degree_set, oracle_exists_proper, ProperSearch, SearchStats, DEFAULT_EDGE_BUDGET};

use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{EdgeCopy, MultiGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightingError {
    #[error("weights of a pair must differ (got {0} twice)")]
    PairNotDistinct(i64),
    #[error("expected {expected} choices, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("expected {expected} increments, got {found}")]
    IncrementsLength { expected: usize, found: usize },
    #[error("walk is empty")]
    EmptyWalk,
    #[error("walk does not return to its start vertex")]
    WalkNotClosed,
    #[error("walk uses edge copy {0:?} more than once")]
    WalkRepeatsCopy(EdgeCopy),
    #[error("walk step {step} is not incident to the current vertex")]
    WalkNotIncident { step: usize },
    #[error("edge copy {0:?} does not exist")]
    NoSuchCopy(EdgeCopy),
    #[error("{copies} edge copies exceed the search budget of {budget}")]
    BudgetExceeded { copies: usize, budget: usize },
    #[error("vertex {0} out of range")]
    NoSuchVertex(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("weighting does not cover edge copy {0:?}")]
    MissingCopy(EdgeCopy),
}

/// Two distinct integer weights `{a, b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct WeightPair {
    a: i64,
    b: i64,
}

impl WeightPair {
    pub const ZERO_ONE: WeightPair = WeightPair { a: 0, b: 1 };
    pub const ONE_TWO: WeightPair = WeightPair { a: 1, b: 2 };

    pub fn new(a: i64, b: i64) -> Result<Self, WeightingError> {
        if a == b {
            Err(WeightingError::PairNotDistinct(a))
        } else {
            Ok(WeightPair { a, b })
        }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// Weight selected by a choice bit (`false` selects `a`).
    pub fn value(&self, high: bool) -> i64 {
        if high {
            self.b
        } else {
            self.a
        }
    }

    /// `{0, x}` for some non-zero `x`, in either order.
    pub fn zero_based(&self) -> Option<i64> {
        match (self.a, self.b) {
            (0, x) | (x, 0) => Some(x),
            _ => None,
        }
    }

    /// Weights of different parity.
    pub fn mixed_parity(&self) -> bool {
        (self.a - self.b).rem_euclid(2) == 1
    }
}

impl fmt::Display for WeightPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

/// Conflicting edges of a weighting, as sorted vertex pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ConflictReport {
    /// Adjacent vertices with equal weighted degree.
    pub conflicts: Vec<(usize, usize)>,
    /// Adjacent vertices with equal weighted-degree parity.
    pub parity_conflicts: Vec<(usize, usize)>,
}

impl ConflictReport {
    pub fn is_proper(&self) -> bool {
        self.conflicts.is_empty()
    }
}

/// Closed walk given by a start vertex and a sequence of edge copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedWalk {
    pub start: usize,
    pub copies: Vec<EdgeCopy>,
}

impl ClosedWalk {
    /// Walk through `vertices` (first vertex repeated at the end), using copy 0
    /// of each consecutive pair.
    pub fn through(g: &MultiGraph, vertices: &[usize]) -> Option<ClosedWalk> {
        let copies = vertices
            .windows(2)
            .map(|w| g.pair_index(w[0], w[1]).map(|pair| EdgeCopy { pair, copy: 0 }))
            .collect::<Option<Vec<_>>>()?;
        Some(ClosedWalk {
            start: *vertices.first()?,
            copies,
        })
    }
}

/// A weighting of every parallel copy of `graph` with weights from `pair`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weighting<'g> {
    graph: &'g MultiGraph,
    pair: WeightPair,
    // indexed by flat copy index; true selects pair.b
    choice: Vec<bool>,
    increments: Vec<u32>,
}

impl<'g> Weighting<'g> {
    /// Every copy gets weight `pair.a`.
    pub fn uniform(graph: &'g MultiGraph, pair: WeightPair) -> Self {
        Weighting {
            graph,
            pair,
            choice: vec![false; graph.copy_count()],
            increments: vec![0; graph.n()],
        }
    }

    pub fn from_choices(graph: &'g MultiGraph, pair: WeightPair, choice: Vec<bool>) -> Result<Self, WeightingError> {
        if choice.len() != graph.copy_count() {
            return Err(WeightingError::LengthMismatch {
                expected: graph.copy_count(),
                found: choice.len(),
            });
        }
        Ok(Weighting {
            graph,
            pair,
            choice,
            increments: vec![0; graph.n()],
        })
    }

    /// `{0,1}`-weighting with weight 1 exactly on `ones`.
    pub fn zero_one(graph: &'g MultiGraph, ones: impl IntoIterator<Item = EdgeCopy>) -> Result<Self, WeightingError> {
        let mut w = Weighting::uniform(graph, WeightPair::ZERO_ONE);
        for c in ones {
            w.set(c, true)?;
        }
        Ok(w)
    }

    pub fn with_increments(mut self, increments: Vec<u32>) -> Result<Self, WeightingError> {
        if increments.len() != self.graph.n() {
            return Err(WeightingError::IncrementsLength {
                expected: self.graph.n(),
                found: increments.len(),
            });
        }
        self.increments = increments;
        Ok(self)
    }

    pub fn graph(&self) -> &'g MultiGraph {
        self.graph
    }

    pub fn pair(&self) -> WeightPair {
        self.pair
    }

    pub fn increments(&self) -> &[u32] {
        &self.increments
    }

    pub fn choices(&self) -> &[bool] {
        &self.choice
    }

    pub fn choice(&self, c: EdgeCopy) -> bool {
        self.choice[self.graph.copy_index(c)]
    }

    pub fn weight(&self, c: EdgeCopy) -> i64 {
        self.pair.value(self.choice(c))
    }

    pub fn set(&mut self, c: EdgeCopy, high: bool) -> Result<(), WeightingError> {
        if !self.graph.contains_copy(c) {
            return Err(WeightingError::NoSuchCopy(c));
        }
        let i = self.graph.copy_index(c);
        self.choice[i] = high;
        Ok(())
    }

    /// Same choices read under another weight pair.
    pub fn with_pair(&self, pair: WeightPair) -> Weighting<'g> {
        Weighting { pair, ..self.clone() }
    }

    /// Re-expresses a `{0,1}`-weighting under `{0,x}` or `{x,0}`, keeping
    /// every weight-1 copy at the non-zero weight.
    pub fn scaled_from_zero_one(&self, target: WeightPair) -> Option<Weighting<'g>> {
        if self.pair != WeightPair::ZERO_ONE {
            return None;
        }
        target.zero_based()?;
        let flip = target.b() == 0;
        Some(Weighting {
            pair: target,
            choice: self.choice.iter().map(|&c| c != flip).collect(),
            ..self.clone()
        })
    }

    pub fn weighted_degree(&self, v: usize) -> i64 {
        let g = self.graph;
        let mut total = self.increments[v] as i64;
        for &(_, pair) in g.incident(v) {
            for i in g.copy_range(pair) {
                total += self.pair.value(self.choice[i]);
            }
        }
        total
    }

    pub fn weighted_degrees(&self) -> Vec<i64> {
        let g = self.graph;
        let mut deg: Vec<i64> = self.increments.iter().map(|&x| x as i64).collect();
        for (pair, p) in g.pairs().iter().enumerate() {
            let s: i64 = g.copy_range(pair).map(|i| self.pair.value(self.choice[i])).sum();
            deg[p.u] += s;
            deg[p.v] += s;
        }
        deg
    }

    pub fn conflicts(&self) -> ConflictReport {
        let deg = self.weighted_degrees();
        let mut report = ConflictReport::default();
        for p in self.graph.pairs() {
            if deg[p.u] == deg[p.v] {
                report.conflicts.push((p.u, p.v));
            }
            if (deg[p.u] - deg[p.v]).rem_euclid(2) == 0 {
                report.parity_conflicts.push((p.u, p.v));
            }
        }
        report
    }

    pub fn is_proper(&self) -> bool {
        let deg = self.weighted_degrees();
        self.graph.pairs().iter().all(|p| deg[p.u] != deg[p.v])
    }

    /// Flips every copy on a closed walk between the two weights.
    pub fn cycle_swap(&self, walk: &ClosedWalk) -> Result<Weighting<'g>, WeightingError> {
        let g = self.graph;
        if walk.copies.is_empty() {
            return Err(WeightingError::EmptyWalk);
        }
        if walk.start >= g.n() {
            return Err(WeightingError::NoSuchVertex(walk.start));
        }
        let mut seen = std::collections::HashSet::new();
        let mut cur = walk.start;
        let mut out = self.clone();
        for (step, &c) in walk.copies.iter().enumerate() {
            if !g.contains_copy(c) {
                return Err(WeightingError::NoSuchCopy(c));
            }
            if !seen.insert(c) {
                return Err(WeightingError::WalkRepeatsCopy(c));
            }
            let (u, v) = g.endpoints(c);
            cur = if cur == u {
                v
            } else if cur == v {
                u
            } else {
                return Err(WeightingError::WalkNotIncident { step });
            };
            let i = g.copy_index(c);
            out.choice[i] = !out.choice[i];
        }
        if cur != walk.start {
            return Err(WeightingError::WalkNotClosed);
        }
        Ok(out)
    }

    /// Text form: `pair a b` followed by `u v copy w` per copy.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "pair {} {}", self.pair.a, self.pair.b).unwrap();
        for c in self.graph.copies() {
            let (u, v) = self.graph.endpoints(c);
            writeln!(out, "{} {} {} {}", u, v, c.copy, self.weight(c)).unwrap();
        }
        out
    }

    /// Parses the text form against `graph`. Every copy must appear exactly
    /// once with one of the two weights.
    pub fn parse(graph: &'g MultiGraph, text: &str) -> Result<Self, WeightingError> {
        let perr = |line: usize, msg: String| WeightingError::Parse { line, msg };
        let mut pair = None;
        let mut assigned: Vec<Option<bool>> = vec![None; graph.copy_count()];
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = t.split_whitespace().collect();
            let ints = |s: &[&str]| -> Result<Vec<i64>, WeightingError> {
                s.iter()
                    .map(|x| {
                        x.parse::<i64>()
                            .map_err(|_| perr(line, format!("`{x}` is not an integer")))
                    })
                    .collect()
            };
            match (pair, toks.first()) {
                (None, Some(&"pair")) if toks.len() == 3 => {
                    let v = ints(&toks[1..])?;
                    pair = Some(WeightPair::new(v[0], v[1]).map_err(|e| perr(line, e.to_string()))?);
                }
                (None, _) => return Err(perr(line, "expected `pair a b`".into())),
                (Some(p), _) => {
                    if toks.len() != 4 {
                        return Err(perr(line, "expected `u v copy w`".into()));
                    }
                    let v = ints(&toks)?;
                    if v[..3].iter().any(|&x| x < 0) {
                        return Err(perr(line, "negative vertex or copy index".into()));
                    }
                    let (a, b, copy, w) = (v[0] as usize, v[1] as usize, v[2] as u32, v[3]);
                    let pair_idx = graph
                        .pair_index(a, b)
                        .filter(|_| a < graph.n() && b < graph.n() && a != b)
                        .ok_or_else(|| perr(line, format!("no edge {{{a}, {b}}}")))?;
                    let c = EdgeCopy { pair: pair_idx, copy };
                    if !graph.contains_copy(c) {
                        return Err(perr(line, format!("edge {{{a}, {b}}} has no copy {copy}")));
                    }
                    let high = if w == p.b {
                        true
                    } else if w == p.a {
                        false
                    } else {
                        return Err(perr(line, format!("weight {w} is not in {p}")));
                    };
                    let slot = &mut assigned[graph.copy_index(c)];
                    if slot.is_some() {
                        return Err(perr(line, format!("copy {copy} of {{{a}, {b}}} assigned twice")));
                    }
                    *slot = Some(high);
                }
            }
        }
        let pair = pair.ok_or_else(|| perr(1, "missing `pair a b`".into()))?;
        let choice = assigned
            .iter()
            .enumerate()
            .map(|(i, c)| c.ok_or(WeightingError::MissingCopy(graph.copy_at(i))))
            .collect::<Result<Vec<_>, _>>()?;
        Weighting::from_choices(graph, pair, choice)
    }
}
