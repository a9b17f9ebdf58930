//! Exhaustive search over all two-valued weightings.
//!
//! Copies are assigned in canonical order, weight `a` before weight `b`, so the
//! first proper weighting found is the lexicographically smallest choice
//! vector. Degrees are updated incrementally and an adjacent pair is checked
//! as soon as the last copy touching either endpoint has been assigned, which
//! prunes every branch that already contains a conflict.

use std::collections::BTreeSet;

use super::{WeightPair, Weighting, WeightingError};
use crate::graph::MultiGraph;

/// Default limit on the number of edge copies the oracle will enumerate.
pub const DEFAULT_EDGE_BUDGET: usize = 22;

/// Counters from one search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Partial assignments visited (one per copy decision).
    pub nodes: u64,
}

/// Configured exhaustive search on one graph.
#[derive(Debug, Clone)]
pub struct ProperSearch<'g> {
    graph: &'g MultiGraph,
    pair: WeightPair,
    increments: Vec<u32>,
    budget: usize,
}

struct Plan {
    // endpoints per flat copy index
    ends: Vec<(usize, usize)>,
    // adjacent pairs that become checkable once copy i is assigned
    checks: Vec<Vec<(usize, usize)>>,
    // vertex whose final degree is fixed once copy i is assigned
    settles: Vec<Vec<usize>>,
}

impl<'g> ProperSearch<'g> {
    pub fn new(graph: &'g MultiGraph, pair: WeightPair) -> Self {
        ProperSearch {
            graph,
            pair,
            increments: vec![0; graph.n()],
            budget: DEFAULT_EDGE_BUDGET,
        }
    }

    pub fn increments(mut self, increments: &[u32]) -> Result<Self, WeightingError> {
        if increments.len() != self.graph.n() {
            return Err(WeightingError::IncrementsLength {
                expected: self.graph.n(),
                found: increments.len(),
            });
        }
        self.increments = increments.to_vec();
        Ok(self)
    }

    pub fn budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    fn check_budget(&self) -> Result<(), WeightingError> {
        let copies = self.graph.copy_count();
        if copies > self.budget {
            Err(WeightingError::BudgetExceeded {
                copies,
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    fn plan(&self) -> Plan {
        let g = self.graph;
        let total = g.copy_count();
        let mut ends = Vec::with_capacity(total);
        let mut last = vec![None::<usize>; g.n()];
        for c in g.copies() {
            let (u, v) = g.endpoints(c);
            let i = ends.len();
            last[u] = Some(i);
            last[v] = Some(i);
            ends.push((u, v));
        }
        let mut checks = vec![Vec::new(); total];
        for p in g.pairs() {
            let at = last[p.u].unwrap().max(last[p.v].unwrap());
            checks[at].push((p.u, p.v));
        }
        let mut settles = vec![Vec::new(); total];
        for (v, l) in last.iter().enumerate() {
            if let Some(i) = l {
                settles[*i].push(v);
            }
        }
        Plan { ends, checks, settles }
    }

    /// First proper weighting in lexicographic choice order.
    pub fn first(&self) -> Result<Option<Weighting<'g>>, WeightingError> {
        self.first_with_stats().map(|(w, _)| w)
    }

    pub fn first_with_stats(&self) -> Result<(Option<Weighting<'g>>, SearchStats), WeightingError> {
        self.check_budget()?;
        let mut run = Run::new(self, None);
        let found = run.descend(0);
        let w = found.then(|| {
            Weighting::from_choices(self.graph, self.pair, run.choice.clone())
                .and_then(|w| w.with_increments(self.increments.clone()))
                .expect("sizes match")
        });
        Ok((w, run.stats))
    }

    /// First proper weighting in which `v` ends with weighted degree `target`.
    pub fn first_with_degree(&self, v: usize, target: i64) -> Result<Option<Weighting<'g>>, WeightingError> {
        self.check_budget()?;
        if v >= self.graph.n() {
            return Err(WeightingError::NoSuchVertex(v));
        }
        if self.graph.degree(v) == 0 {
            let own = self.increments[v] as i64;
            return if own == target { self.first() } else { Ok(None) };
        }
        let mut run = Run::new(self, Some((v, target)));
        let found = run.descend(0);
        Ok(found.then(|| {
            Weighting::from_choices(self.graph, self.pair, run.choice.clone())
                .and_then(|w| w.with_increments(self.increments.clone()))
                .expect("sizes match")
        }))
    }

    /// All weighted degrees `v` takes over proper weightings.
    pub fn degree_set(&self, v: usize) -> Result<BTreeSet<i64>, WeightingError> {
        self.check_budget()?;
        if v >= self.graph.n() {
            return Err(WeightingError::NoSuchVertex(v));
        }
        let d = self.graph.degree(v) as i64;
        let base = self.increments[v] as i64;
        let mut out = BTreeSet::new();
        for highs in 0..=d {
            let target = base + self.pair.a() * (d - highs) + self.pair.b() * highs;
            if out.contains(&target) {
                continue;
            }
            if self.first_with_degree(v, target)?.is_some() {
                out.insert(target);
            }
        }
        Ok(out)
    }
}

struct Run {
    plan: Plan,
    pair: WeightPair,
    deg: Vec<i64>,
    choice: Vec<bool>,
    target: Option<(usize, i64)>,
    stats: SearchStats,
}

impl Run {
    fn new(search: &ProperSearch<'_>, target: Option<(usize, i64)>) -> Self {
        let plan = search.plan();
        let total = plan.ends.len();
        Run {
            plan,
            pair: search.pair,
            deg: search.increments.iter().map(|&x| x as i64).collect(),
            choice: vec![false; total],
            target,
            stats: SearchStats::default(),
        }
    }

    fn consistent(&self, i: usize) -> bool {
        if let Some((v, t)) = self.target {
            if self.plan.settles[i].contains(&v) && self.deg[v] != t {
                return false;
            }
        }
        self.plan.checks[i].iter().all(|&(u, v)| self.deg[u] != self.deg[v])
    }

    fn descend(&mut self, i: usize) -> bool {
        if i == self.plan.ends.len() {
            return true;
        }
        let (u, v) = self.plan.ends[i];
        for high in [false, true] {
            self.stats.nodes += 1;
            let w = self.pair.value(high);
            self.deg[u] += w;
            self.deg[v] += w;
            self.choice[i] = high;
            if self.consistent(i) && self.descend(i + 1) {
                return true;
            }
            self.deg[u] -= w;
            self.deg[v] -= w;
        }
        self.choice[i] = false;
        false
    }
}

/// Lexicographically first proper weighting, if any.
pub fn oracle_exists_proper<'g>(
    g: &'g MultiGraph,
    pair: WeightPair,
    increments: &[u32],
    edge_budget: usize,
) -> Result<Option<Weighting<'g>>, WeightingError> {
    ProperSearch::new(g, pair)
        .increments(increments)?
        .budget(edge_budget)
        .first()
}

/// Weighted degrees of `v` over all proper weightings; empty exactly when no
/// proper weighting exists.
pub fn achievable_degree_set(
    g: &MultiGraph,
    v: usize,
    pair: WeightPair,
    increments: &[u32],
    edge_budget: usize,
) -> Result<BTreeSet<i64>, WeightingError> {
    ProperSearch::new(g, pair)
        .increments(increments)?
        .budget(edge_budget)
        .degree_set(v)
}
