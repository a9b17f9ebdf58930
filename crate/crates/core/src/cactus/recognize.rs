//! Recognition by peeling.
//!
//! A leaf cycle of an odd multi-cactus shows up as a chain `u = x0, .., xL = v`
//! of vertices with two distinct neighbours each, `L = 1 (mod 4)`, whose ends
//! are adjacent. Its odd-position edges are red, so simple. Deleting the
//! internal vertices leaves an odd multi-cactus in which `uv` is green.
//! Peeling is not assumed to be confluent: the search backtracks over
//! candidate chains and remembers failed states, keyed on the surviving
//! vertices and the pairs that must stay green.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use super::{key, CactusError, CactusRecipe, CycleSpec};
use crate::graph::MultiGraph;

type PairKey = (usize, usize);

/// A recipe whose vertices are placed on a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CactusCertificate {
    pub recipe: CactusRecipe,
    /// Recipe vertex `i` is host vertex `vertex_map[i]`.
    pub vertex_map: Vec<usize>,
}

impl CactusCertificate {
    /// The recipe expanded onto host vertex ids.
    pub fn graph(&self) -> Result<MultiGraph, CactusError> {
        let e = self.recipe.expand()?;
        if self.vertex_map.len() != e.graph.n() {
            return Err(CactusError::NoSuchVertex(self.vertex_map.len()));
        }
        Ok(e.graph.relabel(&self.vertex_map))
    }

    /// True when the recipe reproduces `host` exactly, same vertex ids.
    pub fn verify(&self, host: &MultiGraph) -> bool {
        let mut seen = vec![false; host.n()];
        let bijective = self.vertex_map.len() == host.n()
            && self
                .vertex_map
                .iter()
                .all(|&v| v < host.n() && !std::mem::replace(&mut seen[v], true));
        bijective && self.graph().is_ok_and(|g| &g == host)
    }

    /// Cycles on host vertices, in recipe order, green edges at even positions.
    pub fn host_cycles(&self) -> Vec<Vec<usize>> {
        let e = self.recipe.expand().expect("certificate recipes are valid");
        e.cycles
            .iter()
            .map(|c| c.iter().map(|&v| self.vertex_map[v]).collect())
            .collect()
    }

    pub fn green_pairs(&self) -> Vec<PairKey> {
        let e = self.recipe.expand().expect("certificate recipes are valid");
        let mut out: Vec<PairKey> = e
            .green
            .iter()
            .map(|&(u, v)| key(self.vertex_map[u], self.vertex_map[v]))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn colouring(&self, host: &MultiGraph) -> Colouring {
        Colouring::from_green(host, self.green_pairs().into_iter())
    }

    /// Recipe text followed by `map <host of 0> <host of 1> ...`.
    pub fn to_text(&self) -> String {
        let mut out = self.recipe.to_text();
        out.push_str("map");
        for v in &self.vertex_map {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
        out
    }

    pub fn parse(text: &str) -> Result<Self, CactusError> {
        let mut recipe_text = String::new();
        let mut map = None;
        for (idx, line) in text.lines().enumerate() {
            match line.trim().strip_prefix("map") {
                Some(rest) => {
                    let parsed: Result<Vec<usize>, _> = rest.split_whitespace().map(str::parse).collect();
                    map = Some(parsed.map_err(|_| CactusError::Parse {
                        line: idx + 1,
                        msg: "malformed vertex map".into(),
                    })?);
                }
                None => {
                    recipe_text.push_str(line);
                }
            }
            recipe_text.push('\n');
        }
        let vertex_map = map.ok_or(CactusError::Parse {
            line: text.lines().count().max(1),
            msg: "missing `map` line".into(),
        })?;
        Ok(CactusCertificate {
            recipe: CactusRecipe::parse(&recipe_text)?,
            vertex_map,
        })
    }
}

/// Red/green split of the pairs of a host graph, indexed by pair index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Colouring {
    green: Vec<bool>,
}

impl Colouring {
    fn from_green(host: &MultiGraph, green: impl Iterator<Item = PairKey>) -> Self {
        let mut g = vec![false; host.pair_count()];
        for (u, v) in green {
            g[host.pair_index(u, v).expect("pair of host")] = true;
        }
        Colouring { green: g }
    }

    pub fn is_green(&self, pair: usize) -> bool {
        self.green[pair]
    }

    pub fn green_pairs(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.green.len()).filter(|&i| self.green[i])
    }

    pub fn red_pairs(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.green.len()).filter(|&i| !self.green[i])
    }
}

#[derive(Debug, Clone)]
enum Base {
    Edge(usize, usize),
    Cycle(Vec<usize>),
}

/// Peeled cycles are stored as `[s, t, rest..]` with `st` the green edge they
/// hang from.
#[derive(Debug, Clone)]
struct Peeling {
    base: Base,
    cycles: Vec<Vec<usize>>,
}

struct Candidate {
    path: Vec<usize>,
}

type StateKey = (Vec<u64>, Vec<PairKey>);

struct Peeler<'a> {
    g: &'a MultiGraph,
    alive: Vec<bool>,
    failed: HashSet<StateKey>,
    all: HashMap<StateKey, BTreeSet<BTreeSet<PairKey>>>,
}

impl<'a> Peeler<'a> {
    fn new(g: &'a MultiGraph) -> Self {
        Peeler {
            g,
            alive: vec![true; g.n()],
            failed: HashSet::new(),
            all: HashMap::new(),
        }
    }

    fn state_key(&self, required: &BTreeSet<PairKey>) -> StateKey {
        let mut bits = vec![0u64; self.alive.len().div_ceil(64)];
        for (v, &a) in self.alive.iter().enumerate() {
            if a {
                bits[v / 64] |= 1 << (v % 64);
            }
        }
        (bits, required.iter().copied().collect())
    }

    fn live_neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.g.neighbours(v).filter(move |&w| self.alive[w])
    }

    fn live_degree(&self, v: usize) -> usize {
        self.live_neighbours(v).count()
    }

    fn special(&self, u: usize, v: usize, required: &BTreeSet<PairKey>) -> bool {
        self.g.multiplicity(u, v) > 1 || required.contains(&key(u, v))
    }

    /// Base case, if the live graph is one: `K2`, or a cycle of length
    /// `2 (mod 4)` returned once per admissible green class.
    fn bases(&self, required: &BTreeSet<PairKey>) -> Option<Vec<Base>> {
        let live: Vec<usize> = (0..self.g.n()).filter(|&v| self.alive[v]).collect();
        if live.len() == 2 {
            let (u, v) = (live[0], live[1]);
            return Some(if self.g.has_edge(u, v) {
                vec![Base::Edge(u, v)]
            } else {
                Vec::new()
            });
        }
        if live.len() < 2 {
            return Some(Vec::new());
        }
        if live.iter().any(|&v| self.live_degree(v) != 2) {
            return None;
        }
        // every live vertex has two live neighbours: one cycle if connected
        let k = live.len();
        let mut verts = vec![live[0]];
        let mut prev = usize::MAX;
        let mut cur = live[0];
        loop {
            let next = self.live_neighbours(cur).find(|&x| x != prev).unwrap();
            if next == live[0] {
                break;
            }
            verts.push(next);
            prev = cur;
            cur = next;
        }
        if verts.len() != k || k % 4 != 2 || k < 6 {
            return Some(Vec::new());
        }
        let mut classes = [true, true];
        for e in 0..k {
            if self.special(verts[e], verts[(e + 1) % k], required) {
                classes[1 - e % 2] = false;
            }
        }
        let mut out = Vec::new();
        for (parity, ok) in classes.into_iter().enumerate() {
            if ok {
                let mut c = verts.clone();
                c.rotate_left(parity);
                out.push(Base::Cycle(c));
            }
        }
        Some(out)
    }

    fn candidates(&self, required: &BTreeSet<PairKey>) -> Vec<Candidate> {
        let mut out = Vec::new();
        for s in 0..self.g.n() {
            if !self.alive[s] || self.live_degree(s) == 2 {
                continue;
            }
            for w in self.live_neighbours(s) {
                if self.live_degree(w) != 2 {
                    continue;
                }
                let mut path = vec![s];
                let (mut prev, mut cur) = (s, w);
                while self.live_degree(cur) == 2 && cur != s {
                    path.push(cur);
                    let next = self.live_neighbours(cur).find(|&x| x != prev).unwrap();
                    prev = cur;
                    cur = next;
                }
                let t = cur;
                path.push(t);
                let len = path.len() - 1;
                if t <= s || len % 4 != 1 || len < 5 || !self.g.has_edge(s, t) {
                    continue;
                }
                let red_ok = (1..=len).step_by(2).all(|k| {
                    let (a, b) = (path[k - 1], path[k]);
                    self.g.multiplicity(a, b) == 1 && !required.contains(&key(a, b))
                });
                if red_ok {
                    out.push(Candidate { path });
                }
            }
        }
        out
    }

    fn remove(&mut self, c: &Candidate, required: &BTreeSet<PairKey>) -> BTreeSet<PairKey> {
        let internal = &c.path[1..c.path.len() - 1];
        for &v in internal {
            self.alive[v] = false;
        }
        let mut next: BTreeSet<PairKey> = required
            .iter()
            .copied()
            .filter(|&(a, b)| self.alive[a] && self.alive[b])
            .collect();
        next.insert(key(c.path[0], *c.path.last().unwrap()));
        next
    }

    fn restore(&mut self, c: &Candidate) {
        for &v in &c.path[1..c.path.len() - 1] {
            self.alive[v] = true;
        }
    }

    fn first(&mut self, required: &BTreeSet<PairKey>) -> Option<Peeling> {
        if let Some(bases) = self.bases(required) {
            return bases.into_iter().next().map(|base| Peeling {
                base,
                cycles: Vec::new(),
            });
        }
        let key = self.state_key(required);
        if self.failed.contains(&key) {
            return None;
        }
        for c in self.candidates(required) {
            let next = self.remove(&c, required);
            let found = self.first(&next);
            self.restore(&c);
            if let Some(mut p) = found {
                let (s, t) = (c.path[0], *c.path.last().unwrap());
                let mut cycle = vec![s, t];
                cycle.extend(c.path[1..c.path.len() - 1].iter().rev());
                p.cycles.push(cycle);
                return Some(p);
            }
        }
        self.failed.insert(key);
        None
    }

    /// Every green set over every successful peeling order.
    fn every(&mut self, required: &BTreeSet<PairKey>) -> BTreeSet<BTreeSet<PairKey>> {
        if let Some(bases) = self.bases(required) {
            return bases
                .into_iter()
                .map(|b| match b {
                    Base::Edge(u, v) => BTreeSet::from([key(u, v)]),
                    Base::Cycle(c) => (0..c.len())
                        .step_by(2)
                        .map(|e| key(c[e], c[(e + 1) % c.len()]))
                        .collect(),
                })
                .collect();
        }
        let state = self.state_key(required);
        if let Some(done) = self.all.get(&state) {
            return done.clone();
        }
        let mut out = BTreeSet::new();
        for c in self.candidates(required) {
            let next = self.remove(&c, required);
            let rest = self.every(&next);
            self.restore(&c);
            for mut green in rest {
                for k in (2..c.path.len()).step_by(2) {
                    green.insert(key(c.path[k - 1], c.path[k]));
                }
                out.insert(green);
            }
        }
        self.all.insert(state, out.clone());
        out
    }
}

fn plausible(g: &MultiGraph) -> bool {
    if g.n() < 2 || !g.is_connected() || g.bipartition().is_err() {
        return false;
    }
    g.n() == 2 || g.bridges().is_empty()
}

/// Certificate when `g` is an odd multi-cactus, `None` otherwise.
pub fn recognize(g: &MultiGraph) -> Option<CactusCertificate> {
    if !plausible(g) {
        return None;
    }
    let peeling = Peeler::new(g).first(&BTreeSet::new())?;
    let cert = certificate(g, peeling);
    debug_assert!(cert.verify(g));
    Some(cert)
}

fn certificate(g: &MultiGraph, p: Peeling) -> CactusCertificate {
    let mut order = p.cycles.into_iter();
    let root = match p.base {
        Base::Edge(u, v) => match order.next() {
            None => {
                return CactusCertificate {
                    recipe: CactusRecipe::Edge {
                        multiplicity: g.multiplicity(u, v),
                    },
                    vertex_map: vec![u, v],
                }
            }
            // the first cycle hangs from the only edge and becomes the root
            Some(c) => c,
        },
        Base::Cycle(c) => c,
    };
    let green_multiplicities = |verts: &[usize], from: usize| -> BTreeMap<usize, u32> {
        (from..verts.len())
            .step_by(2)
            .filter_map(|e| {
                let k = g.multiplicity(verts[e], verts[(e + 1) % verts.len()]);
                (k > 1).then_some((e, k))
            })
            .collect()
    };
    let mut specs = vec![CycleSpec {
        length: root.len(),
        attach: None,
        multiplicities: green_multiplicities(&root, 0),
    }];
    let mut vertex_map = root.clone();
    let mut placed = vec![root];
    for mut c in order {
        let (s, t) = (c[0], c[1]);
        let (parent, edge) = placed
            .iter()
            .enumerate()
            .find_map(|(j, pc)| {
                (0..pc.len()).step_by(2).find_map(|e| {
                    let (a, b) = (pc[e], pc[(e + 1) % pc.len()]);
                    (key(a, b) == key(s, t)).then_some((j, e))
                })
            })
            .expect("peeled cycles hang from a green edge");
        if placed[parent][edge] != s {
            c.swap(0, 1);
            c[2..].reverse();
        }
        specs.push(CycleSpec::child(c.len(), parent, edge));
        specs.last_mut().unwrap().multiplicities = green_multiplicities(&c, 2);
        vertex_map.extend_from_slice(&c[2..]);
        placed.push(c);
    }
    CactusCertificate {
        recipe: CactusRecipe::Cycles(specs),
        vertex_map,
    }
}

/// Every red/green colouring that some certificate of `g` induces.
pub fn red_green_colourings(g: &MultiGraph) -> Result<Vec<Colouring>, CactusError> {
    if recognize(g).is_none() {
        return Err(CactusError::NotOMC);
    }
    let sets = Peeler::new(g).every(&BTreeSet::new());
    Ok(sets
        .into_iter()
        .map(|s| Colouring::from_green(g, s.into_iter()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect())
}
