//! Recursive constructions of bad trees and of the vertex classes they are
//! built from.
//!
//! Every construction places its designated vertex at id 0. Wherever a bad
//! graph is joined to something by an edge, the edge lands on its vertex 0.
//!
//! Text form (whitespace-separated s-expressions):
//!
//! ```text
//! spec  := "k2"
//!        | "(cycle" LEN ")"
//!        | "(s3" S spec spec group* ")"          v joined to two G(s+1,s+2)
//!        | "(s1a" S spec spec group* ")"         G(s-1,s+2) and G(s,s+1)
//!        | "(s1b" S group* ")"
//!        | "(bad-from-s1" S spec ")"
//!        | "(glue" spec spec [LEAF LEAF] ")"
//!        | "(minus-from-bad" spec [LEAF] ")"
//!        | "(path" LEN S spec* ")"
//! group := "(minus" spec* ")" | "(bad" spec* ")"
//! ```

use std::fmt;

use super::dp::{classify_tree, vertex_status, StatusLabel};
use super::TreeError;
use crate::graph::{MultiGraph, SplitMix64};
use crate::weighting::{oracle_exists_proper, WeightPair, DEFAULT_EDGE_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionSpec {
    K2,
    /// Bare cycle of length `2 (mod 4)`; only meaningful inside `BadPath`.
    Cycle(usize),
    /// New vertex joined to two `G(s+1,s+2)`-trees, `G(-)`-trees and `s` bad
    /// trees.
    GvS3 {
        s: usize,
        left: Box<ConstructionSpec>,
        right: Box<ConstructionSpec>,
        minus: Vec<ConstructionSpec>,
        bads: Vec<ConstructionSpec>,
    },
    /// New vertex joined to a `G(s-1,s+2)`-tree, a `G(s,s+1)`-tree,
    /// `G(-)`-trees and `s - 1` bad trees.
    GvS1a {
        s: usize,
        left: Box<ConstructionSpec>,
        right: Box<ConstructionSpec>,
        minus: Vec<ConstructionSpec>,
        bads: Vec<ConstructionSpec>,
    },
    /// New vertex joined to `G(-)`-trees and `s` bad trees.
    GvS1b {
        s: usize,
        minus: Vec<ConstructionSpec>,
        bads: Vec<ConstructionSpec>,
    },
    /// New vertex `v'` joined to the designated vertex of a `G(s,s+1)`-tree
    /// and to `s` copies of `K2`.
    BadFromGvS1 {
        s: usize,
        inner: Box<ConstructionSpec>,
    },
    /// Two bad trees glued along a leaf edge whose inner end has degree 2.
    BadGlue {
        first: Box<ConstructionSpec>,
        second: Box<ConstructionSpec>,
        leaves: Option<(usize, usize)>,
    },
    /// A bad tree with a pendant path of two vertices removed.
    GvMinusFromBad {
        bad: Box<ConstructionSpec>,
        leaf: Option<usize>,
    },
    /// Path of length `1 (mod 4)`; inner vertices get `s` bad graphs, ends
    /// `s + 1`, listed from one end to the other.
    BadPath {
        length: usize,
        s: usize,
        bads: Vec<ConstructionSpec>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    /// Designated vertex is 0.
    pub graph: MultiGraph,
    pub class: StatusLabel,
}

fn invalid(msg: impl Into<String>) -> TreeError {
    TreeError::InvalidSpec(msg.into())
}

impl ConstructionSpec {
    pub fn claimed(&self) -> StatusLabel {
        use ConstructionSpec::*;
        match self {
            K2 | Cycle(_) | BadFromGvS1 { .. } | BadGlue { .. } | BadPath { .. } => StatusLabel::Bad,
            GvS3 { s, .. } => StatusLabel::GvPair(*s as i64, *s as i64 + 3),
            GvS1a { s, .. } | GvS1b { s, .. } => StatusLabel::GvPair(*s as i64, *s as i64 + 1),
            GvMinusFromBad { .. } => StatusLabel::GvMinus,
        }
    }

    fn kind(&self) -> &'static str {
        use ConstructionSpec::*;
        match self {
            K2 => "k2",
            Cycle(_) => "cycle",
            GvS3 { .. } => "s3",
            GvS1a { .. } => "s1a",
            GvS1b { .. } => "s1b",
            BadFromGvS1 { .. } => "bad-from-s1",
            BadGlue { .. } => "glue",
            GvMinusFromBad { .. } => "minus-from-bad",
            BadPath { .. } => "path",
        }
    }

    /// True when the construction is a tree.
    pub fn is_tree(&self) -> bool {
        use ConstructionSpec::*;
        match self {
            Cycle(_) => false,
            BadPath { bads, .. } => bads.iter().all(Self::is_tree),
            _ => true,
        }
    }

    /// Parameter and arity checks, recursively.
    pub fn validate(&self) -> Result<(), TreeError> {
        use ConstructionSpec::*;
        let expect = |sub: &ConstructionSpec, class: StatusLabel| -> Result<(), TreeError> {
            sub.validate()?;
            if sub.claimed() != class {
                return Err(invalid(format!(
                    "{} needs a {:?} part, got {} ({:?})",
                    self.kind(),
                    class,
                    sub.kind(),
                    sub.claimed()
                )));
            }
            if !sub.is_tree() && !matches!(self, BadPath { .. }) {
                return Err(invalid(format!("{} only combines trees", self.kind())));
            }
            Ok(())
        };
        let pair = |a: usize, b: usize| StatusLabel::GvPair(a as i64, b as i64);
        let count = |found: usize, wanted: usize| {
            if found == wanted {
                Ok(())
            } else {
                Err(invalid(format!(
                    "{} needs {wanted} bad parts, got {found}",
                    self.kind()
                )))
            }
        };
        match self {
            K2 => Ok(()),
            Cycle(len) => {
                if *len >= 6 && len % 4 == 2 {
                    Ok(())
                } else {
                    Err(invalid(format!("cycle length {len} is not 2 mod 4")))
                }
            }
            GvS3 {
                s,
                left,
                right,
                minus,
                bads,
            } => {
                expect(left, pair(s + 1, s + 2))?;
                expect(right, pair(s + 1, s + 2))?;
                minus.iter().try_for_each(|m| expect(m, StatusLabel::GvMinus))?;
                bads.iter().try_for_each(|b| expect(b, StatusLabel::Bad))?;
                count(bads.len(), *s)
            }
            GvS1a {
                s,
                left,
                right,
                minus,
                bads,
            } => {
                if *s == 0 {
                    return Err(invalid("s1a needs s >= 1"));
                }
                expect(left, pair(s - 1, s + 2))?;
                expect(right, pair(*s, s + 1))?;
                minus.iter().try_for_each(|m| expect(m, StatusLabel::GvMinus))?;
                bads.iter().try_for_each(|b| expect(b, StatusLabel::Bad))?;
                count(bads.len(), s - 1)
            }
            GvS1b { s, minus, bads } => {
                minus.iter().try_for_each(|m| expect(m, StatusLabel::GvMinus))?;
                bads.iter().try_for_each(|b| expect(b, StatusLabel::Bad))?;
                count(bads.len(), *s)
            }
            BadFromGvS1 { s, inner } => {
                if *s == 0 {
                    return Err(invalid("bad-from-s1 needs s >= 1"));
                }
                expect(inner, pair(*s, s + 1))
            }
            BadGlue { first, second, .. } => {
                expect(first, StatusLabel::Bad)?;
                expect(second, StatusLabel::Bad)
            }
            GvMinusFromBad { bad, .. } => expect(bad, StatusLabel::Bad),
            BadPath { length, s, bads } => {
                if length % 4 != 1 {
                    return Err(invalid(format!("path length {length} is not 1 mod 4")));
                }
                bads.iter().try_for_each(|b| expect(b, StatusLabel::Bad))?;
                count(bads.len(), (length - 1) * s + 2 * (s + 1))
            }
        }
    }
}

/// Builds the graph and checks every node's claimed class along the way:
/// trees by the feasibility table, other graphs by the oracle when small
/// enough (larger ones are trusted).
pub fn construct(spec: &ConstructionSpec) -> Result<Construction, TreeError> {
    spec.validate()?;
    build(spec, true)
}

/// Builds without checking claimed classes (parameters are still validated).
pub fn construct_unchecked(spec: &ConstructionSpec) -> Result<Construction, TreeError> {
    spec.validate()?;
    build(spec, false)
}

struct Assembly {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Assembly {
    fn new(n: usize) -> Self {
        Assembly { n, edges: Vec::new() }
    }

    fn add(&mut self, g: &MultiGraph) -> usize {
        let off = self.n;
        self.n += g.n();
        self.edges.extend(g.pairs().iter().map(|p| (p.u + off, p.v + off)));
        off
    }

    fn finish(self) -> MultiGraph {
        MultiGraph::from_edges(self.n, self.edges).expect("assembled edges are valid")
    }
}

fn build(spec: &ConstructionSpec, check: bool) -> Result<Construction, TreeError> {
    use ConstructionSpec::*;
    let parts = |xs: &[ConstructionSpec]| -> Result<Vec<MultiGraph>, TreeError> {
        xs.iter().map(|x| build(x, check).map(|c| c.graph)).collect()
    };
    let star = |subs: Vec<MultiGraph>| {
        let mut a = Assembly::new(1);
        for g in &subs {
            let off = a.add(g);
            a.edges.push((0, off));
        }
        a.finish()
    };
    let graph = match spec {
        K2 => MultiGraph::from_edges(2, [(0, 1)]).expect("valid"),
        Cycle(len) => MultiGraph::from_edges(*len, (0..*len).map(|i| (i, (i + 1) % len))).expect("valid"),
        GvS3 {
            left,
            right,
            minus,
            bads,
            ..
        }
        | GvS1a {
            left,
            right,
            minus,
            bads,
            ..
        } => {
            let mut subs = vec![build(left, check)?.graph, build(right, check)?.graph];
            subs.extend(parts(minus)?);
            subs.extend(parts(bads)?);
            star(subs)
        }
        GvS1b { minus, bads, .. } => {
            let mut subs = parts(minus)?;
            subs.extend(parts(bads)?);
            star(subs)
        }
        BadFromGvS1 { s, inner } => {
            let mut subs = vec![build(inner, check)?.graph];
            let k2 = MultiGraph::from_edges(2, [(0, 1)]).expect("valid");
            subs.extend(std::iter::repeat_n(k2, *s));
            star(subs)
        }
        BadGlue { first, second, leaves } => {
            let g1 = build(first, check)?.graph;
            let g2 = build(second, check)?.graph;
            let (l1, l2) = match leaves {
                Some((a, b)) => (*a, *b),
                None => (
                    glue_leaf(&g1).ok_or_else(|| invalid("first part has no leaf next to a degree-2 vertex"))?,
                    glue_leaf(&g2).ok_or_else(|| invalid("second part has no leaf next to a degree-2 vertex"))?,
                ),
            };
            glue(&g1, l1, &g2, l2)?
        }
        GvMinusFromBad { bad, leaf } => {
            let g = build(bad, check)?.graph;
            let leaf = match leaf {
                Some(l) => *l,
                None => glue_leaf(&g).ok_or_else(|| invalid("bad part has no pendant path of length 2"))?,
            };
            remove_pendant_path(&g, leaf)?
        }
        BadPath { length, s, bads } => {
            let graphs = parts(bads)?;
            let attached: Vec<(MultiGraph, usize)> = graphs.into_iter().map(|g| (g, 0)).collect();
            bad_path_graph(*length, *s, &attached)?
        }
    };
    let class = spec.claimed();
    if check {
        verify_claim(spec, &graph)?;
    }
    Ok(Construction { graph, class })
}

fn verify_claim(spec: &ConstructionSpec, g: &MultiGraph) -> Result<(), TreeError> {
    let claimed = spec.claimed();
    let found = if g.is_tree() {
        if claimed == StatusLabel::Bad {
            if classify_tree(g)?.is_bad() {
                StatusLabel::Bad
            } else {
                StatusLabel::Unconstrained
            }
        } else {
            vertex_status(g, 0)?.label
        }
    } else if g.copy_count() <= DEFAULT_EDGE_BUDGET {
        let none = oracle_exists_proper(g, WeightPair::ZERO_ONE, &vec![0; g.n()], DEFAULT_EDGE_BUDGET)
            .expect("within budget")
            .is_none();
        if none {
            StatusLabel::Bad
        } else {
            StatusLabel::Unconstrained
        }
    } else {
        claimed
    };
    if found == claimed {
        Ok(())
    } else {
        Err(TreeError::ClaimFailed {
            node: spec.kind().to_string(),
            claimed,
            found,
        })
    }
}

/// Smallest leaf whose neighbour has degree 2.
pub fn glue_leaf(g: &MultiGraph) -> Option<usize> {
    (0..g.n()).find(|&y| g.degree(y) == 1 && g.neighbours(y).next().is_some_and(|x| g.degree(x) == 2))
}

fn leaf_edge(g: &MultiGraph, leaf: usize) -> Result<usize, TreeError> {
    if leaf >= g.n() || g.degree(leaf) != 1 {
        return Err(invalid(format!("vertex {leaf} is not a leaf")));
    }
    let x = g.neighbours(leaf).next().unwrap();
    if g.degree(x) != 2 {
        return Err(invalid(format!("neighbour of leaf {leaf} does not have degree 2")));
    }
    Ok(x)
}

/// Identifies leaf `l1` with `l2` and their neighbours with each other. The
/// first graph keeps its ids.
pub fn glue(g1: &MultiGraph, l1: usize, g2: &MultiGraph, l2: usize) -> Result<MultiGraph, TreeError> {
    let x1 = leaf_edge(g1, l1)?;
    let x2 = leaf_edge(g2, l2)?;
    let mut map = vec![usize::MAX; g2.n()];
    map[l2] = l1;
    map[x2] = x1;
    let mut n = g1.n();
    for (v, slot) in map.iter_mut().enumerate() {
        if v != l2 && v != x2 {
            *slot = n;
            n += 1;
        }
    }
    let edges = g1.pairs().iter().map(|p| (p.u, p.v)).chain(
        g2.pairs()
            .iter()
            .filter(|p| p.key() != (l2.min(x2), l2.max(x2)))
            .map(|p| (map[p.u], map[p.v])),
    );
    Ok(MultiGraph::from_edges(n, edges).expect("glued edges are valid"))
}

/// Removes `leaf` and its degree-2 neighbour; the vertex they hung from
/// becomes vertex 0.
pub fn remove_pendant_path(g: &MultiGraph, leaf: usize) -> Result<MultiGraph, TreeError> {
    let x = leaf_edge(g, leaf)?;
    let v = g.neighbours(x).find(|&w| w != leaf).unwrap();
    let mut keep = vec![v];
    keep.extend((0..g.n()).filter(|&w| w != v && w != x && w != leaf));
    Ok(g.induced_subgraph(&keep).graph)
}

/// `g` plus a path `v - n - n+1`.
pub fn with_pendant_path(g: &MultiGraph, v: usize) -> MultiGraph {
    let n = g.n();
    g.with_added(2, [(v, n, 1), (n, n + 1, 1)]).expect("new vertices")
}

/// Path `0..=length` where the ends get `s + 1` attached graphs and inner
/// vertices `s`, in order along the path. Each entry is a graph and the
/// vertex of it that receives the joining edge.
pub fn bad_path_graph(length: usize, s: usize, bads: &[(MultiGraph, usize)]) -> Result<MultiGraph, TreeError> {
    if length % 4 != 1 {
        return Err(invalid(format!("path length {length} is not 1 mod 4")));
    }
    let wanted = (length - 1) * s + 2 * (s + 1);
    if bads.len() != wanted {
        return Err(invalid(format!(
            "path needs {wanted} attached graphs, got {}",
            bads.len()
        )));
    }
    let mut a = Assembly::new(length + 1);
    a.edges.extend((0..length).map(|i| (i, i + 1)));
    let mut it = bads.iter();
    for p in 0..=length {
        let k = if p == 0 || p == length { s + 1 } else { s };
        for _ in 0..k {
            let (g, at) = it.next().unwrap();
            if *at >= g.n() {
                return Err(TreeError::NoSuchVertex(*at));
            }
            let off = a.add(g);
            a.edges.push((p, off + at));
        }
    }
    Ok(a.finish())
}

// ---- text form ----

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ConstructionSpec::*;
        let groups = |f: &mut fmt::Formatter<'_>, minus: &[ConstructionSpec], bads: &[ConstructionSpec]| {
            if !minus.is_empty() {
                write!(f, " (minus")?;
                for m in minus {
                    write!(f, " {m}")?;
                }
                write!(f, ")")?;
            }
            if !bads.is_empty() {
                write!(f, " (bad")?;
                for b in bads {
                    write!(f, " {b}")?;
                }
                write!(f, ")")?;
            }
            Ok(())
        };
        match self {
            K2 => write!(f, "k2"),
            Cycle(len) => write!(f, "(cycle {len})"),
            GvS3 {
                s,
                left,
                right,
                minus,
                bads,
            } => {
                write!(f, "(s3 {s} {left} {right}")?;
                groups(f, minus, bads)?;
                write!(f, ")")
            }
            GvS1a {
                s,
                left,
                right,
                minus,
                bads,
            } => {
                write!(f, "(s1a {s} {left} {right}")?;
                groups(f, minus, bads)?;
                write!(f, ")")
            }
            GvS1b { s, minus, bads } => {
                write!(f, "(s1b {s}")?;
                groups(f, minus, bads)?;
                write!(f, ")")
            }
            BadFromGvS1 { s, inner } => write!(f, "(bad-from-s1 {s} {inner})"),
            BadGlue { first, second, leaves } => {
                write!(f, "(glue {first} {second}")?;
                if let Some((a, b)) = leaves {
                    write!(f, " {a} {b}")?;
                }
                write!(f, ")")
            }
            GvMinusFromBad { bad, leaf } => {
                write!(f, "(minus-from-bad {bad}")?;
                if let Some(l) = leaf {
                    write!(f, " {l}")?;
                }
                write!(f, ")")
            }
            BadPath { length, s, bads } => {
                write!(f, "(path {length} {s}")?;
                for b in bads {
                    write!(f, " {b}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    fn pos(&self) -> usize {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }
}

fn parse_err(pos: usize, msg: impl Into<String>) -> TreeError {
    TreeError::Parse { pos, msg: msg.into() }
}

fn read_sexp(text: &str) -> Result<Sexp, TreeError> {
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        if ch == '(' || ch == ')' || ch.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push((s, &text[s..i]));
            }
            if !ch.is_whitespace() {
                tokens.push((i, &text[i..i + 1]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push((s, &text[s..]));
    }
    let mut at = 0;
    let expr = read_one(&tokens, &mut at, text.len())?;
    if let Some(&(p, _)) = tokens.get(at) {
        return Err(parse_err(p, "trailing input"));
    }
    Ok(expr)
}

fn read_one(tokens: &[(usize, &str)], at: &mut usize, end: usize) -> Result<Sexp, TreeError> {
    let &(pos, tok) = tokens
        .get(*at)
        .ok_or_else(|| parse_err(end, "unexpected end of input"))?;
    *at += 1;
    match tok {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*at) {
                    None => return Err(parse_err(end, "unclosed `(`")),
                    Some(&(_, ")")) => {
                        *at += 1;
                        return Ok(Sexp::List(items, pos));
                    }
                    Some(_) => items.push(read_one(tokens, at, end)?),
                }
            }
        }
        ")" => Err(parse_err(pos, "unexpected `)`")),
        atom => Ok(Sexp::Atom(atom.to_string(), pos)),
    }
}

fn number(e: &Sexp) -> Result<usize, TreeError> {
    match e {
        Sexp::Atom(a, p) => a.parse().map_err(|_| parse_err(*p, format!("`{a}` is not a number"))),
        Sexp::List(_, p) => Err(parse_err(*p, "expected a number")),
    }
}

fn head(e: &Sexp) -> Option<&str> {
    match e {
        Sexp::List(items, _) => match items.first() {
            Some(Sexp::Atom(a, _)) => Some(a),
            _ => None,
        },
        _ => None,
    }
}

fn to_spec(e: &Sexp) -> Result<ConstructionSpec, TreeError> {
    use ConstructionSpec::*;
    let (items, pos) = match e {
        Sexp::Atom(a, _) if a == "k2" => return Ok(K2),
        Sexp::Atom(a, p) => return Err(parse_err(*p, format!("unknown atom `{a}`"))),
        Sexp::List(items, p) => (items, *p),
    };
    let name = head(e).ok_or_else(|| parse_err(pos, "list must start with a keyword"))?;
    let args = &items[1..];
    let arity = |lo: usize, hi: usize| {
        if args.len() < lo || args.len() > hi {
            Err(parse_err(pos, format!("`{name}` takes {lo} to {hi} arguments")))
        } else {
            Ok(())
        }
    };
    let groups = |rest: &[Sexp]| -> Result<(Vec<ConstructionSpec>, Vec<ConstructionSpec>), TreeError> {
        let mut minus = Vec::new();
        let mut bads = Vec::new();
        for g in rest {
            let target = match head(g) {
                Some("minus") => &mut minus,
                Some("bad") => &mut bads,
                _ => return Err(parse_err(g.pos(), "expected `(minus ...)` or `(bad ...)`")),
            };
            if let Sexp::List(xs, _) = g {
                for x in &xs[1..] {
                    target.push(to_spec(x)?);
                }
            }
        }
        Ok((minus, bads))
    };
    let boxed = |e: &Sexp| to_spec(e).map(Box::new);
    Ok(match name {
        "cycle" => {
            arity(1, 1)?;
            Cycle(number(&args[0])?)
        }
        "s3" | "s1a" => {
            arity(3, usize::MAX)?;
            let s = number(&args[0])?;
            let left = boxed(&args[1])?;
            let right = boxed(&args[2])?;
            let (minus, bads) = groups(&args[3..])?;
            if name == "s3" {
                GvS3 {
                    s,
                    left,
                    right,
                    minus,
                    bads,
                }
            } else {
                GvS1a {
                    s,
                    left,
                    right,
                    minus,
                    bads,
                }
            }
        }
        "s1b" => {
            arity(1, usize::MAX)?;
            let s = number(&args[0])?;
            let (minus, bads) = groups(&args[1..])?;
            GvS1b { s, minus, bads }
        }
        "bad-from-s1" => {
            arity(2, 2)?;
            BadFromGvS1 {
                s: number(&args[0])?,
                inner: boxed(&args[1])?,
            }
        }
        "glue" => {
            if args.len() != 2 && args.len() != 4 {
                return Err(parse_err(pos, "`glue` takes 2 or 4 arguments"));
            }
            let leaves = if args.len() == 4 {
                Some((number(&args[2])?, number(&args[3])?))
            } else {
                None
            };
            BadGlue {
                first: boxed(&args[0])?,
                second: boxed(&args[1])?,
                leaves,
            }
        }
        "minus-from-bad" => {
            arity(1, 2)?;
            GvMinusFromBad {
                bad: boxed(&args[0])?,
                leaf: args.get(1).map(number).transpose()?,
            }
        }
        "path" => {
            arity(2, usize::MAX)?;
            BadPath {
                length: number(&args[0])?,
                s: number(&args[1])?,
                bads: args[2..].iter().map(to_spec).collect::<Result<_, _>>()?,
            }
        }
        other => return Err(parse_err(pos, format!("unknown construction `{other}`"))),
    })
}

impl std::str::FromStr for ConstructionSpec {
    type Err = TreeError;

    /// Parses the s-expression form; parameters are not validated here.
    fn from_str(text: &str) -> Result<Self, TreeError> {
        to_spec(&read_sexp(text)?)
    }
}

// ---- random specs ----

/// Random specs of a requested class with `s` drawn from `0..=max_s`.
/// `depth` bounds the nesting; at depth 0 only the smallest members are used.
#[derive(Debug, Clone)]
pub struct SpecGenerator {
    pub max_s: usize,
    pub max_minus: usize,
}

impl Default for SpecGenerator {
    fn default() -> Self {
        SpecGenerator { max_s: 2, max_minus: 1 }
    }
}

impl SpecGenerator {
    pub fn bad(&self, rng: &mut SplitMix64, depth: usize) -> ConstructionSpec {
        use ConstructionSpec::*;
        if depth == 0 {
            return K2;
        }
        match rng.below(4) {
            0 => K2,
            1 => {
                let first = self.bad(rng, depth - 1);
                let second = self.bad(rng, depth - 1);
                let ok = |c: &ConstructionSpec| construct_unchecked(c).is_ok_and(|b| glue_leaf(&b.graph).is_some());
                if ok(&first) && ok(&second) {
                    BadGlue {
                        first: Box::new(first),
                        second: Box::new(second),
                        leaves: None,
                    }
                } else {
                    self.bad_via_s1(rng, depth)
                }
            }
            _ => self.bad_via_s1(rng, depth),
        }
    }

    fn bad_via_s1(&self, rng: &mut SplitMix64, depth: usize) -> ConstructionSpec {
        let s = rng.range(1, self.max_s.max(1));
        ConstructionSpec::BadFromGvS1 {
            s,
            inner: Box::new(self.pair1(rng, s, depth - 1)),
        }
    }

    /// A `G(-)` spec, if a bad tree with a removable pendant path turns up.
    pub fn minus(&self, rng: &mut SplitMix64, depth: usize) -> Option<ConstructionSpec> {
        for _ in 0..4 {
            let bad = self.bad(rng, depth);
            if construct_unchecked(&bad).is_ok_and(|b| glue_leaf(&b.graph).is_some()) {
                return Some(ConstructionSpec::GvMinusFromBad {
                    bad: Box::new(bad),
                    leaf: None,
                });
            }
        }
        None
    }

    fn extras(
        &self,
        rng: &mut SplitMix64,
        depth: usize,
        bads: usize,
    ) -> (Vec<ConstructionSpec>, Vec<ConstructionSpec>) {
        let mut minus = Vec::new();
        if depth > 0 {
            for _ in 0..rng.below(self.max_minus + 1) {
                if let Some(m) = self.minus(rng, depth - 1) {
                    minus.push(m);
                }
            }
        }
        let bads = (0..bads).map(|_| self.bad(rng, depth.saturating_sub(1))).collect();
        (minus, bads)
    }

    /// A `G(s,s+1)` spec.
    pub fn pair1(&self, rng: &mut SplitMix64, s: usize, depth: usize) -> ConstructionSpec {
        use ConstructionSpec::*;
        if depth > 0 && s >= 1 && rng.below(3) == 0 {
            let (minus, bads) = self.extras(rng, depth, s - 1);
            GvS1a {
                s,
                left: Box::new(self.pair3(rng, s - 1, depth - 1)),
                right: Box::new(self.pair1(rng, s, depth - 1)),
                minus,
                bads,
            }
        } else {
            let (minus, bads) = self.extras(rng, depth, s);
            GvS1b { s, minus, bads }
        }
    }

    /// A `G(s,s+3)` spec.
    pub fn pair3(&self, rng: &mut SplitMix64, s: usize, depth: usize) -> ConstructionSpec {
        let (minus, bads) = self.extras(rng, depth, s);
        ConstructionSpec::GvS3 {
            s,
            left: Box::new(self.pair1(rng, s + 1, depth.saturating_sub(1))),
            right: Box::new(self.pair1(rng, s + 1, depth.saturating_sub(1))),
            minus,
            bads,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use crate::trees::dp::vertex_status;

    fn spec(text: &str) -> ConstructionSpec {
        text.parse().unwrap()
    }

    #[test]
    fn p3_from_s1b() {
        let c = construct(&spec("(s1b 1 (bad k2))")).unwrap();
        assert_eq!(c.graph.n(), 3);
        assert!(c.graph.is_tree());
        assert_eq!(c.graph.degree(0), 1);
        assert_eq!(vertex_status(&c.graph, 0).unwrap().label, StatusLabel::GvPair(1, 2));
    }

    #[test]
    fn k1_is_the_smallest_pair() {
        let c = construct(&spec("(s1b 0)")).unwrap();
        assert_eq!(c.graph, MultiGraph::empty(1));
        assert_eq!(c.class, StatusLabel::GvPair(0, 1));
    }

    #[test]
    fn p6_two_ways() {
        let p6 = Family::Path(6).build().unwrap();
        let a = construct(&spec("(bad-from-s1 1 (s1b 1 (bad k2)))")).unwrap();
        assert!(a.graph.is_tree() && a.graph.n() == 6 && a.graph.max_degree() == 2);
        let b = construct(&spec("(path 1 0 k2 k2)")).unwrap();
        assert_eq!(
            crate::trees::free_tree_code(&b.graph),
            crate::trees::free_tree_code(&p6)
        );
        assert_eq!(
            crate::trees::free_tree_code(&a.graph),
            crate::trees::free_tree_code(&p6)
        );
    }

    #[test]
    fn p4_from_p6() {
        let c = construct(&spec("(minus-from-bad (path 1 0 k2 k2))")).unwrap();
        assert_eq!(c.graph.n(), 4);
        assert_eq!(c.graph.degree(0), 1);
        assert_eq!(vertex_status(&c.graph, 0).unwrap().label, StatusLabel::GvMinus);
    }

    #[test]
    fn gluing_two_hexapaths() {
        let p6 = "(bad-from-s1 1 (s1b 1 (bad k2)))";
        let c = construct(&spec(&format!("(glue {p6} {p6})"))).unwrap();
        assert_eq!(c.graph.n(), 10);
        assert!(c.graph.is_tree());
        assert_eq!(c.graph.max_degree(), 3);
        assert!(classify_tree(&c.graph).unwrap().is_bad());
    }

    #[test]
    fn seven_path_centre_is_s3() {
        let c = construct(&spec("(s3 0 (s1b 1 (bad k2)) (s1b 1 (bad k2)))")).unwrap();
        assert_eq!(c.graph.n(), 7);
        assert_eq!(c.class, StatusLabel::GvPair(0, 3));
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(
            construct(&spec("(bad-from-s1 0 (s1b 0))")),
            Err(TreeError::InvalidSpec(_))
        ));
        assert!(matches!(
            construct(&spec("(path 3 0 k2 k2)")),
            Err(TreeError::InvalidSpec(_))
        ));
        assert!(matches!(
            construct(&spec("(s1b 2 (bad k2))")),
            Err(TreeError::InvalidSpec(_))
        ));
        assert!(matches!(
            construct(&spec("(s3 0 (s1b 0) (s1b 1 (bad k2)))")),
            Err(TreeError::InvalidSpec(_))
        ));
        assert!(matches!(
            construct(&spec("(minus-from-bad k2)")),
            Err(TreeError::InvalidSpec(_))
        ));
        assert!(matches!(construct(&spec("(cycle 8)")), Err(TreeError::InvalidSpec(_))));
    }

    #[test]
    fn parse_errors_have_positions() {
        assert!(matches!(
            "(s1b".parse::<ConstructionSpec>(),
            Err(TreeError::Parse { .. })
        ));
        assert!(matches!(
            "k3".parse::<ConstructionSpec>(),
            Err(TreeError::Parse { pos: 0, .. })
        ));
        assert!(matches!(
            "(foo 1)".parse::<ConstructionSpec>(),
            Err(TreeError::Parse { pos: 0, .. })
        ));
        assert!(matches!(
            "k2 k2".parse::<ConstructionSpec>(),
            Err(TreeError::Parse { pos: 3, .. })
        ));
        assert!(matches!(
            "(s1b x)".parse::<ConstructionSpec>(),
            Err(TreeError::Parse { pos: 5, .. })
        ));
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "k2",
            "(cycle 6)",
            "(s1b 1 (minus (minus-from-bad (path 1 0 k2 k2) 0)) (bad k2))",
            "(s3 0 (s1b 1 (bad k2)) (s1a 1 (s3 0 (s1b 1 (bad k2)) (s1b 1 (bad k2))) (s1b 1 (bad k2))))",
            "(glue k2 k2 1 0)",
            "(path 5 1 k2 k2 k2 k2 k2 k2 k2 k2)",
        ] {
            let s = spec(text);
            assert_eq!(s.to_string(), text);
            assert_eq!(spec(&s.to_string()), s);
        }
    }

    #[test]
    fn bad_path_with_cycles_is_bad() {
        let c = construct(&spec("(path 1 0 (cycle 6) k2)")).unwrap();
        assert!(!c.graph.is_tree());
        assert_eq!(c.graph.n(), 10);
    }

    #[test]
    fn generated_specs_are_valid() {
        let g = SpecGenerator::default();
        let mut rng = SplitMix64::new(1);
        for _ in 0..30 {
            let s = rng.below(3);
            let depth = rng.below(3);
            g.pair1(&mut rng, s, depth).validate().unwrap();
            g.bad(&mut rng, depth).validate().unwrap();
            g.pair3(&mut rng, s, depth).validate().unwrap();
        }
    }
}
