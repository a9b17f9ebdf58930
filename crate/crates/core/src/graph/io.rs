//! Plain-text edge lists.
//!
//! ```text
//! # optional comments
//! p <n> <m>
//! u v        (multiplicity 1)
//! u v k      (multiplicity k)
//! ```
//!
//! `m` is the number of edge lines. Vertices are 0-based. Repeated pairs are
//! merged; serialization emits each pair once, sorted.

use std::fmt::Write as _;

use thiserror::Error;

use super::{GraphError, MultiGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header line `p <n> <m>`")]
    MissingHeader,
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("zero multiplicity")]
    ZeroMultiplicity,
    #[error("header announces {expected} edge lines, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn number<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| err(line, ParseErrorKind::Malformed(format!("`{tok}` is not a number"))))
}

pub fn parse_edge_list(text: &str) -> Result<MultiGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        match header {
            None => {
                if toks.len() != 3 || toks[0] != "p" {
                    return Err(err(line, ParseErrorKind::MissingHeader));
                }
                header = Some((number(toks[1], line)?, number(toks[2], line)?));
            }
            Some((n, _)) => {
                if toks.len() != 2 && toks.len() != 3 {
                    return Err(err(line, ParseErrorKind::Malformed("expected `u v` or `u v k`".into())));
                }
                let u: usize = number(toks[0], line)?;
                let v: usize = number(toks[1], line)?;
                let k: u32 = if toks.len() == 3 { number(toks[2], line)? } else { 1 };
                for w in [u, v] {
                    if w >= n {
                        return Err(err(line, ParseErrorKind::VertexOutOfRange { vertex: w, n }));
                    }
                }
                if u == v {
                    return Err(err(line, ParseErrorKind::SelfLoop(u)));
                }
                if k == 0 {
                    return Err(err(line, ParseErrorKind::ZeroMultiplicity));
                }
                edges.push((u, v, k));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| err(last_line.max(1), ParseErrorKind::MissingHeader))?;
    if edges.len() != m {
        return Err(err(
            last_line,
            ParseErrorKind::EdgeCountMismatch {
                expected: m,
                found: edges.len(),
            },
        ));
    }
    MultiGraph::new(n, edges).map_err(|e| match e {
        GraphError::SelfLoop(v) => err(0, ParseErrorKind::SelfLoop(v)),
        other => err(0, ParseErrorKind::Malformed(other.to_string())),
    })
}

/// Canonical edge-list text: header, then one line per pair in sorted order,
/// multiplicity written only when it exceeds one.
pub fn to_edge_list(g: &MultiGraph) -> String {
    let mut out = String::new();
    writeln!(out, "p {} {}", g.n(), g.pair_count()).unwrap();
    for p in g.pairs() {
        if p.multiplicity == 1 {
            writeln!(out, "{} {}", p.u, p.v).unwrap();
        } else {
            writeln!(out, "{} {} {}", p.u, p.v, p.multiplicity).unwrap();
        }
    }
    out
}

/// Graphviz dump; parallel copies become parallel edges.
pub fn to_dot(g: &MultiGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        writeln!(out, "  {v};").unwrap();
    }
    for p in g.pairs() {
        for _ in 0..p.multiplicity {
            writeln!(out, "  {} -- {};", p.u, p.v).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn smallest_graph() {
        let g = parse_edge_list("p 2 1\n0 1").unwrap();
        assert_eq!((g.n(), g.pair_count(), g.multiplicity(0, 1)), (2, 1, 1));
    }

    #[test]
    fn multiplicity_syntax() {
        let g = parse_edge_list("p 2 1\n0 1 3").unwrap();
        assert_eq!(g.multiplicity(0, 1), 3);
        assert_eq!(g.copy_count(), 3);
    }

    #[test]
    fn triangle_parses_but_is_not_bipartite() {
        let g = parse_edge_list("p 3 3\n0 1\n1 2\n0 2").unwrap();
        assert!(matches!(g.bipartition(), Err(GraphError::NonBipartite { .. })));
    }

    #[test]
    fn comments_are_skipped() {
        let g = parse_edge_list("# hello\np 3 2\n# mid\n0 1\n1 2\n").unwrap();
        assert_eq!(g.pair_count(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_edge_list("p 3 2\n0 1\n1 1\n").unwrap_err();
        assert_eq!(e, err(3, ParseErrorKind::SelfLoop(1)));
        let e = parse_edge_list("p 3 1\n0 5\n").unwrap_err();
        assert_eq!(e, err(2, ParseErrorKind::VertexOutOfRange { vertex: 5, n: 3 }));
        let e = parse_edge_list("p 3 1\n0 1 0\n").unwrap_err();
        assert_eq!(e, err(2, ParseErrorKind::ZeroMultiplicity));
        let e = parse_edge_list("p 3 1\n0 x\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(matches!(e.kind, ParseErrorKind::Malformed(_)));
        let e = parse_edge_list("0 1\n").unwrap_err();
        assert_eq!(e, err(1, ParseErrorKind::MissingHeader));
        let e = parse_edge_list("p 3 2\n0 1\n").unwrap_err();
        assert!(matches!(
            e.kind,
            ParseErrorKind::EdgeCountMismatch { expected: 2, found: 1 }
        ));
    }

    #[test]
    fn serialization_is_sorted_and_merged() {
        let g = parse_edge_list("p 3 3\n2 1\n1 0\n0 1 2\n").unwrap();
        assert_eq!(to_edge_list(&g), "p 3 2\n0 1 3\n1 2\n");
    }

    fn arb_graph() -> impl Strategy<Value = MultiGraph> {
        (1usize..9).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n, 1u32..4), 0..20)
                .prop_map(move |es| MultiGraph::new(n, es.into_iter().filter(|(u, v, _)| u != v)).unwrap())
        })
    }

    proptest! {
        #[test]
        fn parse_after_serialize_is_identity(g in arb_graph()) {
            let text = to_edge_list(&g);
            prop_assert_eq!(parse_edge_list(&text).unwrap(), g);
        }

        #[test]
        fn lowpoint_bridges_match_naive(g in arb_graph()) {
            prop_assume!(g.copy_count() <= 12);
            prop_assert_eq!(g.bridges(), g.bridges_naive());
        }
    }
}
