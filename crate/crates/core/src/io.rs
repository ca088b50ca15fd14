//! Line-oriented text formats.
//!
//! Graph:
//! ```text
//! # comment lines start with '#'
//! n m
//! u v w s        (m lines; 0-based ids, decimal weight, s in {+,-})
//! ```
//! Clustering: `n` lines `u k` (vertex, cluster id).
//!
//! Cut problem: a header line `st s t`, `multiway k t1 .. tk` or
//! `multicut k s1 t1 .. sk tk`, followed by a graph block whose edge lines
//! may omit the sign (a sign, if present, must be `+`).

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Clustering, GraphError, Sign, SignedEdge, SignedGraph};
use crate::reductions::{CutKind, CutProblem};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Truncated(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid cut problem: {0}")]
    Cut(String),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| syntax(line, format!("invalid {what} `{tok}`")))
}

fn parse_graph_lines<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    require_sign: bool,
) -> Result<SignedGraph, ParseError> {
    let (hl, header) = lines.next().ok_or_else(|| ParseError::Truncated("missing `n m` header".into()))?;
    let mut toks = header.split_whitespace();
    let n: usize = parse_num(toks.next(), hl, "vertex count")?;
    let m: usize = parse_num(toks.next(), hl, "edge count")?;
    if toks.next().is_some() {
        return Err(syntax(hl, "trailing tokens after `n m`"));
    }
    let mut edges = Vec::with_capacity(m);
    for k in 0..m {
        let (ln, l) = lines.next().ok_or_else(|| ParseError::Truncated(format!("expected {m} edges, found {k}")))?;
        let mut toks = l.split_whitespace();
        let u = parse_num(toks.next(), ln, "endpoint")?;
        let v = parse_num(toks.next(), ln, "endpoint")?;
        let w: f64 = parse_num(toks.next(), ln, "weight")?;
        let sign = match toks.next() {
            Some("+") => Sign::Plus,
            Some("-") if require_sign => Sign::Minus,
            Some("-") => return Err(syntax(ln, "cut-problem edges are unsigned (`+` or omitted)")),
            Some(other) => return Err(syntax(ln, format!("invalid sign `{other}`"))),
            None if require_sign => return Err(syntax(ln, "missing sign")),
            None => Sign::Plus,
        };
        if toks.next().is_some() {
            return Err(syntax(ln, "trailing tokens on edge line"));
        }
        edges.push(SignedEdge::new(u, v, w, sign));
    }
    Ok(SignedGraph::new(n, edges)?)
}

fn ensure_consumed<'a>(mut lines: impl Iterator<Item = (usize, &'a str)>) -> Result<(), ParseError> {
    match lines.next() {
        Some((ln, _)) => Err(syntax(ln, "unexpected content after the last record")),
        None => Ok(()),
    }
}

pub fn parse_graph(text: &str) -> Result<SignedGraph, ParseError> {
    let mut lines = content_lines(text);
    let g = parse_graph_lines(&mut lines, true)?;
    ensure_consumed(lines)?;
    Ok(g)
}

fn write_edges(out: &mut String, graph: &SignedGraph, with_sign: bool) {
    writeln!(out, "{} {}", graph.n(), graph.m()).unwrap();
    for e in graph.edges() {
        if with_sign {
            writeln!(out, "{} {} {} {}", e.u, e.v, e.weight, e.sign).unwrap();
        } else {
            writeln!(out, "{} {} {}", e.u, e.v, e.weight).unwrap();
        }
    }
}

pub fn write_graph(graph: &SignedGraph) -> String {
    let mut out = String::new();
    write_edges(&mut out, graph, true);
    out
}

/// Parses `u k` lines; every vertex of `0..n` must appear exactly once.
pub fn parse_clustering(text: &str, n: usize) -> Result<Clustering, ParseError> {
    let mut labels: Vec<Option<usize>> = vec![None; n];
    for (ln, l) in content_lines(text) {
        let mut toks = l.split_whitespace();
        let u: usize = parse_num(toks.next(), ln, "vertex")?;
        let k: usize = parse_num(toks.next(), ln, "cluster id")?;
        if toks.next().is_some() {
            return Err(syntax(ln, "trailing tokens on clustering line"));
        }
        if u >= n {
            return Err(syntax(ln, format!("vertex {u} out of range for n = {n}")));
        }
        if labels[u].replace(k).is_some() {
            return Err(ParseError::Graph(GraphError::DuplicateVertex { vertex: u }));
        }
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(vertex, l)| l.ok_or(ParseError::Graph(GraphError::MissingVertex { vertex })))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Clustering::from_labels(&labels))
}

pub fn write_clustering(clustering: &Clustering) -> String {
    let mut out = String::new();
    for (u, k) in clustering.labels().iter().enumerate() {
        writeln!(out, "{u} {k}").unwrap();
    }
    out
}

pub fn parse_cut_problem(text: &str) -> Result<CutProblem, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| ParseError::Truncated("missing cut-problem header".into()))?;
    let mut toks = header.split_whitespace();
    let kind_tok = toks.next().unwrap_or_default();
    let kind = match kind_tok {
        "st" => {
            let s = parse_num(toks.next(), hl, "s")?;
            let t = parse_num(toks.next(), hl, "t")?;
            CutKind::St { s, t }
        }
        "multiway" => {
            let k: usize = parse_num(toks.next(), hl, "terminal count")?;
            let terminals = (0..k).map(|_| parse_num(toks.next(), hl, "terminal")).collect::<Result<_, _>>()?;
            CutKind::Multiway(terminals)
        }
        "multicut" => {
            let k: usize = parse_num(toks.next(), hl, "pair count")?;
            let mut pairs = Vec::with_capacity(k);
            for _ in 0..k {
                let s = parse_num(toks.next(), hl, "pair source")?;
                let t = parse_num(toks.next(), hl, "pair sink")?;
                pairs.push((s, t));
            }
            CutKind::Multicut(pairs)
        }
        other => return Err(syntax(hl, format!("unknown cut problem `{other}` (st, multiway, multicut)"))),
    };
    if toks.next().is_some() {
        return Err(syntax(hl, "trailing tokens on cut-problem header"));
    }
    let base = parse_graph_lines(&mut lines, false)?;
    ensure_consumed(lines)?;
    CutProblem::new(base, kind).map_err(|e| ParseError::Cut(e.to_string()))
}

pub fn write_cut_problem(problem: &CutProblem) -> String {
    let mut out = String::new();
    match problem.kind() {
        CutKind::St { s, t } => writeln!(out, "st {s} {t}").unwrap(),
        CutKind::Multiway(ts) => {
            let list: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
            writeln!(out, "multiway {} {}", ts.len(), list.join(" ")).unwrap();
        }
        CutKind::Multicut(pairs) => {
            let list: Vec<String> = pairs.iter().map(|(s, t)| format!("{s} {t}")).collect();
            writeln!(out, "multicut {} {}", pairs.len(), list.join(" ")).unwrap();
        }
    }
    write_edges(&mut out, problem.base(), false);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{gap_cycle, random_signed, random_st_problem, RandomSignedParams};
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments_and_blank_lines() {
        let text = "# tiny\n\n3 2\n0 1 1 +\n# mid\n1 2 2.5 -\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge(1), &SignedEdge::minus(1, 2, 2.5));
        assert_eq!(write_graph(&g), "3 2\n0 1 1 +\n1 2 2.5 -\n");
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_graph("2 1\n0 1 x +\n").unwrap_err();
        assert_eq!(err, ParseError::Syntax { line: 2, message: "invalid weight `x`".into() });
        assert!(matches!(parse_graph("2 2\n0 1 1 +\n"), Err(ParseError::Truncated(_))));
        assert!(matches!(parse_graph("2 1\n0 1 1 *\n"), Err(ParseError::Syntax { line: 2, .. })));
        assert!(matches!(parse_graph("2 1\n0 1 1 +\n1 0 1 +\n"), Err(ParseError::Syntax { line: 3, .. })));
        assert!(matches!(parse_graph("2 1\n0 0 1 +\n"), Err(ParseError::Graph(GraphError::SelfLoop { .. }))));
    }

    #[test]
    fn clustering_format() {
        let c = Clustering::from_labels(&[0, 1, 0]);
        let text = write_clustering(&c);
        assert_eq!(text, "0 0\n1 1\n2 0\n");
        assert_eq!(parse_clustering(&text, 3).unwrap(), c);
        assert!(parse_clustering("0 0\n1 0\n", 3).is_err());
        assert!(parse_clustering("0 0\n0 1\n1 0\n", 2).is_err());
    }

    #[test]
    fn cut_problem_format() {
        let text = "st 0 2\n3 2\n0 1 1\n1 2 1 +\n";
        let p = parse_cut_problem(text).unwrap();
        assert_eq!(p.kind(), &CutKind::St { s: 0, t: 2 });
        assert_eq!(write_cut_problem(&p), "st 0 2\n3 2\n0 1 1\n1 2 1\n");
        let p = parse_cut_problem("multicut 2 0 1 2 3\n4 0\n").unwrap();
        assert_eq!(p.kind(), &CutKind::Multicut(vec![(0, 1), (2, 3)]));
        let p = parse_cut_problem("multiway 3 0 1 2\n4 1\n0 3 1\n").unwrap();
        assert_eq!(p.kind(), &CutKind::Multiway(vec![0, 1, 2]));
        assert!(parse_cut_problem("st 0 2\n3 1\n0 1 1 -\n").is_err());
        assert!(matches!(parse_cut_problem("st 0 0\n3 0\n"), Err(ParseError::Cut(_))));
        assert!(parse_cut_problem("ring 0 1\n2 0\n").is_err());
    }

    proptest! {
        #[test]
        fn graph_round_trip(n in 1usize..9, seed in any::<u64>(), plus in 0.0f64..=1.0) {
            let g = random_signed(&RandomSignedParams::new(n, plus, 9), seed);
            let back = parse_graph(&write_graph(&g)).unwrap();
            prop_assert_eq!(back.edges(), g.edges());
            prop_assert_eq!(back.n(), g.n());
        }

        #[test]
        fn cut_problem_round_trip(n in 2usize..9, seed in any::<u64>()) {
            let p = random_st_problem(n, 0.6, 4, seed).unwrap();
            let back = parse_cut_problem(&write_cut_problem(&p)).unwrap();
            prop_assert_eq!(back.kind(), p.kind());
            prop_assert_eq!(back.base().edges(), p.base().edges());
        }
    }

    #[test]
    fn gap_cycle_file_has_ten_edges() {
        let text = write_graph(&gap_cycle(10).unwrap());
        assert_eq!(text.lines().count(), 11);
        assert!(text.ends_with("9 0 1 -\n"));
    }
}
