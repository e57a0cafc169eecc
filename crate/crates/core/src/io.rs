//! Reading and writing graphs: DIMACS `.col` and plain edge lists.
//!
//! DIMACS uses 1-based vertex ids (`p edge N M`, `e u v`, `c` comments).
//! Edge lists hold one `u v` pair per line with 0-based ids; blank lines and
//! lines starting with `#` are skipped.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::graph::{Built, Graph, GraphError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("missing `p edge N M` problem line")]
    MissingProblemLine,
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Input formats understood by [`parse`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dimacs,
    EdgeList,
}

impl Format {
    /// `.col` and `.dimacs` files are DIMACS, anything else is an edge list.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("col") | Some("dimacs") => Format::Dimacs,
            _ => Format::EdgeList,
        }
    }

    /// Guesses the format of in-memory text: a `p ` line means DIMACS.
    pub fn sniff(text: &str) -> Format {
        let dimacs = text.lines().map(str::trim_start).any(|l| l.starts_with("p ") || l.starts_with("e "));
        if dimacs {
            Format::Dimacs
        } else {
            Format::EdgeList
        }
    }
}

pub fn parse(text: &str, format: Format) -> Result<Built, ParseError> {
    match format {
        Format::Dimacs => parse_dimacs(text),
        Format::EdgeList => parse_edge_list(text),
    }
}

fn malformed(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Malformed { line, msg: msg.into() }
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| malformed(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| malformed(line, format!("{what} `{tok}` is not a non-negative integer")))
}

fn no_trailing(tok: Option<&str>, line: usize) -> Result<(), ParseError> {
    match tok {
        Some(extra) => Err(malformed(line, format!("trailing token `{extra}`"))),
        None => Ok(()),
    }
}

pub fn parse_dimacs(text: &str) -> Result<Built, ParseError> {
    let mut n = None;
    let mut declared_edges = 0;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(malformed(line, "second problem line"));
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    other => return Err(malformed(line, format!("unsupported problem type {other:?}"))),
                }
                n = Some(number(toks.next(), line, "vertex count")?);
                declared_edges = number(toks.next(), line, "edge count")?;
                no_trailing(toks.next(), line)?;
            }
            Some("e") => {
                let nv = n.ok_or(ParseError::MissingProblemLine)?;
                let u = number(toks.next(), line, "endpoint")?;
                let v = number(toks.next(), line, "endpoint")?;
                no_trailing(toks.next(), line)?;
                if u == 0 || v == 0 || u > nv || v > nv {
                    return Err(malformed(line, format!("vertex out of range 1..={nv}")));
                }
                if u == v {
                    return Err(ParseError::Graph {
                        line,
                        source: GraphError::SelfLoop(u - 1),
                    });
                }
                edges.push((u - 1, v - 1));
            }
            Some(tag) => return Err(malformed(line, format!("unknown line tag `{tag}`"))),
        }
    }
    let n = n.ok_or(ParseError::MissingProblemLine)?;
    if edges.len() != declared_edges {
        log::warn!(
            "problem line declares {declared_edges} edges but {} edge lines were read",
            edges.len()
        );
    }
    Graph::build(n, edges).map_err(|source| ParseError::Graph { line: last_line, source })
}

pub fn parse_edge_list(text: &str) -> Result<Built, ParseError> {
    let mut edges = Vec::new();
    let mut n = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let mut toks = body.split_whitespace();
        let u = number(toks.next(), line, "endpoint")?;
        let v = number(toks.next(), line, "endpoint")?;
        no_trailing(toks.next(), line)?;
        if u == v {
            return Err(ParseError::Graph {
                line,
                source: GraphError::SelfLoop(u),
            });
        }
        n = n.max(u + 1).max(v + 1);
        edges.push((u, v));
    }
    Graph::build(n, edges).map_err(|source| ParseError::Graph { line: 0, source })
}

/// Reads a file, choosing the format from its extension.
pub fn read_file(path: &Path) -> Result<Built, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse(&text, Format::from_path(path))
}

pub fn to_dimacs(g: &Graph, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "c {line}");
        }
    }
    let _ = writeln!(out, "p edge {} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// Plain edge list. Trailing isolated vertices cannot be represented.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Degree sequence helper used by corpus validation and reports.
pub fn degree_set(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d.dedup();
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_triangle() {
        let b = parse_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(b.graph.n(), 3);
        assert_eq!(b.graph.edge_count(), 3);
        assert!(b.duplicates.is_empty());
    }

    #[test]
    fn dimacs_duplicate_is_reported() {
        let b = parse_dimacs("p edge 3 3\ne 1 2\ne 2 1\ne 2 3\n").unwrap();
        assert_eq!(b.graph.edge_count(), 2);
        assert_eq!(b.duplicates, vec![(0, 1)]);
    }

    #[test]
    fn dimacs_errors() {
        assert!(matches!(parse_dimacs("e 1 2\n"), Err(ParseError::MissingProblemLine)));
        assert!(matches!(parse_dimacs(""), Err(ParseError::MissingProblemLine)));
        assert!(matches!(
            parse_dimacs("p edge 2 1\ne 1 3\n"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 2 1\ne 2 2\n"),
            Err(ParseError::Graph { line: 2, source: GraphError::SelfLoop(1) })
        ));
        assert!(matches!(parse_dimacs("p edge 2 1\nx 1 2\n"), Err(ParseError::Malformed { .. })));
        assert!(matches!(parse_dimacs("p edge 2 1\ne 1 b\n"), Err(ParseError::Malformed { .. })));
    }

    #[test]
    fn edge_list_self_loop() {
        assert!(matches!(
            parse_edge_list("0 1\n2 2\n"),
            Err(ParseError::Graph { line: 2, source: GraphError::SelfLoop(2) })
        ));
    }

    #[test]
    fn edge_list_comments_and_blank() {
        let b = parse_edge_list("# c5\n0 1\n1 2\n\n2 3\n3 4\n4 0\n").unwrap();
        assert_eq!(b.graph.n(), 5);
        assert_eq!(b.graph.edge_count(), 5);
    }

    #[test]
    fn sniffing() {
        assert_eq!(Format::sniff("p edge 1 0\n"), Format::Dimacs);
        assert_eq!(Format::sniff("0 1\n"), Format::EdgeList);
        assert_eq!(Format::from_path(Path::new("a.col")), Format::Dimacs);
        assert_eq!(Format::from_path(Path::new("a.txt")), Format::EdgeList);
    }
}
