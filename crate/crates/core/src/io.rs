//! Line-oriented text format for bipartite graphs.
//!
//! ```text
//! c optional comments
//! p bip <x_size> <y_size> <edge_count>
//! e <x_id> <y_id>
//! ```
//!
//! X ids are `0..x_size`, Y ids are `x_size..x_size + y_size`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{BipartiteGraph, GraphError, Side};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("input is not valid UTF-8")]
    Encoding,
    #[error("missing `p bip` header")]
    MissingHeader,
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("header appears twice")]
    DuplicateHeader,
    #[error("malformed edge line: {0}")]
    BadEdge(String),
    #[error("vertex id {0} out of range")]
    OutOfRange(usize),
    #[error("edge {0} {1} does not cross the bipartition")]
    IntraSide(usize, usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("unknown line type: {0}")]
    UnknownLine(String),
    #[error("header declares {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error("{0}")]
    Graph(GraphError),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn parse_usize(tok: Option<&str>) -> Option<usize> {
    tok.and_then(|t| t.parse().ok())
}

pub fn parse_graph(bytes: &[u8]) -> Result<BipartiteGraph, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|_| err(0, ParseErrorKind::Encoding))?;
    let mut graph: Option<(BipartiteGraph, usize)> = None;
    let mut found = 0usize;
    let mut last_line = 0;

    for (idx, raw) in text.split('\n').enumerate() {
        let lineno = idx + 1;
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        last_line = lineno;
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("p") => {
                if graph.is_some() {
                    return Err(err(lineno, ParseErrorKind::DuplicateHeader));
                }
                if toks.next() != Some("bip") {
                    return Err(err(lineno, ParseErrorKind::BadHeader(line.to_string())));
                }
                let nums: Vec<Option<usize>> = (0..3).map(|_| parse_usize(toks.next())).collect();
                if toks.next().is_some() || nums.iter().any(Option::is_none) {
                    return Err(err(lineno, ParseErrorKind::BadHeader(line.to_string())));
                }
                let g = BipartiteGraph::empty(nums[0].unwrap(), nums[1].unwrap())
                    .map_err(|e| err(lineno, ParseErrorKind::Graph(e)))?;
                graph = Some((g, nums[2].unwrap()));
            }
            Some("e") => {
                let (g, _) = graph
                    .as_mut()
                    .ok_or_else(|| err(lineno, ParseErrorKind::MissingHeader))?;
                let a = parse_usize(toks.next());
                let b = parse_usize(toks.next());
                let (a, b) = match (a, b, toks.next()) {
                    (Some(a), Some(b), None) => (a, b),
                    _ => return Err(err(lineno, ParseErrorKind::BadEdge(line.to_string()))),
                };
                for v in [a, b] {
                    if v >= g.order() {
                        return Err(err(lineno, ParseErrorKind::OutOfRange(v)));
                    }
                }
                if g.side(a) == g.side(b) || g.side(a) != Side::X {
                    return Err(err(lineno, ParseErrorKind::IntraSide(a, b)));
                }
                if g.has_edge(a, b) {
                    return Err(err(lineno, ParseErrorKind::DuplicateEdge(a, b)));
                }
                g.set_edge(a, b);
                found += 1;
            }
            Some(other) => {
                return Err(err(lineno, ParseErrorKind::UnknownLine(other.to_string())));
            }
            None => unreachable!(),
        }
    }

    let (g, declared) = graph.ok_or_else(|| err(last_line.max(1), ParseErrorKind::MissingHeader))?;
    if declared != found {
        return Err(err(last_line, ParseErrorKind::EdgeCount { declared, found }));
    }
    Ok(g)
}

/// Emits the header and edges in ascending `(x, y)` order, LF-terminated.
pub fn serialize_graph(g: &BipartiteGraph) -> String {
    let mut out = String::new();
    writeln!(out, "p bip {} {} {}", g.x_size(), g.y_size(), g.edge_count()).unwrap();
    for (x, y) in g.edges() {
        writeln!(out, "e {x} {y}").unwrap();
    }
    out
}
