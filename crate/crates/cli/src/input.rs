//! Line-oriented graph input: graph6 lines or edge-list blocks.
//!
//! Edge-list blocks start with a line `n m` followed by `m` lines `u v`.
//! Text after `#` is a comment; blank lines are ignored. The format of a
//! whole input is decided by its first meaningful line: two unsigned integers
//! select edge lists, anything else graph6.

use std::fmt::Write as _;

use pendant_spectra_core::Graph;
use thiserror::Error;

use crate::graph6::{parse_graph6, to_graph6, Graph6Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Graph6,
    EdgeList,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("line {line}: {source}")]
    Graph6 { line: usize, source: Graph6Error },
    #[error("line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        source: pendant_spectra_core::Error,
    },
}

impl InputError {
    pub fn line(&self) -> usize {
        match self {
            InputError::Graph6 { line, .. } | InputError::EdgeList { line, .. } | InputError::Graph { line, .. } => *line,
        }
    }
}

/// A parsed graph and the (1-based) line it started on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputGraph {
    pub line: usize,
    pub graph: Graph,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_pair(s: &str) -> Option<(usize, usize)> {
    let mut it = s.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

pub fn detect_format(text: &str) -> InputFormat {
    text.lines()
        .map(strip_comment)
        .find(|l| !l.is_empty())
        .and_then(parse_pair)
        .map_or(InputFormat::Graph6, |_| InputFormat::EdgeList)
}

/// Parses every graph in `text`, in input order. A failing graph6 line does
/// not stop the ones after it; a malformed edge-list block ends parsing.
pub fn read_graphs(text: &str) -> Vec<Result<InputGraph, InputError>> {
    match detect_format(text) {
        InputFormat::Graph6 => read_graph6_lines(text),
        InputFormat::EdgeList => read_edge_lists(text),
    }
}

fn read_graph6_lines(text: &str) -> Vec<Result<InputGraph, InputError>> {
    text.lines()
        .enumerate()
        .filter_map(|(idx, raw)| {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                return None;
            }
            Some(
                parse_graph6(trimmed)
                    .map(|graph| InputGraph { line, graph })
                    .map_err(|source| InputError::Graph6 { line, source }),
            )
        })
        .collect()
}

fn read_edge_lists(text: &str) -> Vec<Result<InputGraph, InputError>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(idx, raw)| (idx + 1, strip_comment(raw)))
        .filter(|(_, l)| !l.is_empty());
    let mut out = Vec::new();
    while let Some((header_line, header)) = lines.next() {
        let Some((n, m)) = parse_pair(header) else {
            out.push(Err(InputError::EdgeList {
                line: header_line,
                message: format!("expected \"n m\" header, found {header:?}"),
            }));
            break;
        };
        let mut pairs = Vec::with_capacity(m);
        let mut failed = None;
        for _ in 0..m {
            match lines.next() {
                Some((line, l)) => match parse_pair(l) {
                    Some(p) => pairs.push(p),
                    None => {
                        failed = Some(InputError::EdgeList {
                            line,
                            message: format!("expected \"u v\" edge, found {l:?}"),
                        });
                        break;
                    }
                },
                None => {
                    failed = Some(InputError::EdgeList {
                        line: header_line,
                        message: format!("block declares {m} edges but input ended after {}", pairs.len()),
                    });
                    break;
                }
            }
        }
        if let Some(err) = failed {
            out.push(Err(err));
            break;
        }
        out.push(
            Graph::from_edge_list(n, &pairs)
                .map(|graph| InputGraph {
                    line: header_line,
                    graph,
                })
                .map_err(|source| InputError::Graph {
                    line: header_line,
                    source,
                }),
        );
    }
    out
}

/// Renders a graph as an edge-list block.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.order(), g.size());
    for &(u, v) in g.edges() {
        writeln!(s, "{u} {v}").expect("writing to a String");
    }
    s
}

/// graph6 text of a graph that passed the size checks.
pub fn graph6_or_empty(g: &Graph) -> String {
    to_graph6(g).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_formats() {
        assert_eq!(detect_format("A_\n"), InputFormat::Graph6);
        assert_eq!(detect_format("# header\n\n2 1\n0 1\n"), InputFormat::EdgeList);
        assert_eq!(detect_format(""), InputFormat::Graph6);
    }

    #[test]
    fn graph6_lines_with_errors() {
        let got = read_graphs("A_\n\n# comment\nC?\nE?\nCs\n");
        assert_eq!(got.len(), 4);
        assert_eq!(got[0].as_ref().unwrap().line, 1);
        assert_eq!(got[1].as_ref().unwrap().line, 4);
        assert_eq!(got[2].as_ref().unwrap_err().line(), 5);
        assert_eq!(got[3].as_ref().unwrap().graph.size(), 3);
    }

    #[test]
    fn edge_list_blocks() {
        let text = "3 2 # path\n0 1\n1 2\n\n2 1\n1 0\n";
        let got: Vec<_> = read_graphs(text).into_iter().map(Result::unwrap).collect();
        assert_eq!(got.len(), 2);
        assert_eq!(got[0].graph.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(got[1].line, 5);
        assert_eq!(to_edge_list(&got[0].graph), "3 2\n0 1\n1 2\n");
    }

    #[test]
    fn edge_list_errors() {
        let got = read_graphs("3 2\n0 1\nx y\n");
        assert!(matches!(&got[0], Err(InputError::EdgeList { line: 3, .. })));
        let got = read_graphs("3 2\n0 1\n");
        assert!(matches!(&got[0], Err(InputError::EdgeList { line: 1, .. })));
        let got = read_graphs("3 1\n0 0\n");
        assert!(matches!(&got[0], Err(InputError::Graph { line: 1, .. })));
    }
}
