//! Edge-list text form.
//!
//! ```text
//! # vertices 7 branching 3
//! 0 1
//! 0 2
//! ```
//!
//! One undirected edge `u v` per line, vertices as non-negative integers.
//! Blank lines and other `#` comments are ignored. Without a header the
//! vertex set is `0..=max id` and the target branching is 2.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use super::{GraphError, PseudoplaneGraph, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseGraphError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseGraphError {
    ParseGraphError::Syntax { line, message: message.into() }
}

fn vertex(token: &str, line: usize) -> Result<usize, ParseGraphError> {
    let v: usize = token.parse().map_err(|_| syntax(line, format!("{token:?} is not a vertex id")))?;
    if v >= MAX_VERTICES {
        return Err(syntax(line, format!("vertex {v} exceeds the limit {}", MAX_VERTICES - 1)));
    }
    Ok(v)
}

impl PseudoplaneGraph {
    pub fn parse_edge_list(input: &str) -> Result<Self, ParseGraphError> {
        let mut declared: Option<usize> = None;
        let mut branching = 2;
        let mut edges = Vec::new();
        let mut seen_edge = false;
        for (index, raw) in input.lines().enumerate() {
            let line = index + 1;
            let text = raw.trim();
            if let Some(comment) = text.strip_prefix('#') {
                let words: Vec<&str> = comment.split_whitespace().collect();
                if words.first() == Some(&"vertices") {
                    if seen_edge || declared.is_some() {
                        return Err(syntax(line, "header must come first"));
                    }
                    match words.as_slice() {
                        ["vertices", n, "branching", b] => {
                            let n: usize = n.parse().map_err(|_| syntax(line, "bad vertex count"))?;
                            if n > MAX_VERTICES {
                                return Err(GraphError::TooLarge.into());
                            }
                            declared = Some(n);
                            branching = b.parse().map_err(|_| syntax(line, "bad branching"))?;
                        }
                        _ => return Err(syntax(line, "expected `# vertices N branching B`")),
                    }
                }
                continue;
            }
            if text.is_empty() {
                continue;
            }
            let mut tokens = text.split_whitespace();
            let (Some(u), Some(v), None) = (tokens.next(), tokens.next(), tokens.next()) else {
                return Err(syntax(line, "expected `u v`"));
            };
            edges.push((vertex(u, line)?, vertex(v, line)?));
            seen_edge = true;
        }
        let needed = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        let vertices = declared.unwrap_or(needed);
        Ok(PseudoplaneGraph::from_edges(vertices, &edges, branching)?)
    }

    /// Header line followed by each edge once, ascending.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# vertices {} branching {}\n", self.vertex_count(), self.target_branching());
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").expect("writing to a string");
        }
        out
    }
}

impl FromStr for PseudoplaneGraph {
    type Err = ParseGraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PseudoplaneGraph::parse_edge_list(s)
    }
}
