//! Plain-text instance formats.
//!
//! ```text
//! # optional comment lines
//! n m
//! u v        (m lines, arc u -> v, 0-based)
//! ```
//!
//! Tree files carry the extra header line `# tree`. Writers emit arcs in
//! lexicographic order, so `write(parse(s)) == s` for any file a writer produced.

use std::fmt::Write as _;

use thiserror::Error;

use crate::digraph::{Digraph, DigraphError};
use crate::tree::{OrientedTree, TreeError};

pub const TREE_HEADER: &str = "# tree";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("expected {expected} arcs, found {found}")]
    ArcCount { expected: usize, found: usize },
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

fn parse_pair(line_no: usize, line: &str) -> Result<(usize, usize), ParseError> {
    let mut it = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize, ParseError> {
        let tok = it.next().ok_or_else(|| syntax(line_no, format!("missing {what}")))?;
        tok.parse::<usize>()
            .map_err(|_| syntax(line_no, format!("invalid {what} {tok:?}")))
    };
    let a = next("first integer")?;
    let b = next("second integer")?;
    if it.next().is_some() {
        return Err(syntax(line_no, "trailing tokens"));
    }
    Ok((a, b))
}

/// Parses the header and arc lines shared by both formats.
pub fn parse_arc_list(text: &str) -> Result<(usize, Vec<(usize, usize)>), ParseError> {
    let mut header = None;
    let mut arcs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let pair = parse_pair(line_no, line)?;
        if header.is_none() {
            header = Some(pair);
        } else {
            arcs.push(pair);
        }
    }
    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if arcs.len() != m {
        return Err(ParseError::ArcCount { expected: m, found: arcs.len() });
    }
    Ok((n, arcs))
}

pub fn parse_digraph(text: &str) -> Result<Digraph, ParseError> {
    let (n, arcs) = parse_arc_list(text)?;
    Ok(Digraph::new(n, arcs)?)
}

pub fn parse_tree(text: &str) -> Result<OrientedTree, ParseError> {
    let (n, arcs) = parse_arc_list(text)?;
    Ok(OrientedTree::with_vertex_count(n, &arcs)?)
}

fn write_arcs(out: &mut String, n: usize, arcs: &[(usize, usize)]) {
    let _ = writeln!(out, "{} {}", n, arcs.len());
    for &(u, v) in arcs {
        let _ = writeln!(out, "{u} {v}");
    }
}

pub fn write_digraph(d: &Digraph) -> String {
    let mut out = String::new();
    write_arcs(&mut out, d.n(), d.arcs());
    out
}

pub fn write_tree(t: &OrientedTree) -> String {
    let mut out = String::new();
    out.push_str(TREE_HEADER);
    out.push('\n');
    write_arcs(&mut out, t.n(), t.arcs());
    out
}
