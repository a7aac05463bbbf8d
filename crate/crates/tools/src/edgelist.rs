//! EdgeList text format: a header line `n m`, then `m` lines `u v` with
//! `0 <= u < v < n`. Lines starting with `#` are comments and blank lines
//! are skipped.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use rigidity_core::Graph;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> std::result::Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

fn two_numbers(line: usize, text: &str) -> std::result::Result<(usize, usize), ParseError> {
    let mut it = text.split_whitespace();
    let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
        return fail(line, format!("expected two integers, found {text:?}"));
    };
    match (a.parse(), b.parse()) {
        (Ok(a), Ok(b)) => Ok((a, b)),
        _ => fail(
            line,
            format!("expected two non-negative integers, found {text:?}"),
        ),
    }
}

pub fn parse_edge_list(text: &str) -> std::result::Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let Some((hline, header)) = lines.next() else {
        return fail(1, "missing header line \"n m\"");
    };
    let (n, m) = two_numbers(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    let mut last = hline;
    for (line, text) in lines {
        last = line;
        let (u, v) = two_numbers(line, text)?;
        if u == v {
            return fail(line, format!("self-loop at vertex {u}"));
        }
        if u >= n || v >= n {
            return fail(
                line,
                format!("vertex {} out of range for n = {n}", u.max(v)),
            );
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return fail(line, format!("duplicate edge {{{u}, {v}}}"));
        }
        if edges.len() == m {
            return fail(
                line,
                format!("more than the {m} edges announced in the header"),
            );
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return fail(
            last,
            format!("header announces {m} edges, found {}", edges.len()),
        );
    }
    Ok(Graph::new(n, edges).expect("edges validated above"))
}

/// Serializes with `comments` as leading `#` lines (typically provenance).
pub fn write_edge_list(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "# {c}").unwrap();
    }
    writeln!(out, "{} {}", g.n(), g.edge_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn read_graph_file(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text).map_err(|source| Error::Parse {
        path: path.to_path_buf(),
        source,
    })
}
