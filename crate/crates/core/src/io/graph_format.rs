//! Line-oriented graph files:
//!
//! ```text
//! graph 3
//! label 0 left
//! edge 0 1 1.5
//! edge 1 2 0.25
//! ```
//!
//! Indices are 0-based. Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::path::Path;

use super::float17;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// A whitespace-separated token with its 1-based column.
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_index(tok: &Token<'_>, line: usize, n: usize) -> Result<usize> {
    let index: usize = tok
        .text
        .parse()
        .map_err(|_| parse_error(line, tok.column, format!("invalid vertex index `{}`", tok.text)))?;
    if index >= n {
        return Err(parse_error(
            line,
            tok.column,
            format!("vertex index {index} out of range for {n} vertices"),
        ));
    }
    Ok(index)
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut labels: BTreeMap<usize, (String, usize)> = BTreeMap::new();
    // unordered pair -> (weight, line)
    let mut edges: BTreeMap<(usize, usize), (f64, usize)> = BTreeMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks = tokens(raw);
        let keyword = &toks[0];
        let Some((n, _)) = header else {
            if keyword.text != "graph" {
                return Err(parse_error(line, keyword.column, "expected `graph <vertex_count>` header"));
            }
            if toks.len() != 2 {
                return Err(parse_error(line, keyword.column, "header takes exactly one argument"));
            }
            let n: usize = toks[1].text.parse().map_err(|_| {
                parse_error(line, toks[1].column, format!("invalid vertex count `{}`", toks[1].text))
            })?;
            if n == 0 {
                return Err(parse_error(line, toks[1].column, "graph needs at least one vertex"));
            }
            header = Some((n, line));
            continue;
        };
        match keyword.text {
            "graph" => return Err(parse_error(line, keyword.column, "repeated `graph` header")),
            "label" => {
                if toks.len() < 3 {
                    return Err(parse_error(line, keyword.column, "expected `label <index> <text>`"));
                }
                let index = parse_index(&toks[1], line, n)?;
                let start = raw
                    .char_indices()
                    .nth(toks[2].column - 1)
                    .map_or(raw.len(), |(b, _)| b);
                let text = raw[start..].trim_end().to_owned();
                if let Some((_, first)) = labels.get(&index) {
                    return Err(parse_error(
                        line,
                        toks[1].column,
                        format!("vertex {index} already labelled on line {first}"),
                    ));
                }
                labels.insert(index, (text, line));
            }
            "edge" => {
                if toks.len() != 4 {
                    return Err(parse_error(line, keyword.column, "expected `edge <u> <v> <weight>`"));
                }
                let u = parse_index(&toks[1], line, n)?;
                let v = parse_index(&toks[2], line, n)?;
                if u == v {
                    return Err(parse_error(line, toks[2].column, format!("self-loop at vertex {u}")));
                }
                let w: f64 = toks[3].text.parse().map_err(|_| {
                    parse_error(line, toks[3].column, format!("invalid weight `{}`", toks[3].text))
                })?;
                if !(w.is_finite() && w > 0.0) {
                    return Err(parse_error(
                        line,
                        toks[3].column,
                        format!("edge weight must be positive and finite, got {}", toks[3].text),
                    ));
                }
                let key = (u.min(v), u.max(v));
                if let Some(&(previous, first)) = edges.get(&key) {
                    let message = if previous == w {
                        format!("duplicate edge ({u}, {v}), first listed on line {first}")
                    } else {
                        format!(
                            "conflicting weights for edge ({u}, {v}): {w} here, {previous} on line {first}"
                        )
                    };
                    return Err(parse_error(line, keyword.column, message));
                }
                edges.insert(key, (w, line));
            }
            other => {
                return Err(parse_error(line, keyword.column, format!("unknown directive `{other}`")));
            }
        }
    }

    let (n, header_line) = header.ok_or_else(|| parse_error(1, 1, "missing `graph <vertex_count>` header"))?;
    let names = (0..n)
        .map(|i| labels.remove(&i).map_or_else(|| i.to_string(), |(s, _)| s))
        .collect();
    WeightedGraph::with_labels(names, edges.into_iter().map(|((u, v), (w, _))| (u, v, w)))
        .map_err(|e| parse_error(header_line, 1, e.to_string()))
}

pub fn read_graph(path: &Path) -> Result<WeightedGraph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

/// Canonical text form: header, non-default labels, edges in index order
/// with weights printed to 17 significant digits.
pub fn emit_graph(graph: &WeightedGraph) -> String {
    let mut out = format!("graph {}\n", graph.vertex_count());
    for (i, label) in graph.labels().iter().enumerate() {
        if *label != i.to_string() {
            out.push_str(&format!("label {i} {label}\n"));
        }
    }
    for &(u, v, w) in graph.edges() {
        out.push_str(&format!("edge {u} {v} {}\n", float17(w)));
    }
    out
}
