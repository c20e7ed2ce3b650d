//! Line-oriented text format:
//!
//! ```text
//! # comment
//! p hg <n> <m>
//! e <v1> <v2> ... <vk>
//! ```
//!
//! Vertex ids are 0-based. The writer emits edges in lexicographic order.

use std::io::{BufRead, Write};

use super::{Hypergraph, HypergraphError};

fn parse_err(line: usize, message: impl Into<String>) -> HypergraphError {
    HypergraphError::Parse { line, message: message.into() }
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, HypergraphError> {
    load_hypergraph(text.as_bytes())
}

pub fn load_hypergraph<R: BufRead>(reader: R) -> Result<Hypergraph, HypergraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    let mut last_line = 0;

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = line.map_err(|e| HypergraphError::Io(e.to_string()))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match tokens.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(lineno, "duplicate header"));
                }
                if tokens.next() != Some("hg") {
                    return Err(parse_err(lineno, "malformed header, expected `p hg <n> <m>`"));
                }
                let mut num = || -> Result<usize, HypergraphError> {
                    tokens
                        .next()
                        .ok_or_else(|| parse_err(lineno, "malformed header, expected `p hg <n> <m>`"))?
                        .parse()
                        .map_err(|_| parse_err(lineno, "header counts must be non-negative integers"))
                };
                let n = num()?;
                let m = num()?;
                if tokens.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens after header"));
                }
                header = Some((n, m));
            }
            Some("e") => {
                let Some((n, _)) = header else {
                    return Err(parse_err(lineno, "edge before `p hg` header"));
                };
                let mut edge = Vec::new();
                for tok in tokens {
                    let v: usize = tok
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("invalid vertex id `{tok}`")))?;
                    if v >= n {
                        return Err(parse_err(lineno, format!("vertex id {v} out of range (n = {n})")));
                    }
                    if edge.contains(&v) {
                        return Err(parse_err(lineno, format!("repeated vertex {v} in edge")));
                    }
                    edge.push(v);
                }
                if edge.len() < 2 {
                    return Err(parse_err(lineno, "edge needs at least 2 vertices"));
                }
                edges.push(edge);
                edge_lines.push(lineno);
            }
            Some(other) => {
                return Err(parse_err(lineno, format!("unknown record type `{other}`")));
            }
            None => unreachable!("blank lines are skipped"),
        }
    }

    let Some((n, m)) = header else {
        return Err(parse_err(last_line.max(1), "missing `p hg <n> <m>` header"));
    };
    if edges.len() != m {
        return Err(parse_err(
            last_line.max(1),
            format!("header declares {m} edges but {} were given", edges.len()),
        ));
    }
    Hypergraph::new(n, &edges).map_err(|err| match err {
        HypergraphError::DuplicateEdge { edge, first } => {
            parse_err(edge_lines[edge], format!("duplicate edge (same as line {})", edge_lines[first]))
        }
        other => other,
    })
}

pub fn write_hypergraph<W: Write>(g: &Hypergraph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "p hg {} {}", g.n(), g.edge_count())?;
    let mut edges: Vec<&Vec<usize>> = g.edges().iter().collect();
    edges.sort();
    for e in edges {
        let ids: Vec<String> = e.iter().map(ToString::to_string).collect();
        writeln!(out, "e {}", ids.join(" "))?;
    }
    Ok(())
}

impl std::fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut buf = Vec::new();
        write_hypergraph(self, &mut buf).map_err(|_| std::fmt::Error)?;
        f.write_str(&String::from_utf8_lossy(&buf))
    }
}

impl std::str::FromStr for Hypergraph {
    type Err = HypergraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_hypergraph(s)
    }
}
