//! Edge-list text format: a header line `n m`, then `m` lines `tail head weight`.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Graph, DEFAULT_MAX_WEIGHT};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    parse_edge_list_with_max(text, DEFAULT_MAX_WEIGHT)
}

pub fn parse_edge_list_with_max(text: &str, max_weight: u64) -> Result<Graph> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (header_line, header) = lines.next().ok_or(Error::Parse { line: 1, message: "missing header `n m`".into() })?;
    let header_fields = fields::<2>(header, header_line + 1)?;
    let (n, m) = (to_count(header_fields[0], header_line + 1)?, to_count(header_fields[1], header_line + 1)?);

    let mut edges = Vec::with_capacity(m);
    for (idx, line) in lines {
        let lineno = idx + 1;
        if edges.len() == m {
            return Err(Error::Parse { line: lineno, message: format!("more than the declared {m} edges") });
        }
        let [t, h, w] = fields::<3>(line, lineno)?;
        let (t, h) = (to_count(t, lineno)?, to_count(h, lineno)?);
        let w: i64 = w.parse().map_err(|_| Error::Parse { line: lineno, message: format!("invalid weight `{w}`") })?;
        if t >= n || h >= n {
            return Err(Error::Parse { line: lineno, message: format!("endpoint out of range for n={n}") });
        }
        if w < 0 {
            return Err(Error::Parse { line: lineno, message: format!("negative weight {w}") });
        }
        if w as u64 > max_weight {
            return Err(Error::Parse { line: lineno, message: format!("weight {w} exceeds maximum {max_weight}") });
        }
        edges.push((t, h, w));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: format!("expected {m} edges, found {}", edges.len()),
        });
    }
    Graph::with_max_weight(n, &edges, max_weight)
}

fn fields<const K: usize>(line: &str, lineno: usize) -> Result<[&str; K]> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    parts.try_into().map_err(|p: Vec<&str>| Error::Parse {
        line: lineno,
        message: format!("expected {K} fields, found {}", p.len()),
    })
}

fn to_count(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse { line, message: format!("invalid integer `{s}`") })
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * (g.m() + 1));
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.tail, e.head, e.weight);
    }
    out
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

pub fn write_graph(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, write_edge_list(g))?;
    Ok(())
}
