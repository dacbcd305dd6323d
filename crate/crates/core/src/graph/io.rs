//! Edge-list text format.
//!
//! Line 1: `n m d directed_flag`. Next `m` lines: `u v`. If `d > 0`,
//! next `n` lines carry `d` space-separated feature values each.
//! Whitespace-delimited, 0-indexed, UTF-8.

use super::{FeaturedGraph, Graph};
use crate::error::{Error, Result};
use std::path::Path;

pub fn parse_edge_list(text: &str) -> Result<FeaturedGraph> {
    let mut lines = text.lines().enumerate();
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::Parse { line: 1, message: "empty input".into() })?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 4 {
        return Err(Error::Parse {
            line: line_no + 1,
            message: format!("expected 'n m d directed_flag', got '{header}'"),
        });
    }
    let parse_usize = |s: &str, line: usize| -> Result<usize> {
        s.parse().map_err(|_| Error::Parse { line, message: format!("bad integer '{s}'") })
    };
    let n = parse_usize(head[0], line_no + 1)?;
    let m = parse_usize(head[1], line_no + 1)?;
    let d = parse_usize(head[2], line_no + 1)?;
    let directed = match head[3] {
        "0" => false,
        "1" => true,
        other => {
            return Err(Error::Parse {
                line: line_no + 1,
                message: format!("directed flag must be 0 or 1, got '{other}'"),
            })
        }
    };

    let mut pairs = Vec::with_capacity(m);
    for _ in 0..m {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 0, message: "missing edge lines".into() })?;
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::Parse {
                line: line_no + 1,
                message: format!("expected 'u v', got '{line}'"),
            });
        }
        pairs.push((parse_usize(parts[0], line_no + 1)?, parse_usize(parts[1], line_no + 1)?));
    }
    let graph = Graph::from_edge_list(n, directed, &pairs)?;

    let mut features = Vec::with_capacity(n * d);
    if d > 0 {
        for _ in 0..n {
            let (line_no, line) = lines
                .next()
                .ok_or_else(|| Error::Parse { line: 0, message: "missing feature lines".into() })?;
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != d {
                return Err(Error::Parse {
                    line: line_no + 1,
                    message: format!("expected {d} feature values, got {}", parts.len()),
                });
            }
            for s in parts {
                let x: f64 = s.parse().map_err(|_| Error::Parse {
                    line: line_no + 1,
                    message: format!("bad number '{s}'"),
                })?;
                features.push(x);
            }
        }
    }
    FeaturedGraph::new(graph, d, features)
}

pub fn write_edge_list(g: &FeaturedGraph) -> String {
    let mut out = String::new();
    let graph = &g.graph;
    out.push_str(&format!(
        "{} {} {} {}\n",
        graph.n(),
        graph.edge_count(),
        g.feature_dim(),
        if graph.directed() { 1 } else { 0 }
    ));
    for &(u, v) in graph.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    if g.feature_dim() > 0 {
        for v in 0..graph.n() {
            let row: Vec<String> = g.feature_row(v).iter().map(|x| format!("{x}")).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn read_edge_list(path: &Path) -> Result<FeaturedGraph> {
    let text = std::fs::read_to_string(path)?;
    parse_edge_list(&text)
}
