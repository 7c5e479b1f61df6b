//! Colored edge-list files.
//!
//! ```text
//! # optional comments
//! n=4 s=2 model=family
//! 0 1 0
//! 1 2 1
//! ```
//!
//! The header is the first non-comment line; each following line is
//! `u v color` with 0-based decimal ids. Lines starting with `#` and blank
//! lines are ignored.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::color::MAX_COLORS;
use crate::error::{Error, Result};
use crate::graph::{AnyGraph, ColoredGraph, EdgeColoredGraph, GraphFamily, GraphLayer, Model};

/// Reads a graph file.
pub fn read_graph(path: impl AsRef<Path>) -> Result<AnyGraph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_graph(&text, path)
}

/// Writes a graph file; [`read_graph`] on the result gives back an equal graph.
pub fn write_graph(graph: &AnyGraph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, format_graph(graph)).map_err(|e| Error::io(path, e))
}

/// Renders a graph in the edge-list format, edges sorted by `(u, v, color)`.
pub fn format_graph(graph: &AnyGraph) -> String {
    let mut out = format!("n={} s={} model={}\n", graph.n(), graph.s(), graph.model());
    match graph {
        AnyGraph::Family(f) => {
            for u in 0..f.n() {
                for (v, colors) in f.adjacency().neighbors(u) {
                    if v > u {
                        for c in colors {
                            let _ = writeln!(out, "{u} {v} {c}");
                        }
                    }
                }
            }
        }
        AnyGraph::Uniform(g) => {
            for &(u, v, c) in g.edges() {
                let _ = writeln!(out, "{u} {v} {c}");
            }
        }
    }
    out
}

/// Parses edge-list text; `origin` labels error messages.
pub fn parse_graph(text: &str, origin: impl Into<PathBuf>) -> Result<AnyGraph> {
    let path = origin.into();
    let malformed = |line: usize, reason: String| Error::MalformedLine {
        path: path.clone(),
        line,
        reason,
    };

    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| malformed(1, "missing header".into()))?;
    let (n, s, model) = parse_header(header).map_err(|r| malformed(header_line, r))?;
    if s > MAX_COLORS {
        return Err(Error::Capacity {
            colors: s,
            max: MAX_COLORS,
        });
    }

    let mut seen = HashSet::new();
    let mut colored_pairs = HashSet::new();
    let mut edges = Vec::new();
    for (line, body) in lines {
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(malformed(
                line,
                format!("expected `u v color`, got {body:?}"),
            ));
        }
        let mut nums = [0usize; 3];
        for (slot, f) in nums.iter_mut().zip(&fields) {
            *slot = f
                .parse()
                .map_err(|_| malformed(line, format!("not a non-negative integer: {f:?}")))?;
        }
        let [u, v, color] = nums;
        for (what, value, limit) in [("vertex", u, n), ("vertex", v, n), ("color", color, s)] {
            if value >= limit {
                return Err(Error::OutOfRange {
                    path: path.clone(),
                    line,
                    what,
                    value,
                    limit,
                });
            }
        }
        if u == v {
            return Err(malformed(line, format!("self-loop at vertex {u}")));
        }
        let (a, b) = (u.min(v), u.max(v));
        if !seen.insert((a, b, color)) {
            return Err(Error::DuplicateEdgeColor {
                path: path.clone(),
                line,
                u: a,
                v: b,
                color,
            });
        }
        if model == Model::Uniform && !colored_pairs.insert((a, b)) {
            return Err(malformed(
                line,
                format!("pair ({a}, {b}) already has a color"),
            ));
        }
        edges.push((a, b, color));
    }

    match model {
        Model::Family => {
            let mut per_layer = vec![Vec::new(); s];
            for (u, v, c) in edges {
                per_layer[c].push((u, v));
            }
            let layers = per_layer
                .into_iter()
                .map(|e| GraphLayer::from_edges(n, e))
                .collect::<Result<Vec<_>>>()?;
            Ok(AnyGraph::Family(GraphFamily::new(layers)?))
        }
        Model::Uniform => Ok(AnyGraph::Uniform(EdgeColoredGraph::new(n, s, edges)?)),
    }
}

fn parse_header(header: &str) -> std::result::Result<(usize, usize, Model), String> {
    let mut n = None;
    let mut s = None;
    let mut model = None;
    for token in header.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| format!("header token {token:?} is not key=value"))?;
        match key {
            "n" => {
                n = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| format!("bad n: {value:?}"))?,
                )
            }
            "s" => {
                s = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| format!("bad s: {value:?}"))?,
                )
            }
            "model" => model = Some(value.parse::<Model>().map_err(|e| e.to_string())?),
            other => return Err(format!("unknown header key {other:?}")),
        }
    }
    let n = n.ok_or("header lacks n")?;
    let s = s.ok_or("header lacks s")?;
    let model = model.ok_or("header lacks model")?;
    if s == 0 {
        return Err("s must be at least 1".into());
    }
    Ok((n, s, model))
}
