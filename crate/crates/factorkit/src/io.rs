//! Text formats: graphs, per-vertex prescriptions, indicator witnesses.
//!
//! Graph files are a header line `n m` followed by `m` edge lines `u v`
//! with `0 <= u < v < n`; `#` starts a comment line and blank lines are
//! skipped. Loading tolerates swapped endpoints and normalizes them;
//! self-loops and duplicate edges are errors. Vertex labels are retained
//! for reports (for this format they are the decimal ids themselves).

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::fractional::{DegreeFunc, IndicatorAssignment};
use crate::graph::Graph;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Content lines with their 1-based line numbers; comments and blanks
/// dropped.
fn content_lines(reader: impl BufRead) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        out.push((idx + 1, trimmed.to_string()));
    }
    Ok(out)
}

/// Reads a graph and its vertex labels.
pub fn read_graph(reader: impl BufRead) -> Result<(Graph, Vec<String>)> {
    let lines = content_lines(reader)?;
    let Some(((header_line, header), edge_lines)) = lines.split_first() else {
        return Err(parse_err(1, "missing `n m` header"));
    };
    let mut parts = header.split_whitespace();
    let (n, m) = match (parts.next(), parts.next(), parts.next()) {
        (Some(n), Some(m), None) => (
            n.parse::<usize>()
                .map_err(|_| parse_err(*header_line, format!("bad vertex count `{n}`")))?,
            m.parse::<usize>()
                .map_err(|_| parse_err(*header_line, format!("bad edge count `{m}`")))?,
        ),
        _ => return Err(parse_err(*header_line, "header must be `n m`")),
    };
    if edge_lines.len() != m {
        return Err(parse_err(
            edge_lines.last().map_or(*header_line, |(l, _)| *l),
            format!("expected {m} edge lines, found {}", edge_lines.len()),
        ));
    }
    let mut edges = Vec::with_capacity(m);
    for (line_no, text) in edge_lines {
        let mut parts = text.split_whitespace();
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(v), None) => (
                u.parse::<usize>()
                    .map_err(|_| parse_err(*line_no, format!("bad vertex `{u}`")))?,
                v.parse::<usize>()
                    .map_err(|_| parse_err(*line_no, format!("bad vertex `{v}`")))?,
            ),
            _ => return Err(parse_err(*line_no, "edge line must be `u v`")),
        };
        if u >= n || v >= n {
            return Err(parse_err(
                *line_no,
                format!("edge ({u}, {v}) outside 0..{n}"),
            ));
        }
        if u == v {
            return Err(parse_err(*line_no, format!("self-loop at vertex {u}")));
        }
        edges.push((u, v));
    }
    let graph = Graph::from_edges(n, edges).map_err(|e| match e {
        Error::Domain(msg) => parse_err(*header_line, msg),
        other => other,
    })?;
    let labels = (0..n).map(|v| v.to_string()).collect();
    Ok((graph, labels))
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<(Graph, Vec<String>)> {
    read_graph(BufReader::new(File::open(path)?))
}

/// Writes the canonical text form: header, then edges with `u < v` in
/// lexicographic order.
pub fn write_graph(w: &mut impl Write, graph: &Graph) -> std::io::Result<()> {
    writeln!(w, "{} {}", graph.n(), graph.edge_count())?;
    for &(u, v) in graph.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

pub fn save_graph(path: impl AsRef<Path>, graph: &Graph) -> Result<()> {
    let mut file = File::create(path)?;
    write_graph(&mut file, graph)?;
    Ok(())
}

/// Reads a per-vertex prescription: one `label value` line per vertex,
/// every vertex exactly once.
pub fn read_prescription(reader: impl BufRead, labels: &[String]) -> Result<DegreeFunc> {
    let index: HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let mut values: Vec<Option<u32>> = vec![None; labels.len()];
    for (line_no, text) in content_lines(reader)? {
        let mut parts = text.split_whitespace();
        let (label, value) = match (parts.next(), parts.next(), parts.next()) {
            (Some(l), Some(v), None) => (l, v),
            _ => {
                return Err(parse_err(
                    line_no,
                    "prescription line must be `label value`",
                ))
            }
        };
        let &v = index
            .get(label)
            .ok_or_else(|| parse_err(line_no, format!("unknown vertex label `{label}`")))?;
        if values[v].is_some() {
            return Err(parse_err(line_no, format!("duplicate value for `{label}`")));
        }
        let parsed = value
            .parse::<u32>()
            .map_err(|_| parse_err(line_no, format!("bad value `{value}`")))?;
        values[v] = Some(parsed);
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(v, x)| {
            x.ok_or_else(|| Error::domain(format!("no value for vertex `{}`", labels[v])))
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok(DegreeFunc::new(values))
}

pub fn load_prescription(path: impl AsRef<Path>, labels: &[String]) -> Result<DegreeFunc> {
    read_prescription(BufReader::new(File::open(path)?), labels)
}

/// Writes an indicator witness: `denominator 2` header, then one
/// `u v numerator` line per edge.
pub fn write_indicator(
    w: &mut impl Write,
    indicator: &IndicatorAssignment,
    labels: &[String],
) -> std::io::Result<()> {
    writeln!(w, "denominator {}", IndicatorAssignment::DENOMINATOR)?;
    for e in indicator.entries() {
        writeln!(w, "{} {} {}", labels[e.u], labels[e.v], e.numerator)?;
    }
    Ok(())
}
