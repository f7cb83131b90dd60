//! Plain-text edge-list format.
//!
//! ```text
//! # comment lines and blank lines are ignored
//! 2                 <- number of criteria d
//! 0 1 3 4           <- from to c_1 ... c_d
//! 1 2 2.5 0
//! ```
//!
//! Without remapping, node ids are used as dense indices and the node count
//! is one more than the largest id referenced.

use super::{GraphBuilder, GraphError, MultiCostGraph};
use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};

#[derive(Clone, Copy, Debug, Default)]
pub struct LoadOptions {
    pub allow_self_loops: bool,
    /// Compact arbitrary (sparse) ids into `0..n`, in ascending id order.
    pub remap_ids: bool,
}

#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: MultiCostGraph,
    /// `external_ids[i]` is the file id of dense node `i` (only when remapping).
    pub external_ids: Option<Vec<u64>>,
}

struct RawEdge {
    line: usize,
    from: u64,
    to: u64,
    cost: Vec<f64>,
}

pub fn load_graph<R: BufRead>(reader: R) -> Result<MultiCostGraph, GraphError> {
    load_graph_with(reader, LoadOptions::default()).map(|l| l.graph)
}

pub fn parse_graph(text: &str) -> Result<MultiCostGraph, GraphError> {
    load_graph(text.as_bytes())
}

pub fn read_graph_file(
    path: impl AsRef<std::path::Path>,
    options: LoadOptions,
) -> Result<LoadedGraph, GraphError> {
    let file = File::open(path)?;
    load_graph_with(BufReader::new(file), options)
}

pub fn load_graph_with<R: BufRead>(
    reader: R,
    options: LoadOptions,
) -> Result<LoadedGraph, GraphError> {
    let mut criteria: Option<usize> = None;
    let mut raw = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let Some(d) = criteria else {
            let d: usize = text.parse().map_err(|_| GraphError::Malformed {
                line: line_no,
                reason: format!("expected criterion count, found {text:?}"),
            })?;
            // Validates the range early so the error carries the line.
            GraphBuilder::new(d).map_err(|e| at_line(line_no, e))?;
            criteria = Some(d);
            continue;
        };
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != d + 2 {
            return Err(GraphError::Malformed {
                line: line_no,
                reason: format!("expected {} fields, found {}", d + 2, fields.len()),
            });
        }
        let parse_id = |s: &str| {
            s.parse::<u64>().map_err(|_| GraphError::Malformed {
                line: line_no,
                reason: format!("invalid node id {s:?}"),
            })
        };
        let from = parse_id(fields[0])?;
        let to = parse_id(fields[1])?;
        let cost = fields[2..]
            .iter()
            .map(|s| {
                s.parse::<f64>().map_err(|_| GraphError::Malformed {
                    line: line_no,
                    reason: format!("invalid cost {s:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        raw.push(RawEdge {
            line: line_no,
            from,
            to,
            cost,
        });
    }

    let d = criteria.ok_or(GraphError::MissingHeader)?;
    let mut builder = GraphBuilder::new(d)?.allow_self_loops(options.allow_self_loops);

    let external_ids = if options.remap_ids {
        let mut ids: BTreeMap<u64, u32> = BTreeMap::new();
        for e in &raw {
            ids.insert(e.from, 0);
            ids.insert(e.to, 0);
        }
        for (dense, slot) in ids.values_mut().enumerate() {
            *slot = dense as u32;
        }
        for e in &raw {
            builder
                .add_edge(ids[&e.from], ids[&e.to], &e.cost)
                .map_err(|err| at_line(e.line, err))?;
        }
        Some(ids.into_keys().collect())
    } else {
        for e in &raw {
            let from = dense_id(e.from).map_err(|err| at_line(e.line, err))?;
            let to = dense_id(e.to).map_err(|err| at_line(e.line, err))?;
            builder
                .add_edge(from, to, &e.cost)
                .map_err(|err| at_line(e.line, err))?;
        }
        None
    };

    Ok(LoadedGraph {
        graph: builder.build(),
        external_ids,
    })
}

fn dense_id(id: u64) -> Result<u32, GraphError> {
    u32::try_from(id)
        .ok()
        .filter(|&v| v != u32::MAX)
        .ok_or(GraphError::NodeIdOverflow(id))
}

fn at_line(line: usize, source: GraphError) -> GraphError {
    GraphError::AtLine {
        line,
        source: Box::new(source),
    }
}

/// Writes `g` in the edge-list format; `load_graph` reproduces it exactly.
pub fn write_graph<W: Write>(g: &MultiCostGraph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{}", g.criteria())?;
    for (_, e) in g.edges() {
        write!(out, "{} {}", e.from, e.to)?;
        for c in e.cost.as_slice() {
            // `Display` for f64 is shortest round-trip.
            write!(out, " {c}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn write_graph_file(
    g: &MultiCostGraph,
    path: impl AsRef<std::path::Path>,
) -> Result<(), GraphError> {
    let mut out = BufWriter::new(File::create(path)?);
    write_graph(g, &mut out)?;
    out.flush()?;
    Ok(())
}
