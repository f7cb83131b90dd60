use crate::{exit, CliError, GraphInput};
use route_skyline::{answer_query, Method, QueryResult};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Clone, Debug)]
pub struct QueryArgs {
    pub graph: PathBuf,
    pub source: u64,
    pub target: u64,
    pub method: Method,
    pub remap_ids: bool,
    /// Include node sequences of skyline paths.
    pub paths: bool,
    /// Include wall-clock timings (makes output nondeterministic).
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkylineEntry {
    pub cost: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QueryMetricsReport {
    pub bound_visited_nodes: usize,
    pub bound_relaxed_edges: usize,
    pub search_visited_nodes: usize,
    pub assembled_path_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_time_us: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_time_us: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QueryReport {
    pub source: u64,
    pub target: u64,
    pub method: String,
    pub criteria: usize,
    pub reachable: bool,
    pub skyline: Vec<SkylineEntry>,
    pub metrics: QueryMetricsReport,
}

impl QueryReport {
    pub fn exit_code(&self) -> i32 {
        if self.reachable {
            exit::OK
        } else {
            exit::UNREACHABLE
        }
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} -> {} via {}: {} pareto-optimal path(s)",
            self.source,
            self.target,
            self.method,
            self.skyline.len()
        );
        for entry in &self.skyline {
            let cost: Vec<String> = entry.cost.iter().map(f64::to_string).collect();
            let _ = write!(out, "  ({})", cost.join(", "));
            if let Some(nodes) = &entry.nodes {
                let nodes: Vec<String> = nodes.iter().map(u64::to_string).collect();
                let _ = write!(out, "  {}", nodes.join(" "));
            }
            out.push('\n');
        }
        let m = &self.metrics;
        let _ = writeln!(
            out,
            "bound phase: {} visited nodes, {} relaxed edges",
            m.bound_visited_nodes, m.bound_relaxed_edges
        );
        let _ = writeln!(
            out,
            "search phase: {} visited nodes, {} assembled paths",
            m.search_visited_nodes, m.assembled_path_count
        );
        if let (Some(b), Some(s)) = (m.bound_time_us, m.search_time_us) {
            let _ = writeln!(out, "time: bound {b} us, search {s} us");
        }
        out
    }
}

pub fn cmd_query(args: &QueryArgs) -> Result<QueryReport, CliError> {
    let input = GraphInput::load(&args.graph, args.remap_ids)?;
    query_loaded(&input, args)
}

/// Query on an already loaded graph; `args.graph` is ignored.
pub fn query_loaded(input: &GraphInput, args: &QueryArgs) -> Result<QueryReport, CliError> {
    let g = &input.graph;
    let s = input.node(args.source)?;
    let t = input.node(args.target)?;
    if !args.method.supports(g.criteria()) {
        return Err(CliError::Usage(format!(
            "method {} needs exactly 2 criteria, graph has {}",
            args.method,
            g.criteria()
        )));
    }
    let result = answer_query(g, s, t, args.method)?;
    Ok(build_report(input, args, &result))
}

fn build_report(input: &GraphInput, args: &QueryArgs, result: &QueryResult) -> QueryReport {
    let skyline = result
        .skyline
        .iter()
        .map(|p| SkylineEntry {
            cost: p.cost().as_slice().to_vec(),
            nodes: args.paths.then(|| {
                p.nodes(&input.graph)
                    .into_iter()
                    .map(|n| input.external(n))
                    .collect()
            }),
        })
        .collect();
    let m = &result.metrics;
    let us = |d: std::time::Duration| args.timing.then_some(d.as_micros() as u64);
    QueryReport {
        source: args.source,
        target: args.target,
        method: args.method.to_string(),
        criteria: input.graph.criteria(),
        reachable: result.reachable,
        skyline,
        metrics: QueryMetricsReport {
            bound_visited_nodes: m.bound_visited_nodes,
            bound_relaxed_edges: m.bound_relaxed_edges,
            search_visited_nodes: m.search_visited_nodes,
            assembled_path_count: m.assembled_path_count,
            bound_time_us: us(m.bound_time),
            search_time_us: us(m.search_time),
        },
    }
}
