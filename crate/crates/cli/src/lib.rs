//! Command implementations behind the `skyline` binary.
//!
//! Each `cmd_*` function returns a report value; rendering and exit-code
//! selection happen in `main`, so the commands are testable in-process.

pub mod bench;
pub mod error;
pub mod generate;
pub mod query;
pub mod validate;

pub use bench::{cmd_bench, BenchConfig, BenchRecord, BenchReport, MethodSummary, TaskSource};
pub use error::{exit, CliError};
pub use generate::cmd_generate;
pub use query::{cmd_query, QueryArgs, QueryReport};
pub use validate::{cmd_validate, ValidationReport};

use route_skyline::graph::{read_graph_file, LoadOptions, LoadedGraph};
use route_skyline::{MultiCostGraph, NodeId};
use std::path::Path;

/// A loaded graph plus the translation between file ids and dense ids.
#[derive(Clone, Debug)]
pub struct GraphInput {
    pub graph: MultiCostGraph,
    external_ids: Option<Vec<u64>>,
}

impl GraphInput {
    pub fn load(path: &Path, remap_ids: bool) -> Result<Self, CliError> {
        let options = LoadOptions {
            remap_ids,
            ..Default::default()
        };
        let LoadedGraph {
            graph,
            external_ids,
        } = read_graph_file(path, options).map_err(|source| CliError::Graph {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Self {
            graph,
            external_ids,
        })
    }

    pub fn from_graph(graph: MultiCostGraph) -> Self {
        Self {
            graph,
            external_ids: None,
        }
    }

    pub fn node(&self, id: u64) -> Result<NodeId, CliError> {
        let dense = match &self.external_ids {
            Some(ids) => ids.binary_search(&id).ok(),
            None => usize::try_from(id).ok(),
        };
        dense
            .filter(|&i| i < self.graph.node_count())
            .map(|i| NodeId(i as u32))
            .ok_or(CliError::InvalidNode(id))
    }

    pub fn external(&self, n: NodeId) -> u64 {
        match &self.external_ids {
            Some(ids) => ids[n.index()],
            None => n.0 as u64,
        }
    }
}
