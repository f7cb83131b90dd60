//! Directed multicost graph model.
//!
//! Edges are stored once, grouped by source node (a forward CSR layout).
//! The reverse adjacency is an index over the same edge records, so both
//! directions always describe the identical edge multiset.

mod cost;
mod generate;
mod io;
mod path;

pub use cost::{CostVector, MAX_CRITERIA};
pub use generate::{generate_graph, GeneratorConfig, GraphKind, DEFAULT_MAX_COST};
pub use io::{
    load_graph, load_graph_with, parse_graph, read_graph_file, write_graph, write_graph_file,
    LoadOptions, LoadedGraph,
};
pub use path::{path_cost, Path, PathError};

use std::fmt;
use thiserror::Error;

/// Smallest supported number of cost criteria.
pub const MIN_CRITERIA: usize = 2;

/// Dense node index into a [`MultiCostGraph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Position of an edge in the graph's edge array.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub from: NodeId,
    pub to: NodeId,
    pub cost: CostVector,
}

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("unsupported number of criteria {0} (expected {MIN_CRITERIA}..={MAX_CRITERIA})")]
    UnsupportedCriteria(usize),
    #[error("cost vector has {found} components, expected {expected}")]
    CostLength { expected: usize, found: usize },
    #[error("negative cost component {0}")]
    NegativeCost(f64),
    #[error("non-finite cost component {0}")]
    NonFiniteCost(f64),
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("node id {0} exceeds the supported id range")]
    NodeIdOverflow(u64),
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<GraphError>,
    },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("missing criterion-count header line")]
    MissingHeader,
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for GraphError {
    fn from(e: std::io::Error) -> Self {
        GraphError::Io(e.to_string())
    }
}

/// Immutable directed graph whose edges carry `d` nonnegative costs.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiCostGraph {
    criteria: usize,
    node_count: usize,
    edges: Vec<Edge>,
    out_start: Vec<u32>,
    in_start: Vec<u32>,
    in_edges: Vec<EdgeId>,
}

impl MultiCostGraph {
    pub fn criteria(&self) -> usize {
        self.criteria
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, n: NodeId) -> bool {
        n.index() < self.node_count
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count as u32).map(NodeId)
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    /// All edges, grouped by source node in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, e)| (EdgeId(i as u32), e))
    }

    #[inline]
    pub fn outgoing(&self, n: NodeId) -> impl Iterator<Item = (EdgeId, &Edge)> + '_ {
        let lo = self.out_start[n.index()] as usize;
        let hi = self.out_start[n.index() + 1] as usize;
        self.edges[lo..hi]
            .iter()
            .enumerate()
            .map(move |(k, e)| (EdgeId((lo + k) as u32), e))
    }

    #[inline]
    pub fn incoming(&self, n: NodeId) -> impl Iterator<Item = (EdgeId, &Edge)> + '_ {
        let lo = self.in_start[n.index()] as usize;
        let hi = self.in_start[n.index() + 1] as usize;
        self.in_edges[lo..hi]
            .iter()
            .map(move |&id| (id, &self.edges[id.index()]))
    }

    pub fn out_degree(&self, n: NodeId) -> usize {
        (self.out_start[n.index() + 1] - self.out_start[n.index()]) as usize
    }

    pub fn in_degree(&self, n: NodeId) -> usize {
        (self.in_start[n.index() + 1] - self.in_start[n.index()]) as usize
    }

    /// Nodes from which `t` can be reached (including `t`), found by a
    /// breadth-first scan over reverse edges.
    pub fn nodes_reaching(&self, t: NodeId) -> Vec<bool> {
        self.sweep(t, true)
    }

    /// Nodes reachable from `s` (including `s`).
    pub fn nodes_reachable_from(&self, s: NodeId) -> Vec<bool> {
        self.sweep(s, false)
    }

    fn sweep(&self, root: NodeId, reverse: bool) -> Vec<bool> {
        let mut seen = vec![false; self.node_count];
        let mut stack = vec![root];
        seen[root.index()] = true;
        while let Some(n) = stack.pop() {
            let mut visit = |m: NodeId| {
                if !seen[m.index()] {
                    seen[m.index()] = true;
                    stack.push(m);
                }
            };
            if reverse {
                self.incoming(n).for_each(|(_, e)| visit(e.from));
            } else {
                self.outgoing(n).for_each(|(_, e)| visit(e.to));
            }
        }
        seen
    }
}

/// Incremental constructor for [`MultiCostGraph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    criteria: usize,
    node_count: usize,
    allow_self_loops: bool,
    edges: Vec<Edge>,
}

impl GraphBuilder {
    pub fn new(criteria: usize) -> Result<Self, GraphError> {
        if !(MIN_CRITERIA..=MAX_CRITERIA).contains(&criteria) {
            return Err(GraphError::UnsupportedCriteria(criteria));
        }
        Ok(Self {
            criteria,
            node_count: 0,
            allow_self_loops: false,
            edges: Vec::new(),
        })
    }

    pub fn allow_self_loops(mut self, allow: bool) -> Self {
        self.allow_self_loops = allow;
        self
    }

    /// Makes sure the graph has at least `n` nodes, even if some are isolated.
    pub fn ensure_nodes(&mut self, n: usize) {
        self.node_count = self.node_count.max(n);
    }

    pub fn add_edge(&mut self, from: u32, to: u32, cost: &[f64]) -> Result<(), GraphError> {
        if cost.len() != self.criteria {
            return Err(GraphError::CostLength {
                expected: self.criteria,
                found: cost.len(),
            });
        }
        for &c in cost {
            if !c.is_finite() {
                return Err(GraphError::NonFiniteCost(c));
            }
            if c < 0.0 {
                return Err(GraphError::NegativeCost(c));
            }
        }
        if from == to && !self.allow_self_loops {
            return Err(GraphError::SelfLoop(NodeId(from)));
        }
        if from == u32::MAX || to == u32::MAX {
            return Err(GraphError::NodeIdOverflow(u32::MAX as u64));
        }
        self.node_count = self.node_count.max(from.max(to) as usize + 1);
        self.edges.push(Edge {
            from: NodeId(from),
            to: NodeId(to),
            cost: CostVector::from_slice(cost),
        });
        Ok(())
    }

    pub fn build(self) -> MultiCostGraph {
        let n = self.node_count;
        let mut edges = self.edges;
        // Stable: parallel edges keep their insertion order.
        edges.sort_by_key(|e| e.from);

        let mut out_start = vec![0u32; n + 1];
        for e in &edges {
            out_start[e.from.index() + 1] += 1;
        }
        let mut in_start = vec![0u32; n + 1];
        for e in &edges {
            in_start[e.to.index() + 1] += 1;
        }
        for i in 0..n {
            out_start[i + 1] += out_start[i];
            in_start[i + 1] += in_start[i];
        }
        let mut fill = in_start.clone();
        let mut in_edges = vec![EdgeId(0); edges.len()];
        for (i, e) in edges.iter().enumerate() {
            let slot = &mut fill[e.to.index()];
            in_edges[*slot as usize] = EdgeId(i as u32);
            *slot += 1;
        }

        MultiCostGraph {
            criteria: self.criteria,
            node_count: n,
            edges,
            out_start,
            in_start,
            in_edges,
        }
    }
}
