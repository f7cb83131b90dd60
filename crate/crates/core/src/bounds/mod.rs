//! Query-time lower bounds to the target and single-criterion optima.
//!
//! Every algorithm here produces a [`LowerBoundResult`]: a per-node table of
//! lower-bound vectors towards `t`, the set of single-criterion shortest
//! `s -> t` paths, and search-effort counters.

mod dijkstra;
mod open;
mod prep;

pub use dijkstra::{double_dijkstra, multi_dijkstra};
pub use prep::{bidirectional_pareto_prep, pareto_prep};

use crate::dominance::Skyline;
use crate::graph::{CostVector, EdgeId, MultiCostGraph, NodeId, Path, PathError, MAX_CRITERIA};
use std::fmt;
use thiserror::Error;

const NO_EDGE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("node {0} is not in the graph")]
    InvalidNode(NodeId),
    #[error("start and target are the same node {0}")]
    SameEndpoints(NodeId),
    #[error("double dijkstra needs exactly 2 criteria, graph has {0}")]
    UnsupportedCriteria(usize),
    #[error("successor chain for criterion {criterion} is broken at node {at}")]
    BrokenChain { criterion: usize, at: NodeId },
    #[error("reconstructed path is invalid: {0}")]
    InvalidPath(#[from] PathError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundMethod {
    ParetoPrep,
    BidirectionalParetoPrep,
    MultiDijkstra,
    DoubleDijkstra,
}

impl fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundMethod::ParetoPrep => "pp",
            BoundMethod::BidirectionalParetoPrep => "bpp",
            BoundMethod::MultiDijkstra => "md",
            BoundMethod::DoubleDijkstra => "dd",
        })
    }
}

/// Lower-bound vector of a node plus one link edge per criterion.
///
/// In a backward (towards-`t`) table the link is the first edge of the
/// current criterion-`i` shortest path to `t`. In the forward table of the
/// bidirectional search it is the last edge of the shortest path from `s`.
#[derive(Clone, Copy, Debug)]
pub struct NodeLabel {
    lb: CostVector,
    links: [u32; MAX_CRITERIA],
}

impl NodeLabel {
    fn unvisited(criteria: usize) -> Self {
        Self {
            lb: CostVector::infinite(criteria),
            links: [NO_EDGE; MAX_CRITERIA],
        }
    }

    pub fn lb(&self) -> &CostVector {
        &self.lb
    }

    pub fn link(&self, criterion: usize) -> Option<EdgeId> {
        match self.links[criterion] {
            NO_EDGE => None,
            e => Some(EdgeId(e)),
        }
    }

    /// Alias of [`NodeLabel::link`] for backward tables.
    pub fn succ(&self, criterion: usize) -> Option<EdgeId> {
        self.link(criterion)
    }

    fn relax(&mut self, criterion: usize, value: f64, via: EdgeId) -> bool {
        if value < self.lb[criterion] {
            self.lb.set(criterion, value);
            self.links[criterion] = via.0;
            true
        } else {
            false
        }
    }
}

/// Sparse node-label table: only visited nodes own an entry, but lookup is
/// a single index through a dense slot map.
#[derive(Clone, Debug)]
pub struct LabelTable {
    criteria: usize,
    slot_of: Vec<u32>,
    nodes: Vec<NodeId>,
    labels: Vec<NodeLabel>,
}

impl LabelTable {
    pub fn new(node_count: usize, criteria: usize) -> Self {
        Self {
            criteria,
            slot_of: vec![NO_EDGE; node_count],
            nodes: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, n: NodeId) -> bool {
        self.slot(n).is_some()
    }

    pub fn get(&self, n: NodeId) -> Option<&NodeLabel> {
        self.slot(n).map(|s| &self.labels[s])
    }

    /// Lower bound of `n`; all components infinite if `n` was never visited.
    pub fn lb(&self, n: NodeId) -> CostVector {
        self.get(n)
            .map(|l| l.lb)
            .unwrap_or_else(|| CostVector::infinite(self.criteria))
    }

    /// Visited nodes in first-visit order.
    pub fn iter(&self) -> impl Iterator<Item = (NodeId, &NodeLabel)> + '_ {
        self.nodes.iter().copied().zip(self.labels.iter())
    }

    #[inline]
    fn slot(&self, n: NodeId) -> Option<usize> {
        match self.slot_of.get(n.index()) {
            Some(&s) if s != NO_EDGE => Some(s as usize),
            _ => None,
        }
    }

    fn slot_or_insert(&mut self, n: NodeId) -> usize {
        if let Some(s) = self.slot(n) {
            return s;
        }
        let s = self.labels.len();
        self.slot_of[n.index()] = s as u32;
        self.nodes.push(n);
        self.labels.push(NodeLabel::unvisited(self.criteria));
        s
    }
}

/// Forward-search state frozen when the bidirectional search's two
/// directions meet (or when the forward direction runs dry).
#[derive(Clone, Debug)]
pub struct ForwardBoundContext {
    /// Cost bounds from `s` to each forward-labelled node; links are
    /// predecessor edges.
    pub labels: LabelTable,
    /// Component-wise minimum label over the forward open set at freeze time.
    pub mincost: CostVector,
    pub rendezvous: Option<NodeId>,
}

impl ForwardBoundContext {
    /// Lower bound on the `s -> n` prefix of any nondominated `s -> t` path
    /// through `n`.
    ///
    /// A forward label alone is not a bound: such a prefix either has a
    /// forward label no larger than its cost, or it crosses an open forward
    /// node whose label is. The component-wise minimum covers both cases.
    pub fn estimate(&self, n: NodeId) -> CostVector {
        self.labels.lb(n).min(&self.mincost)
    }
}

#[derive(Clone, Debug)]
pub struct LowerBoundResult {
    pub method: BoundMethod,
    pub source: NodeId,
    pub target: NodeId,
    pub labels: LabelTable,
    /// Single-criterion optimal `s -> t` paths (one witness per cost vector).
    pub shortest_paths: Skyline<Path>,
    pub lb_s_t: CostVector,
    pub visited_node_count: usize,
    pub relaxed_edge_count: usize,
    pub forward: Option<ForwardBoundContext>,
}

impl LowerBoundResult {
    pub fn is_reachable(&self) -> bool {
        self.lb_s_t.is_finite()
    }

    pub fn lb(&self, n: NodeId) -> CostVector {
        self.labels.lb(n)
    }
}

fn check_query(g: &MultiCostGraph, s: NodeId, t: NodeId) -> Result<(), BoundsError> {
    for n in [s, t] {
        if !g.contains(n) {
            return Err(BoundsError::InvalidNode(n));
        }
    }
    if s == t {
        return Err(BoundsError::SameEndpoints(s));
    }
    Ok(())
}

/// Follows the criterion-`i` successor edges of a backward table from
/// `from` until `t`; returns the edge sequence.
fn successor_chain(
    g: &MultiCostGraph,
    labels: &LabelTable,
    from: NodeId,
    t: NodeId,
    criterion: usize,
) -> Result<Vec<EdgeId>, BoundsError> {
    let mut edges = Vec::new();
    let mut at = from;
    while at != t {
        let e = labels
            .get(at)
            .and_then(|l| l.link(criterion))
            .filter(|_| edges.len() < g.node_count())
            .ok_or(BoundsError::BrokenChain { criterion, at })?;
        edges.push(e);
        at = g.edge(e).to;
    }
    Ok(edges)
}

/// Follows predecessor links of a forward table from `to` back to `s`;
/// returns the edges in `s -> to` order.
fn predecessor_chain(
    g: &MultiCostGraph,
    labels: &LabelTable,
    s: NodeId,
    to: NodeId,
    criterion: usize,
) -> Result<Vec<EdgeId>, BoundsError> {
    let mut edges = Vec::new();
    let mut at = to;
    while at != s {
        let e = labels
            .get(at)
            .and_then(|l| l.link(criterion))
            .filter(|_| edges.len() < g.node_count())
            .ok_or(BoundsError::BrokenChain { criterion, at })?;
        edges.push(e);
        at = g.edge(e).from;
    }
    edges.reverse();
    Ok(edges)
}

/// Walks `succ_i` from `s` to `t` and returns the resulting path.
pub fn reconstruct_path(
    g: &MultiCostGraph,
    s: NodeId,
    t: NodeId,
    labels: &LabelTable,
    criterion: usize,
) -> Result<Path, BoundsError> {
    let edges = successor_chain(g, labels, s, t, criterion)?;
    Ok(Path::from_edges(g, s, edges)?)
}
