use super::{CostVector, EdgeId, MultiCostGraph, NodeId};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("edge {0:?} does not exist")]
    UnknownEdge(EdgeId),
    #[error("edge at position {position} does not continue from node {expected}")]
    BrokenChain { position: usize, expected: NodeId },
    #[error("node {0} is visited twice")]
    RepeatedNode(NodeId),
    #[error("start node {0} is not in the graph")]
    UnknownStart(NodeId),
}

/// A simple path: a chain of adjacent edges that never revisits a node.
///
/// The cost is cached at construction and always equals the component-wise
/// sum of the edge costs, accumulated front to back.
#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    start: NodeId,
    end: NodeId,
    edges: Vec<EdgeId>,
    cost: CostVector,
}

impl Path {
    pub fn empty(g: &MultiCostGraph, start: NodeId) -> Self {
        Self {
            start,
            end: start,
            edges: Vec::new(),
            cost: CostVector::zero(g.criteria()),
        }
    }

    /// Validates adjacency and simplicity of `edges` starting at `start`.
    pub fn from_edges(
        g: &MultiCostGraph,
        start: NodeId,
        edges: Vec<EdgeId>,
    ) -> Result<Self, PathError> {
        if !g.contains(start) {
            return Err(PathError::UnknownStart(start));
        }
        let mut seen = std::collections::HashSet::with_capacity(edges.len() + 1);
        seen.insert(start);
        let mut at = start;
        let mut cost = CostVector::zero(g.criteria());
        for (position, &id) in edges.iter().enumerate() {
            if id.index() >= g.edge_count() {
                return Err(PathError::UnknownEdge(id));
            }
            let e = g.edge(id);
            if e.from != at {
                return Err(PathError::BrokenChain {
                    position,
                    expected: at,
                });
            }
            if !seen.insert(e.to) {
                return Err(PathError::RepeatedNode(e.to));
            }
            cost = cost + e.cost;
            at = e.to;
        }
        Ok(Self {
            start,
            end: at,
            edges,
            cost,
        })
    }

    /// Builds a simple path from a walk by cutting out every cycle.
    ///
    /// Removing a cycle never increases any cost component.
    pub fn from_walk(
        g: &MultiCostGraph,
        start: NodeId,
        walk: &[EdgeId],
    ) -> Result<Self, PathError> {
        let mut nodes = vec![start];
        let mut kept: Vec<EdgeId> = Vec::with_capacity(walk.len());
        for (position, &id) in walk.iter().enumerate() {
            if id.index() >= g.edge_count() {
                return Err(PathError::UnknownEdge(id));
            }
            let e = g.edge(id);
            let at = *nodes.last().unwrap();
            if e.from != at {
                return Err(PathError::BrokenChain {
                    position,
                    expected: at,
                });
            }
            if let Some(k) = nodes.iter().position(|&n| n == e.to) {
                nodes.truncate(k + 1);
                kept.truncate(k);
            } else {
                nodes.push(e.to);
                kept.push(id);
            }
        }
        Self::from_edges(g, start, kept)
    }

    pub fn start(&self) -> NodeId {
        self.start
    }

    pub fn end(&self) -> NodeId {
        self.end
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn cost(&self) -> CostVector {
        self.cost
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Node sequence from start to end.
    pub fn nodes(&self, g: &MultiCostGraph) -> Vec<NodeId> {
        std::iter::once(self.start)
            .chain(self.edges.iter().map(|&e| g.edge(e).to))
            .collect()
    }
}

/// Recomputes the cost of `p` from its edges.
pub fn path_cost(g: &MultiCostGraph, p: &Path) -> CostVector {
    p.edges
        .iter()
        .fold(CostVector::zero(g.criteria()), |acc, &e| {
            acc + g.edge(e).cost
        })
}
