//! Reference implementations used to check the fast algorithms.
//!
//! Everything here is deliberately naive: exhaustive simple-path
//! enumeration and textbook Dijkstra with no shared code paths.

use crate::dominance::Skyline;
use crate::graph::{CostVector, EdgeId, MultiCostGraph, NodeId, Path};
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use thiserror::Error;

/// Enumeration is exponential; refuse graphs above this size by default.
pub const DEFAULT_NODE_LIMIT: usize = 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {nodes} nodes, oracle limit is {limit}")]
    TooLarge { nodes: usize, limit: usize },
    #[error("node {0} is not in the graph")]
    InvalidNode(NodeId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EnumerationOrder {
    /// Outgoing edges in adjacency order.
    #[default]
    Forward,
    /// Outgoing edges in reverse adjacency order.
    Reversed,
}

fn check(g: &MultiCostGraph, s: NodeId, t: NodeId, limit: usize) -> Result<(), OracleError> {
    if g.node_count() > limit {
        return Err(OracleError::TooLarge {
            nodes: g.node_count(),
            limit,
        });
    }
    for n in [s, t] {
        if !g.contains(n) {
            return Err(OracleError::InvalidNode(n));
        }
    }
    Ok(())
}

/// Calls `visit` for every simple `s -> t` path.
pub fn for_each_simple_path(
    g: &MultiCostGraph,
    s: NodeId,
    t: NodeId,
    order: EnumerationOrder,
    mut visit: impl FnMut(&[EdgeId], CostVector),
) {
    let mut on_path = vec![false; g.node_count()];
    let mut edges = Vec::new();
    dfs(
        g,
        s,
        t,
        order,
        CostVector::zero(g.criteria()),
        &mut on_path,
        &mut edges,
        &mut visit,
    );
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    g: &MultiCostGraph,
    at: NodeId,
    t: NodeId,
    order: EnumerationOrder,
    cost: CostVector,
    on_path: &mut [bool],
    edges: &mut Vec<EdgeId>,
    visit: &mut impl FnMut(&[EdgeId], CostVector),
) {
    if at == t {
        visit(edges, cost);
        return;
    }
    on_path[at.index()] = true;
    let mut out: Vec<_> = g.outgoing(at).collect();
    if order == EnumerationOrder::Reversed {
        out.reverse();
    }
    for (id, e) in out {
        if on_path[e.to.index()] {
            continue;
        }
        edges.push(id);
        dfs(g, e.to, t, order, cost + e.cost, on_path, edges, visit);
        edges.pop();
    }
    on_path[at.index()] = false;
}

pub fn all_simple_paths(
    g: &MultiCostGraph,
    s: NodeId,
    t: NodeId,
    node_limit: usize,
) -> Result<Vec<Path>, OracleError> {
    check(g, s, t, node_limit)?;
    let mut out = Vec::new();
    for_each_simple_path(g, s, t, EnumerationOrder::Forward, |edges, _| {
        out.push(Path::from_edges(g, s, edges.to_vec()).expect("dfs yields valid paths"));
    });
    Ok(out)
}

/// Exact skyline by filtering every simple path with pairwise comparisons.
pub fn brute_force_skyline(
    g: &MultiCostGraph,
    s: NodeId,
    t: NodeId,
) -> Result<Vec<Path>, OracleError> {
    brute_force_skyline_with(g, s, t, DEFAULT_NODE_LIMIT, EnumerationOrder::Forward)
}

pub fn brute_force_skyline_with(
    g: &MultiCostGraph,
    s: NodeId,
    t: NodeId,
    node_limit: usize,
    order: EnumerationOrder,
) -> Result<Vec<Path>, OracleError> {
    check(g, s, t, node_limit)?;
    let mut all: Vec<(Vec<EdgeId>, CostVector)> = Vec::new();
    for_each_simple_path(g, s, t, order, |edges, cost| {
        all.push((edges.to_vec(), cost))
    });
    let mut kept: Vec<Path> = Vec::new();
    for (i, (edges, c)) in all.iter().enumerate() {
        let dominated = all.iter().any(|(_, o)| o.dominates(c));
        // First witness of each cost vector only.
        let duplicate = all[..i].iter().any(|(_, o)| o == c);
        if !dominated && !duplicate {
            kept.push(Path::from_edges(g, s, edges.clone()).expect("dfs yields valid paths"));
        }
    }
    kept.sort_by(|a, b| a.cost().lex_cmp(&b.cost()));
    Ok(kept)
}

/// Builds a skyline from brute-force output, keyed by cost.
pub fn as_skyline(paths: Vec<Path>) -> Skyline<Path> {
    let mut sky = Skyline::new();
    for p in paths {
        sky.insert_path(p);
    }
    sky
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingleCriterion {
    /// Infinite if `t` is unreachable.
    pub distance: f64,
    pub path: Option<Path>,
}

/// Textbook forward Dijkstra on one cost component.
pub fn dijkstra_single(
    g: &MultiCostGraph,
    s: NodeId,
    t: NodeId,
    criterion: usize,
) -> Result<SingleCriterion, OracleError> {
    check(g, s, t, usize::MAX)?;
    let n = g.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred: Vec<Option<EdgeId>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[s.index()] = 0.0;
    // Costs are finite and nonnegative, so their bit patterns order like the
    // values themselves.
    heap.push(Reverse((0.0f64.to_bits(), s)));
    while let Some(Reverse((_, u))) = heap.pop() {
        if done[u.index()] {
            continue;
        }
        done[u.index()] = true;
        if u == t {
            break;
        }
        for (id, e) in g.outgoing(u) {
            let cand = dist[u.index()] + e.cost[criterion];
            if cand < dist[e.to.index()] {
                dist[e.to.index()] = cand;
                pred[e.to.index()] = Some(id);
                heap.push(Reverse((cand.to_bits(), e.to)));
            }
        }
    }
    if !done[t.index()] {
        return Ok(SingleCriterion {
            distance: f64::INFINITY,
            path: None,
        });
    }
    let mut edges = Vec::new();
    let mut at = t;
    while let Some(e) = pred[at.index()] {
        edges.push(e);
        at = g.edge(e).from;
    }
    edges.reverse();
    let path = Path::from_edges(g, s, edges).expect("predecessor tree yields a valid path");
    Ok(SingleCriterion {
        distance: dist[t.index()],
        path: Some(path),
    })
}
