//! Baselines built from single-criterion reverse Dijkstra searches.

use super::{
    check_query, reconstruct_path, BoundMethod, BoundsError, LabelTable, LowerBoundResult,
};
use crate::dominance::Skyline;
use crate::graph::{EdgeId, MultiCostGraph, NodeId, Path};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

#[derive(Clone, Copy, Debug, PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Dijkstra from `t` over reverse edges using one cost component.
struct ReverseDijkstra<'g> {
    g: &'g MultiCostGraph,
    criterion: usize,
    dist: Vec<f64>,
    succ: Vec<Option<EdgeId>>,
    settled: Vec<bool>,
    heap: BinaryHeap<Reverse<(Key, NodeId)>>,
    settled_count: usize,
    relaxed: usize,
}

impl<'g> ReverseDijkstra<'g> {
    fn new(g: &'g MultiCostGraph, t: NodeId, criterion: usize) -> Self {
        let n = g.node_count();
        let mut dist = vec![f64::INFINITY; n];
        dist[t.index()] = 0.0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((Key(0.0), t)));
        Self {
            g,
            criterion,
            dist,
            succ: vec![None; n],
            settled: vec![false; n],
            heap,
            settled_count: 0,
            relaxed: 0,
        }
    }

    fn discard_stale(&mut self) {
        while let Some(Reverse((_, n))) = self.heap.peek() {
            if self.settled[n.index()] {
                self.heap.pop();
            } else {
                break;
            }
        }
    }

    /// Smallest tentative distance among unsettled nodes.
    fn peek_key(&mut self) -> Option<f64> {
        self.discard_stale();
        self.heap.peek().map(|Reverse((k, _))| k.0)
    }

    /// Settles the next node and relaxes its incoming edges.
    fn settle_next(&mut self) -> Option<NodeId> {
        self.discard_stale();
        let Reverse((Key(dn), n)) = self.heap.pop()?;
        self.settled[n.index()] = true;
        self.settled_count += 1;
        for (id, e) in self.g.incoming(n) {
            self.relaxed += 1;
            let m = e.from.index();
            let cand = dn + e.cost[self.criterion];
            if cand < self.dist[m] {
                self.dist[m] = cand;
                self.succ[m] = Some(id);
                self.heap.push(Reverse((Key(cand), e.from)));
            }
        }
        Some(n)
    }

    fn path_from(&self, s: NodeId, t: NodeId) -> Result<Path, BoundsError> {
        let mut edges = Vec::new();
        let mut at = s;
        while at != t {
            let e = self.succ[at.index()]
                .filter(|_| edges.len() < self.g.node_count())
                .ok_or(BoundsError::BrokenChain {
                    criterion: self.criterion,
                    at,
                })?;
            edges.push(e);
            at = self.g.edge(e).to;
        }
        Ok(Path::from_edges(self.g, s, edges)?)
    }

    fn run_until_settled(&mut self, target: NodeId) -> bool {
        while !self.settled[target.index()] {
            if self.settle_next().is_none() {
                return false;
            }
        }
        true
    }
}

/// Builds a label table from nodes settled by every search.
fn merge_tables(g: &MultiCostGraph, searches: &[ReverseDijkstra<'_>]) -> LabelTable {
    let mut table = LabelTable::new(g.node_count(), g.criteria());
    for n in g.nodes() {
        if searches.iter().all(|sr| sr.settled[n.index()]) {
            let slot = table.slot_or_insert(n);
            let label = &mut table.labels[slot];
            for sr in searches {
                label.lb.set(sr.criterion, sr.dist[n.index()]);
                if let Some(e) = sr.succ[n.index()] {
                    label.links[sr.criterion] = e.0;
                }
            }
        }
    }
    table
}

fn finish(
    g: &MultiCostGraph,
    method: BoundMethod,
    s: NodeId,
    t: NodeId,
    searches: &[ReverseDijkstra<'_>],
) -> Result<LowerBoundResult, BoundsError> {
    let labels = merge_tables(g, searches);
    let mut sky = Skyline::new();
    if labels.contains(s) {
        for i in 0..g.criteria() {
            sky.insert_path(reconstruct_path(g, s, t, &labels, i)?);
        }
    }
    Ok(LowerBoundResult {
        method,
        source: s,
        target: t,
        lb_s_t: labels.lb(s),
        visited_node_count: searches.iter().map(|sr| sr.settled_count).sum(),
        relaxed_edge_count: searches.iter().map(|sr| sr.relaxed).sum(),
        labels,
        shortest_paths: sky,
        forward: None,
    })
}

/// One full reverse Dijkstra sweep from `t` per criterion.
pub fn multi_dijkstra(
    g: &MultiCostGraph,
    s: NodeId,
    t: NodeId,
) -> Result<LowerBoundResult, BoundsError> {
    check_query(g, s, t)?;
    let mut searches: Vec<_> = (0..g.criteria())
        .map(|i| ReverseDijkstra::new(g, t, i))
        .collect();
    for sr in &mut searches {
        while sr.settle_next().is_some() {}
    }
    finish(g, BoundMethod::MultiDijkstra, s, t, &searches)
}

/// Two-criteria variant of [`multi_dijkstra`]: once both searches have
/// settled `s`, the optimum of each criterion caps the other criterion, and
/// each search only continues while its frontier stays within that cap.
pub fn double_dijkstra(
    g: &MultiCostGraph,
    s: NodeId,
    t: NodeId,
) -> Result<LowerBoundResult, BoundsError> {
    check_query(g, s, t)?;
    if g.criteria() != 2 {
        return Err(BoundsError::UnsupportedCriteria(g.criteria()));
    }
    let mut searches = [ReverseDijkstra::new(g, t, 0), ReverseDijkstra::new(g, t, 1)];
    if !searches[0].run_until_settled(s) {
        // Unreachable: report whatever was swept.
        return finish(g, BoundMethod::DoubleDijkstra, s, t, &searches);
    }
    searches[1].run_until_settled(s);

    // The criterion-1 optimum is the weakest skyline path in criterion 2
    // and vice versa.
    let mut caps = [0.0; 2];
    for (k, other) in [(1usize, 0usize), (0, 1)] {
        caps[k] = searches[other].path_from(s, t)?.cost()[k];
    }
    for (k, sr) in searches.iter_mut().enumerate() {
        while sr.peek_key().is_some_and(|key| key <= caps[k]) {
            sr.settle_next();
        }
    }
    finish(g, BoundMethod::DoubleDijkstra, s, t, &searches)
}
