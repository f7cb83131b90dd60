//! Label-correcting path skyline search and the end-to-end query driver.
//!
//! The search keeps a node table with one local skyline of `s -> n` paths
//! per reached node and a queue of node entries ordered by the sum of the
//! per-criterion minima of their local skylines. Popping an entry extends
//! all of its unprocessed paths that survive the global domination check.

use crate::bounds::{
    bidirectional_pareto_prep, double_dijkstra, multi_dijkstra, pareto_prep, BoundsError,
    LowerBoundResult,
};
use crate::dominance::{Skyline, SortedSkyline2D};
use crate::graph::{CostVector, EdgeId, MultiCostGraph, NodeId, Path, PathError};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("node {0} is not in the graph")]
    InvalidNode(NodeId),
    #[error("bounds were computed for ({bound_source}, {bound_target}), not for ({query_source}, {query_target})")]
    BoundsMismatch {
        query_source: NodeId,
        query_target: NodeId,
        bound_source: NodeId,
        bound_target: NodeId,
    },
    #[error("search exceeded its deadline")]
    Timeout,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

impl From<PathError> for SearchError {
    fn from(e: PathError) -> Self {
        SearchError::Invariant(format!("assembled an invalid path: {e}"))
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Prune paths by global domination. Disabling this turns the search
    /// into a single-source search over the whole graph.
    pub global_check: bool,
    pub deadline: Option<Instant>,
    /// Verify at termination that every local skyline is pairwise
    /// nondominated.
    pub audit: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            global_check: true,
            deadline: None,
            audit: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub skyline: Skyline<Path>,
    pub visited_node_count: usize,
    /// Number of path extensions constructed.
    pub assembled_path_count: usize,
}

/// Pareto container picked by dimension: sorted list for two criteria.
#[derive(Debug)]
enum Front<T> {
    General(Skyline<T>),
    Sorted(SortedSkyline2D<T>),
}

impl<T> Front<T> {
    fn new(criteria: usize) -> Self {
        if criteria == 2 {
            Front::Sorted(SortedSkyline2D::new())
        } else {
            Front::General(Skyline::new())
        }
    }

    #[inline]
    fn dominates(&self, v: &CostVector) -> bool {
        match self {
            Front::General(s) => s.dominates(v),
            Front::Sorted(s) => s.dominates(v),
        }
    }

    #[inline]
    fn insert_with(&mut self, cost: CostVector, item: T, evicted: impl FnMut(T)) -> bool {
        match self {
            Front::General(s) => s.insert_with(cost, item, evicted),
            Front::Sorted(s) => s
                .insert_with(cost, item, evicted)
                .expect("sorted front only built for two criteria"),
        }
    }

    fn costs(&self) -> Vec<CostVector> {
        match self {
            Front::General(s) => s.costs().collect(),
            Front::Sorted(s) => s.iter().map(|(c, _)| *c).collect(),
        }
    }

    fn into_entries(self) -> Vec<(CostVector, T)> {
        match self {
            Front::General(s) => s.into_entries(),
            Front::Sorted(s) => s.into_entries(),
        }
    }
}

const ROOT: u32 = u32::MAX;

/// Partial path stored as a back-pointer chain.
#[derive(Clone, Copy, Debug)]
struct Label {
    parent: u32,
    edge: EdgeId,
    node: NodeId,
    cost: CostVector,
    alive: bool,
}

#[derive(Clone, Copy, Debug)]
enum ResultRef {
    Seed(usize),
    Label(u32),
}

struct NodeEntry {
    front: Front<u32>,
    unprocessed: Vec<u32>,
    min_cost: CostVector,
    queued: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct QueueEntry {
    priority: f64,
    node: NodeId,
}

impl Eq for QueueEntry {}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QueueEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .priority
            .total_cmp(&self.priority)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Lower-bound sources for the global domination check.
struct Bounds<'a> {
    result: Option<&'a LowerBoundResult>,
    lb_s_t: CostVector,
    zero: CostVector,
}

impl Bounds<'_> {
    #[inline]
    fn to_target(&self, n: NodeId) -> CostVector {
        match self.result {
            Some(r) => r.labels.lb(n),
            None => self.zero,
        }
    }
}

pub fn label_correcting_search(
    g: &MultiCostGraph,
    s: NodeId,
    t: NodeId,
    bounds: Option<&LowerBoundResult>,
    options: &SearchOptions,
) -> Result<SearchOutcome, SearchError> {
    for n in [s, t] {
        if !g.contains(n) {
            return Err(SearchError::InvalidNode(n));
        }
    }
    if let Some(b) = bounds {
        if b.source != s || b.target != t {
            return Err(SearchError::BoundsMismatch {
                query_source: s,
                query_target: t,
                bound_source: b.source,
                bound_target: b.target,
            });
        }
    }
    let d = g.criteria();
    if s == t {
        let mut skyline = Skyline::new();
        skyline.insert_path(Path::empty(g, s));
        return Ok(SearchOutcome {
            skyline,
            visited_node_count: 1,
            assembled_path_count: 0,
        });
    }
    if bounds.is_some_and(|b| !b.is_reachable()) {
        return Ok(SearchOutcome {
            skyline: Skyline::new(),
            visited_node_count: 0,
            assembled_path_count: 0,
        });
    }

    let est = Bounds {
        result: bounds,
        lb_s_t: bounds.map_or(CostVector::zero(d), |b| b.lb_s_t),
        zero: CostVector::zero(d),
    };
    let seeds: Vec<&Path> = bounds
        .map(|b| b.shortest_paths.paths().collect())
        .unwrap_or_default();
    let mut result: Front<ResultRef> = Front::new(d);
    for (i, p) in seeds.iter().enumerate() {
        result.insert_with(p.cost(), ResultRef::Seed(i), |_| {});
    }

    let mut arena: Vec<Label> = Vec::new();
    let mut entry_of: Vec<u32> = vec![u32::MAX; g.node_count()];
    let mut entries: Vec<NodeEntry> = Vec::new();
    let mut queue = BinaryHeap::new();
    let mut assembled = 0usize;
    let mut reached_target = false;

    // The root (empty path at s) makes every path returning to s dominated
    // or equal, and likewise any cycle back to an already-stored prefix, so
    // extensions stay simple without an explicit visited check.
    arena.push(Label {
        parent: ROOT,
        edge: EdgeId(u32::MAX),
        node: s,
        cost: CostVector::zero(d),
        alive: true,
    });
    entry_of[s.index()] = 0;
    let mut root_front = Front::new(d);
    root_front.insert_with(CostVector::zero(d), 0, |_| {});
    entries.push(NodeEntry {
        front: root_front,
        unprocessed: vec![0],
        min_cost: CostVector::zero(d),
        queued: Some(0.0),
    });
    queue.push(QueueEntry {
        priority: 0.0,
        node: s,
    });

    let globally_dominated = |result: &Front<ResultRef>, cost: &CostVector, n: NodeId| {
        let bound = (cost + &est.to_target(n)).max(&est.lb_s_t);
        result.dominates(&bound)
    };

    let mut pops = 0usize;
    while let Some(QueueEntry { priority, node }) = queue.pop() {
        pops += 1;
        if pops.is_multiple_of(256) && options.deadline.is_some_and(|dl| Instant::now() >= dl) {
            return Err(SearchError::Timeout);
        }
        let entry_idx = entry_of[node.index()] as usize;
        if entries[entry_idx].queued != Some(priority) {
            continue;
        }
        entries[entry_idx].queued = None;
        let batch = std::mem::take(&mut entries[entry_idx].unprocessed);

        for id in batch {
            let label = arena[id as usize];
            if !label.alive {
                continue;
            }
            if options.global_check && globally_dominated(&result, &label.cost, node) {
                continue;
            }
            for (eid, e) in g.outgoing(node) {
                assembled += 1;
                let cost = label.cost + e.cost;
                let m = e.to;
                let new_id = arena.len() as u32;
                let new_label = Label {
                    parent: id,
                    edge: eid,
                    node: m,
                    cost,
                    alive: true,
                };
                if m == t {
                    reached_target = true;
                    if result.insert_with(cost, ResultRef::Label(new_id), |_| {}) {
                        arena.push(new_label);
                    }
                    continue;
                }
                if options.global_check && globally_dominated(&result, &cost, m) {
                    continue;
                }
                let m_idx = match entry_of[m.index()] {
                    u32::MAX => {
                        entry_of[m.index()] = entries.len() as u32;
                        entries.push(NodeEntry {
                            front: Front::new(d),
                            unprocessed: Vec::new(),
                            min_cost: CostVector::infinite(d),
                            queued: None,
                        });
                        entries.len() - 1
                    }
                    idx => idx as usize,
                };
                let target_entry = &mut entries[m_idx];
                let accepted = target_entry.front.insert_with(cost, new_id, |old| {
                    arena[old as usize].alive = false;
                });
                if !accepted {
                    continue;
                }
                arena.push(new_label);
                target_entry.unprocessed.push(new_id);
                target_entry.min_cost = target_entry.min_cost.min(&cost);
                let p = target_entry.min_cost.sum();
                if target_entry.queued != Some(p) {
                    target_entry.queued = Some(p);
                    queue.push(QueueEntry {
                        priority: p,
                        node: m,
                    });
                }
            }
        }
    }

    if options.audit {
        for entry in &entries {
            let costs = entry.front.costs();
            for (i, a) in costs.iter().enumerate() {
                for b in &costs[i + 1..] {
                    if a.dominates(b) || b.dominates(a) || a == b {
                        return Err(SearchError::Invariant(format!(
                            "local skyline holds comparable costs {a} and {b}"
                        )));
                    }
                }
            }
        }
    }

    let mut skyline = Skyline::new();
    for (_, r) in result.into_entries() {
        let path = match r {
            ResultRef::Seed(i) => seeds[i].clone(),
            ResultRef::Label(id) => materialize(g, s, &arena, id)?,
        };
        skyline.insert_path(path);
    }
    Ok(SearchOutcome {
        skyline,
        visited_node_count: entries.len() + usize::from(reached_target),
        assembled_path_count: assembled,
    })
}

fn materialize(
    g: &MultiCostGraph,
    s: NodeId,
    arena: &[Label],
    id: u32,
) -> Result<Path, SearchError> {
    let mut edges = Vec::new();
    let mut at = id;
    while at != ROOT && arena[at as usize].parent != ROOT {
        edges.push(arena[at as usize].edge);
        at = arena[at as usize].parent;
    }
    edges.reverse();
    let p = Path::from_edges(g, s, edges)?;
    if p.cost() != arena[id as usize].cost {
        return Err(SearchError::Invariant("cached path cost drifted".into()));
    }
    debug_assert_eq!(p.end(), arena[id as usize].node);
    Ok(p)
}

/// Lower-bound preparation preceding the skyline search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    None,
    ParetoPrep,
    BidirectionalParetoPrep,
    MultiDijkstra,
    DoubleDijkstra,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::None,
        Method::ParetoPrep,
        Method::BidirectionalParetoPrep,
        Method::MultiDijkstra,
        Method::DoubleDijkstra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::None => "none",
            Method::ParetoPrep => "pp",
            Method::BidirectionalParetoPrep => "bpp",
            Method::MultiDijkstra => "md",
            Method::DoubleDijkstra => "dd",
        }
    }

    pub fn supports(self, criteria: usize) -> bool {
        self != Method::DoubleDijkstra || criteria == 2
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown method {0:?} (expected none, pp, bpp, md or dd)")]
pub struct UnknownMethod(pub String);

impl FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| UnknownMethod(s.to_string()))
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct QueryMetrics {
    /// Node entries created by the bound phase.
    pub bound_visited_nodes: usize,
    pub bound_relaxed_edges: usize,
    /// Node entries created by the skyline search.
    pub search_visited_nodes: usize,
    pub assembled_path_count: usize,
    pub bound_time: Duration,
    pub search_time: Duration,
}

impl QueryMetrics {
    pub fn runtime(&self) -> Duration {
        self.bound_time + self.search_time
    }
}

#[derive(Clone, Debug)]
pub struct QueryResult {
    pub method: Method,
    /// Pareto-optimal paths, sorted lexicographically by cost.
    pub skyline: Vec<Path>,
    pub reachable: bool,
    pub metrics: QueryMetrics,
}

impl QueryResult {
    pub fn costs(&self) -> Vec<CostVector> {
        self.skyline.iter().map(Path::cost).collect()
    }
}

pub fn compute_bounds(
    g: &MultiCostGraph,
    s: NodeId,
    t: NodeId,
    method: Method,
) -> Result<Option<LowerBoundResult>, BoundsError> {
    Ok(match method {
        Method::None => None,
        Method::ParetoPrep => Some(pareto_prep(g, s, t)?),
        Method::BidirectionalParetoPrep => Some(bidirectional_pareto_prep(g, s, t)?),
        Method::MultiDijkstra => Some(multi_dijkstra(g, s, t)?),
        Method::DoubleDijkstra => Some(double_dijkstra(g, s, t)?),
    })
}

pub fn answer_query(
    g: &MultiCostGraph,
    s: NodeId,
    t: NodeId,
    method: Method,
) -> Result<QueryResult, SearchError> {
    answer_query_with(g, s, t, method, &SearchOptions::default())
}

pub fn answer_query_with(
    g: &MultiCostGraph,
    s: NodeId,
    t: NodeId,
    method: Method,
    options: &SearchOptions,
) -> Result<QueryResult, SearchError> {
    for n in [s, t] {
        if !g.contains(n) {
            return Err(SearchError::InvalidNode(n));
        }
    }
    if !method.supports(g.criteria()) {
        return Err(BoundsError::UnsupportedCriteria(g.criteria()).into());
    }
    if s == t {
        return Ok(QueryResult {
            method,
            skyline: vec![Path::empty(g, s)],
            reachable: true,
            metrics: QueryMetrics::default(),
        });
    }

    let mut metrics = QueryMetrics::default();
    let started = Instant::now();
    let bounds = compute_bounds(g, s, t, method)?;
    metrics.bound_time = started.elapsed();
    if let Some(b) = &bounds {
        metrics.bound_visited_nodes = b.visited_node_count;
        metrics.bound_relaxed_edges = b.relaxed_edge_count;
    }
    if options.deadline.is_some_and(|dl| Instant::now() >= dl) {
        return Err(SearchError::Timeout);
    }

    let started = Instant::now();
    let outcome = label_correcting_search(g, s, t, bounds.as_ref(), options)?;
    metrics.search_time = started.elapsed();
    metrics.search_visited_nodes = outcome.visited_node_count;
    metrics.assembled_path_count = outcome.assembled_path_count;

    let mut skyline: Vec<Path> = outcome
        .skyline
        .into_entries()
        .into_iter()
        .map(|(_, p)| p)
        .collect();
    skyline.sort_by(|a, b| a.cost().lex_cmp(&b.cost()));
    Ok(QueryResult {
        method,
        reachable: !skyline.is_empty(),
        skyline,
        metrics,
    })
}
