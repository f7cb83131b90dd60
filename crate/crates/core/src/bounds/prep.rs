//! ParetoPrep: one label-correcting traversal that computes all
//! single-criterion shortest `s -> t` paths together with per-node lower
//! bounds, pruning nodes whose bound is already dominated by a found path.

use super::open::OpenSet;
use super::{
    check_query, predecessor_chain, successor_chain, BoundMethod, BoundsError, ForwardBoundContext,
    LabelTable, LowerBoundResult,
};
use crate::dominance::Skyline;
use crate::graph::{CostVector, MultiCostGraph, NodeId, Path};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Direction {
    /// From `t` over incoming edges; labels bound the cost to `t`.
    Backward,
    /// From `s` over outgoing edges; labels bound the cost from `s`.
    Forward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Exhausted,
    Pruned,
    Expanded(NodeId),
}

/// Extra `s -> n` estimate added to a node's bound before the step-3 check.
#[derive(Clone, Copy)]
struct PrefixEstimate<'a> {
    forward: &'a LabelTable,
    mincost: &'a CostVector,
}

struct PrepSearch {
    dir: Direction,
    s: NodeId,
    t: NodeId,
    labels: LabelTable,
    open: OpenSet,
    expanded: Vec<bool>,
    relaxed: usize,
}

impl PrepSearch {
    fn new(g: &MultiCostGraph, dir: Direction, s: NodeId, t: NodeId) -> Self {
        let mut labels = LabelTable::new(g.node_count(), g.criteria());
        let origin = match dir {
            Direction::Backward => t,
            Direction::Forward => s,
        };
        let slot = labels.slot_or_insert(origin);
        labels.labels[slot].lb = CostVector::zero(g.criteria());
        let mut open = OpenSet::default();
        open.push(slot, origin, 0.0);
        Self {
            dir,
            s,
            t,
            labels,
            open,
            expanded: Vec::new(),
            relaxed: 0,
        }
    }

    /// The endpoint this direction is searching towards; never enqueued.
    fn goal(&self) -> NodeId {
        match self.dir {
            Direction::Backward => self.s,
            Direction::Forward => self.t,
        }
    }

    fn was_expanded(&self, n: NodeId) -> bool {
        self.labels
            .slot(n)
            .is_some_and(|s| self.expanded.get(s).copied().unwrap_or(false))
    }

    /// One node selection (step 2), domination check (step 3), expansion
    /// (step 4) and path construction (step 5).
    fn step(
        &mut self,
        g: &MultiCostGraph,
        sky: &mut Skyline<Path>,
        estimate: Option<PrefixEstimate<'_>>,
    ) -> Result<Step, BoundsError> {
        let Some((slot, n)) = self.open.pop() else {
            return Ok(Step::Exhausted);
        };
        let lb = self.labels.labels[slot].lb;
        let check = match estimate {
            Some(est) => lb + est.forward.lb(n).min(est.mincost),
            None => lb,
        };
        if sky.dominates(&check) {
            return Ok(Step::Pruned);
        }
        if self.expanded.len() <= slot {
            self.expanded.resize(slot + 1, false);
        }
        self.expanded[slot] = true;

        let goal = self.goal();
        let mut goal_changed = 0u32;
        let d = g.criteria();
        let mut relax = |this: &mut Self, id, m: NodeId, cost: &CostVector| {
            this.relaxed += 1;
            let m_slot = this.labels.slot_or_insert(m);
            let label = &mut this.labels.labels[m_slot];
            let mut changed = 0u32;
            for i in 0..d {
                if label.relax(i, lb[i] + cost[i], id) {
                    changed |= 1 << i;
                }
            }
            if changed != 0 {
                if m == goal {
                    goal_changed |= changed;
                } else {
                    let key = label.lb.sum();
                    this.open.push(m_slot, m, key);
                }
            }
        };
        match self.dir {
            Direction::Backward => {
                for (id, e) in g.incoming(n) {
                    relax(self, id, e.from, &e.cost);
                }
            }
            Direction::Forward => {
                for (id, e) in g.outgoing(n) {
                    relax(self, id, e.to, &e.cost);
                }
            }
        }

        for i in 0..d {
            if goal_changed & (1 << i) != 0 {
                let p = self.path_to_goal(g, i)?;
                sky.insert_path(p);
            }
        }
        Ok(Step::Expanded(n))
    }

    /// Current criterion-`i` shortest `s -> t` path known to this direction.
    fn path_to_goal(&self, g: &MultiCostGraph, i: usize) -> Result<Path, BoundsError> {
        let edges = match self.dir {
            Direction::Backward => successor_chain(g, &self.labels, self.s, self.t, i)?,
            Direction::Forward => predecessor_chain(g, &self.labels, self.s, self.t, i)?,
        };
        Ok(Path::from_edges(g, self.s, edges)?)
    }

    fn mincost_of_open(&self, criteria: usize) -> CostVector {
        self.open
            .open_slots()
            .fold(CostVector::infinite(criteria), |acc, slot| {
                acc.min(&self.labels.labels[slot].lb)
            })
    }
}

pub fn pareto_prep(
    g: &MultiCostGraph,
    s: NodeId,
    t: NodeId,
) -> Result<LowerBoundResult, BoundsError> {
    check_query(g, s, t)?;
    let mut search = PrepSearch::new(g, Direction::Backward, s, t);
    let mut sky = Skyline::new();
    while search.step(g, &mut sky, None)? != Step::Exhausted {}

    Ok(LowerBoundResult {
        method: BoundMethod::ParetoPrep,
        source: s,
        target: t,
        lb_s_t: search.labels.lb(s),
        visited_node_count: search.labels.len(),
        relaxed_edge_count: search.relaxed,
        labels: search.labels,
        shortest_paths: sky,
        forward: None,
    })
}

/// Backward and forward ParetoPrep alternate one iteration each until a
/// node has been expanded by both. The forward state is then frozen and the
/// backward search continues alone, adding a prefix estimate to its
/// domination check.
pub fn bidirectional_pareto_prep(
    g: &MultiCostGraph,
    s: NodeId,
    t: NodeId,
) -> Result<LowerBoundResult, BoundsError> {
    check_query(g, s, t)?;
    let d = g.criteria();
    let mut backward = PrepSearch::new(g, Direction::Backward, s, t);
    let mut forward = PrepSearch::new(g, Direction::Forward, s, t);
    let mut sky = Skyline::new();

    // (mincost, rendezvous) once the forward search is frozen.
    let mut frozen: Option<(CostVector, Option<NodeId>)> = None;
    loop {
        match backward.step(g, &mut sky, None)? {
            Step::Exhausted => break,
            Step::Expanded(n) if forward.was_expanded(n) => {
                frozen = Some((forward.mincost_of_open(d), Some(n)));
                break;
            }
            _ => {}
        }
        match forward.step(g, &mut sky, None)? {
            Step::Exhausted => {
                frozen = Some((CostVector::infinite(d), None));
                break;
            }
            Step::Expanded(n) if backward.was_expanded(n) => {
                frozen = Some((forward.mincost_of_open(d), Some(n)));
                break;
            }
            _ => {}
        }
    }

    if let Some((mincost, rendezvous)) = &frozen {
        if let Some(r) = *rendezvous {
            for i in 0..d {
                let mut walk = predecessor_chain(g, &forward.labels, s, r, i)?;
                walk.extend(successor_chain(g, &backward.labels, r, t, i)?);
                sky.insert_path(Path::from_walk(g, s, &walk)?);
            }
        }
        let estimate = PrefixEstimate {
            forward: &forward.labels,
            mincost,
        };
        while backward.step(g, &mut sky, Some(estimate))? != Step::Exhausted {}
    }

    let visited = backward.labels.len()
        + forward
            .labels
            .iter()
            .filter(|(n, _)| !backward.labels.contains(*n))
            .count();
    Ok(LowerBoundResult {
        method: BoundMethod::BidirectionalParetoPrep,
        source: s,
        target: t,
        lb_s_t: backward.labels.lb(s),
        visited_node_count: visited,
        relaxed_edge_count: backward.relaxed + forward.relaxed,
        labels: backward.labels,
        shortest_paths: sky,
        forward: frozen.map(|(mincost, rendezvous)| ForwardBoundContext {
            labels: forward.labels,
            mincost,
            rendezvous,
        }),
    })
}
