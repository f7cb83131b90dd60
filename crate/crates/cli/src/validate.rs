//! Exhaustive cross-check of every method against the brute-force oracle
//! over all ordered node pairs of a small graph.

use crate::{exit, CliError, GraphInput};
use route_skyline::oracle::{brute_force_skyline_with, dijkstra_single, EnumerationOrder};
use route_skyline::search::compute_bounds;
use route_skyline::{answer_query, CostVector, Method, NodeId};
use serde::Serialize;

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub pairs_checked: usize,
    pub reachable_pairs: usize,
    pub methods: Vec<String>,
    pub mismatches: Vec<String>,
}

impl ValidationReport {
    pub fn exit_code(&self) -> i32 {
        if self.mismatches.is_empty() {
            exit::OK
        } else {
            exit::MISMATCH
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "checked {} ordered pairs ({} reachable) with methods {}\n",
            self.pairs_checked,
            self.reachable_pairs,
            self.methods.join(",")
        );
        if self.mismatches.is_empty() {
            s.push_str("all methods agree with the brute-force oracle\n");
        }
        for m in &self.mismatches {
            s.push_str("MISMATCH: ");
            s.push_str(m);
            s.push('\n');
        }
        s
    }
}

pub fn cmd_validate(input: &GraphInput, node_limit: usize) -> Result<ValidationReport, CliError> {
    let g = &input.graph;
    let methods: Vec<Method> = Method::ALL
        .into_iter()
        .filter(|m| m.supports(g.criteria()))
        .collect();
    let mut report = ValidationReport {
        methods: methods.iter().map(Method::to_string).collect(),
        ..Default::default()
    };
    let name = |n: NodeId| input.external(n);
    for s in g.nodes() {
        for t in g.nodes().filter(|&t| t != s) {
            report.pairs_checked += 1;
            let oracle = brute_force_skyline_with(g, s, t, node_limit, EnumerationOrder::Forward)?;
            let expected: Vec<CostVector> = oracle.iter().map(|p| p.cost()).collect();
            if !expected.is_empty() {
                report.reachable_pairs += 1;
            }
            for &m in &methods {
                let got = answer_query(g, s, t, m)?.costs();
                if got != expected {
                    report.mismatches.push(format!(
                        "{} -> {} method {m}: got {got:?}, oracle {expected:?}",
                        name(s),
                        name(t)
                    ));
                }
                let Some(bounds) =
                    compute_bounds(g, s, t, m).map_err(route_skyline::SearchError::from)?
                else {
                    continue;
                };
                for i in 0..g.criteria() {
                    let truth = dijkstra_single(g, s, t, i)?.distance;
                    if bounds.lb_s_t[i] != truth {
                        report.mismatches.push(format!(
                            "{} -> {} method {m}: lower bound {} for criterion {i}, shortest distance {truth}",
                            name(s),
                            name(t),
                            bounds.lb_s_t[i]
                        ));
                    }
                }
                if m != Method::ParetoPrep {
                    continue;
                }
                for p in &oracle {
                    let nodes = p.nodes(g);
                    let mut suffix = CostVector::zero(g.criteria());
                    for (k, &e) in p.edges().iter().enumerate().rev() {
                        suffix = suffix + g.edge(e).cost;
                        let n = nodes[k];
                        let lb = bounds.lb(n);
                        if (0..g.criteria()).any(|i| lb[i] > suffix[i]) {
                            report.mismatches.push(format!(
                                "{} -> {}: pp bound {lb} at node {} exceeds suffix cost {suffix}",
                                name(s),
                                name(t),
                                name(n)
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}
