//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs as a plain binary so the lines are never captured.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use route_skyline::bounds::{
    bidirectional_pareto_prep, multi_dijkstra, pareto_prep, reconstruct_path, LowerBoundResult,
};
use route_skyline::graph::{generate_graph, write_graph_file, GeneratorConfig};
use route_skyline::oracle::{brute_force_skyline, dijkstra_single};
use route_skyline::{
    answer_query, answer_query_with, CostVector, Method, MultiCostGraph, NodeId, SearchOptions,
    Skyline, SortedSkyline2D,
};
use route_skyline_cli::bench::{random_tasks, run_bench, BenchRecord};
use route_skyline_cli::{cmd_query, BenchConfig, GraphInput, QueryArgs};
use std::cell::Cell;
use std::process::ExitCode;
use std::time::{Duration, Instant};

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn endpoints(rng: &mut ChaCha8Rng, g: &MultiCostGraph) -> (NodeId, NodeId) {
    let n = g.node_count() as u32;
    let s = rng.random_range(0..n);
    let mut t = rng.random_range(0..n - 1);
    if t >= s {
        t += 1;
    }
    (NodeId(s), NodeId(t))
}

/// Seeded small graphs shared by the oracle and admissibility criteria.
fn small_suite() -> Vec<(MultiCostGraph, NodeId, NodeId)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..300)
        .map(|_| {
            let n = rng.random_range(5..=12);
            let m = rng.random_range(n..=3 * n);
            let d = rng.random_range(2..=3);
            let cfg = GeneratorConfig::random(n, m, d, rng.random()).with_max_cost(10);
            let g = generate_graph(&cfg).unwrap();
            let (s, t) = endpoints(&mut rng, &g);
            (g, s, t)
        })
        .collect()
}

fn oracle_equivalence(suite: &[(MultiCostGraph, NodeId, NodeId)]) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut queries = 0;
    for (k, (g, s, t)) in suite.iter().enumerate() {
        let expected: Vec<CostVector> = brute_force_skyline(g, *s, *t)
            .unwrap()
            .iter()
            .map(|p| p.cost())
            .collect();
        for m in Method::ALL.into_iter().filter(|m| m.supports(g.criteria())) {
            queries += 1;
            match answer_query(g, *s, *t, m) {
                Ok(r) if r.costs() == expected => {}
                Ok(r) => failures.push(format!("graph {k} {m}: {:?} vs {expected:?}", r.costs())),
                Err(e) => failures.push(format!("graph {k} {m}: {e}")),
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && elapsed < Duration::from_secs(120),
        format!(
            "{} graphs, {queries} queries, {} mismatches, {:.1}s (limit 120s){}",
            suite.len(),
            failures.len(),
            elapsed.as_secs_f64(),
            failures
                .first()
                .map(|f| format!("; first: {f}"))
                .unwrap_or_default()
        ),
    )
}

fn check_exact(g: &MultiCostGraph, s: NodeId, t: NodeId, r: &LowerBoundResult) -> Vec<String> {
    let mut bad = Vec::new();
    for i in 0..g.criteria() {
        let truth = dijkstra_single(g, s, t, i).unwrap().distance;
        if r.lb_s_t[i] != truth {
            bad.push(format!(
                "{} lb(s)[{i}] = {} vs {truth}",
                r.method, r.lb_s_t[i]
            ));
        }
        if truth.is_finite() {
            match reconstruct_path(g, s, t, &r.labels, i) {
                Ok(p) if p.cost()[i] == truth => {}
                Ok(p) => bad.push(format!("{} path[{i}] costs {}", r.method, p.cost())),
                Err(e) => bad.push(format!("{} path[{i}]: {e}", r.method)),
            }
        }
    }
    bad
}

fn shortest_path_exactness() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2025);
    let mut failures = Vec::new();
    let graphs = 200;
    for k in 0..graphs {
        let n = rng.random_range(10..=200);
        let d = rng.random_range(2..=5);
        let cfg = GeneratorConfig::random(n, rng.random_range(n..=4 * n), d, rng.random());
        let g = generate_graph(&cfg).unwrap();
        let (s, t) = endpoints(&mut rng, &g);
        for r in [
            pareto_prep(&g, s, t).unwrap(),
            bidirectional_pareto_prep(&g, s, t).unwrap(),
            multi_dijkstra(&g, s, t).unwrap(),
        ] {
            failures.extend(
                check_exact(&g, s, t, &r)
                    .into_iter()
                    .map(|f| format!("graph {k}: {f}")),
            );
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && elapsed < Duration::from_secs(120),
        format!(
            "{graphs} graphs x 3 methods, {} violations, {:.1}s (limit 120s){}",
            failures.len(),
            elapsed.as_secs_f64(),
            failures
                .first()
                .map(|f| format!("; first: {f}"))
                .unwrap_or_default()
        ),
    )
}

fn suffix_admissibility(suite: &[(MultiCostGraph, NodeId, NodeId)]) -> Outcome {
    let mut suffixes = 0usize;
    let mut violations = Vec::new();
    for (k, (g, s, t)) in suite.iter().enumerate() {
        let bounds = pareto_prep(g, *s, *t).unwrap();
        for p in brute_force_skyline(g, *s, *t).unwrap() {
            let nodes = p.nodes(g);
            let mut suffix = CostVector::zero(g.criteria());
            for (j, &e) in p.edges().iter().enumerate().rev() {
                suffix = suffix + g.edge(e).cost;
                suffixes += 1;
                let lb = bounds.lb(nodes[j]);
                if (0..g.criteria()).any(|i| lb[i] > suffix[i]) {
                    violations.push(format!("graph {k} node {}: {lb} > {suffix}", nodes[j]));
                }
            }
        }
    }
    outcome(
        violations.is_empty(),
        format!(
            "{suffixes} suffixes over {} graphs, {} violations{}",
            suite.len(),
            violations.len(),
            violations
                .first()
                .map(|f| format!("; first: {f}"))
                .unwrap_or_default()
        ),
    )
}

fn mean(records: &[&BenchRecord], f: impl Fn(&BenchRecord) -> Option<usize>) -> f64 {
    records.iter().map(|r| f(r).unwrap() as f64).sum::<f64>() / records.len() as f64
}

fn pruning_direction() -> Outcome {
    let start = Instant::now();
    // Costs 1..=2 keep the unbounded search tractable at this grid size.
    let cfg = GeneratorConfig::grid(100, 100, 3, 11)
        .with_correlation(0.5)
        .with_max_cost(2);
    let input = GraphInput::from_graph(generate_graph(&cfg).unwrap());
    let g = &input.graph;
    let (tasks, _) = random_tasks(g, 30, 12).unwrap();
    let methods = [
        Method::None,
        Method::ParetoPrep,
        Method::BidirectionalParetoPrep,
        Method::MultiDijkstra,
    ];
    let config = BenchConfig {
        methods: methods.to_vec(),
        reps: 3,
        timeout: Duration::from_secs(300),
        threads: 1,
    };
    let records = run_bench(&input, &tasks, &config).unwrap();
    let of = |m: Method| -> Vec<&BenchRecord> {
        records.iter().filter(|r| r.method == m.name()).collect()
    };
    if records.iter().any(|r| r.timed_out) {
        return outcome(false, "a run exceeded the 300s timeout".into());
    }
    let assembled = |m| mean(&of(m), |r| r.assembled_path_count);
    let visited = |m| mean(&of(m), |r| r.visited_node_count);
    let (a_none, a_pp) = (assembled(Method::None), assembled(Method::ParetoPrep));
    let (v_bpp, v_pp, v_md) = (
        visited(Method::BidirectionalParetoPrep),
        visited(Method::ParetoPrep),
        visited(Method::MultiDijkstra),
    );
    let md_exact = tasks
        .iter()
        .zip(of(Method::MultiDijkstra))
        .all(|(task, r)| {
            let co_reaching = g.nodes_reaching(task.target).iter().filter(|&&b| b).count();
            r.visited_node_count == Some(g.criteria() * co_reaching)
        });
    let same_answers = route_skyline_cli::bench::disagreements(&records).is_empty();
    let elapsed = start.elapsed();
    outcome(
        a_pp < a_none
            && v_bpp <= v_pp
            && v_pp < v_md
            && md_exact
            && same_answers
            && elapsed < Duration::from_secs(300),
        format!(
            "assembled pp {a_pp:.0} < none {a_none:.0}; visited bpp {v_bpp:.0} <= pp {v_pp:.0} < md {v_md:.0}; \
             md = d x co-reaching on every task: {md_exact}; skylines agree: {same_answers}; {:.1}s (limit 300s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn global_check_impact() -> Outcome {
    let g = generate_graph(&GeneratorConfig::grid(60, 60, 2, 5)).unwrap();
    let (tasks, _) = random_tasks(&g, 10, 3).unwrap();
    let off = SearchOptions {
        global_check: false,
        ..Default::default()
    };
    let on = SearchOptions::default();
    let (mut unchecked, mut checked, mut checked_pp) = (0usize, 0usize, 0usize);
    for task in &tasks {
        let (s, t) = (task.source, task.target);
        let assembled = |m, o| {
            answer_query_with(&g, s, t, m, o)
                .unwrap()
                .metrics
                .assembled_path_count
        };
        unchecked += assembled(Method::None, &off);
        checked += assembled(Method::None, &on);
        checked_pp += assembled(Method::ParetoPrep, &on);
    }
    let ratio = unchecked as f64 / checked as f64;
    outcome(
        ratio >= 5.0,
        format!(
            "assembled without check {unchecked}, with check {checked}: ratio {ratio:.2} (required >= 5); \
             with check and pp bounds {checked_pp}: ratio {:.2}",
            unchecked as f64 / checked_pp as f64
        ),
    )
}

fn random_vector(rng: &mut ChaCha8Rng, d: usize) -> CostVector {
    let v: Vec<f64> = (0..d)
        .map(|_| f64::from(rng.random_range(0u8..5)))
        .collect();
    CostVector::from_slice(&v)
}

fn dominance_properties() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let checks = Cell::new(0usize);
    let failures = Cell::new(0usize);
    let check = |ok: bool| {
        checks.set(checks.get() + 1);
        failures.set(failures.get() + usize::from(!ok));
    };
    while checks.get() < 100_000 {
        let d = rng.random_range(2..=5);
        let (a, b, c) = (
            random_vector(&mut rng, d),
            random_vector(&mut rng, d),
            random_vector(&mut rng, d),
        );
        check(!a.dominates(&a));
        check(!(a.dominates(&b) && b.dominates(&a)));
        check(!(a.dominates(&b) && b.dominates(&c)) || a.dominates(&c));

        let batch: Vec<CostVector> = (0..rng.random_range(1..40))
            .map(|_| random_vector(&mut rng, d))
            .collect();
        let mut sky = Skyline::new();
        for (i, v) in batch.iter().enumerate() {
            sky.insert(*v, i);
        }
        let kept: Vec<CostVector> = sky.costs().collect();
        for (i, x) in kept.iter().enumerate() {
            for y in &kept[i + 1..] {
                check(!x.dominates(y) && !y.dominates(x) && x != y);
            }
        }
        for v in &batch {
            check(kept.iter().any(|k| k == v || k.dominates(v)));
        }

        let pairs: Vec<CostVector> = batch
            .iter()
            .map(|v| CostVector::from_slice(&v.as_slice()[..2]))
            .collect();
        let mut general = Skyline::new();
        let mut sorted = SortedSkyline2D::new();
        for (i, v) in pairs.iter().enumerate() {
            let accepted = sorted.insert(*v, i).unwrap();
            check(general.insert(*v, i) == accepted);
        }
        let mut g = general.into_entries();
        g.sort_by(|x, y| x.0.lex_cmp(&y.0));
        check(g == sorted.into_entries());
    }
    let (checks, failures) = (checks.get(), failures.get());
    let elapsed = start.elapsed();
    outcome(
        failures == 0 && elapsed < Duration::from_secs(30),
        format!(
            "{checks} assertions, {failures} failures, {:.1}s (limit 30s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn query_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.txt");
    let g = generate_graph(&GeneratorConfig::grid(25, 25, 3, 9).with_correlation(0.2)).unwrap();
    write_graph_file(&g, &path).unwrap();
    let mut differing = Vec::new();
    for method in [
        Method::None,
        Method::ParetoPrep,
        Method::BidirectionalParetoPrep,
        Method::MultiDijkstra,
    ] {
        let args = QueryArgs {
            graph: path.clone(),
            source: 3,
            target: 610,
            method,
            remap_ids: false,
            paths: true,
            timing: false,
        };
        let first = cmd_query(&args).unwrap().to_json().unwrap();
        let second = cmd_query(&args).unwrap().to_json().unwrap();
        if first != second {
            differing.push(method.name());
        }
    }
    outcome(
        differing.is_empty(),
        format!("4 methods queried twice, JSON differs for {differing:?}"),
    )
}

fn main() -> ExitCode {
    let suite = small_suite();
    let criteria: [Criterion; 7] = [
        (
            "1 oracle equivalence",
            Box::new(|| oracle_equivalence(&suite)),
        ),
        (
            "2 shortest-path exactness",
            Box::new(shortest_path_exactness),
        ),
        (
            "3 suffix admissibility",
            Box::new(|| suffix_admissibility(&suite)),
        ),
        ("4 pruning direction", Box::new(pruning_direction)),
        ("5 global check impact", Box::new(global_check_impact)),
        ("6 dominance properties", Box::new(dominance_properties)),
        ("7 query determinism", Box::new(query_determinism)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let o = run();
        println!(
            "{} criterion {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
