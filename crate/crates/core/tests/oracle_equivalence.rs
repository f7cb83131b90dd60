use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use route_skyline::bounds::{
    bidirectional_pareto_prep, double_dijkstra, multi_dijkstra, pareto_prep, LowerBoundResult,
};
use route_skyline::graph::{generate_graph, path_cost, GeneratorConfig};
use route_skyline::oracle::{
    brute_force_skyline, brute_force_skyline_with, dijkstra_single, EnumerationOrder,
};
use route_skyline::{
    answer_query, answer_query_with, CostVector, Method, MultiCostGraph, NodeId, SearchOptions,
};

fn small_graph(rng: &mut ChaCha8Rng) -> MultiCostGraph {
    let n = rng.random_range(5..=12);
    let m = rng.random_range(n..=3 * n);
    let d = rng.random_range(2..=3);
    let cfg = GeneratorConfig::random(n, m, d, rng.random()).with_max_cost(10);
    generate_graph(&cfg).unwrap()
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

#[test]
fn every_method_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..150 {
        let g = small_graph(&mut rng);
        let (s, t) = endpoints(&mut rng, &g);
        let expected: Vec<CostVector> = brute_force_skyline(&g, s, t)
            .unwrap()
            .iter()
            .map(|p| p.cost())
            .collect();
        for m in Method::ALL.into_iter().filter(|m| m.supports(g.criteria())) {
            let r = answer_query(&g, s, t, m).unwrap();
            assert_eq!(r.costs(), expected, "method {m}, query {s}->{t}");
            for p in &r.skyline {
                assert_eq!(p.start(), s);
                assert_eq!(p.end(), t);
                assert_eq!(path_cost(&g, p), p.cost());
                let nodes = p.nodes(&g);
                let mut uniq = nodes.clone();
                uniq.sort();
                uniq.dedup();
                assert_eq!(uniq.len(), nodes.len(), "path repeats a node");
            }
        }
    }
}

#[test]
fn disabling_the_global_check_keeps_the_answer() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let opts = SearchOptions {
        global_check: false,
        audit: true,
        ..Default::default()
    };
    for _ in 0..60 {
        let g = small_graph(&mut rng);
        let (s, t) = endpoints(&mut rng, &g);
        let plain = answer_query(&g, s, t, Method::ParetoPrep).unwrap();
        let unchecked = answer_query_with(&g, s, t, Method::ParetoPrep, &opts).unwrap();
        assert_eq!(plain.costs(), unchecked.costs());
        assert!(unchecked.metrics.assembled_path_count >= plain.metrics.assembled_path_count);
    }
}

#[test]
fn oracle_is_independent_of_enumeration_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..40 {
        let g = small_graph(&mut rng);
        let (s, t) = endpoints(&mut rng, &g);
        let a: Vec<_> = brute_force_skyline(&g, s, t)
            .unwrap()
            .iter()
            .map(|p| p.cost())
            .collect();
        let b: Vec<_> = brute_force_skyline_with(&g, s, t, 14, EnumerationOrder::Reversed)
            .unwrap()
            .iter()
            .map(|p| p.cost())
            .collect();
        assert_eq!(a, b);
    }
}

fn check_single_criterion_optima(g: &MultiCostGraph, s: NodeId, t: NodeId, r: &LowerBoundResult) {
    for i in 0..g.criteria() {
        let truth = dijkstra_single(g, s, t, i).unwrap().distance;
        assert_eq!(r.lb_s_t[i], truth, "{} criterion {i} on {s}->{t}", r.method);
        if truth.is_finite() {
            let best = r
                .shortest_paths
                .paths()
                .map(|p| p.cost()[i])
                .fold(f64::INFINITY, f64::min);
            assert_eq!(best, truth);
        }
    }
}

#[test]
fn bound_phases_find_exact_single_criterion_optima() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..60 {
        let n = rng.random_range(10..=150);
        let d = rng.random_range(2..=5);
        let cfg = GeneratorConfig::random(n, rng.random_range(n..=4 * n), d, rng.random());
        let g = generate_graph(&cfg).unwrap();
        let (s, t) = endpoints(&mut rng, &g);
        check_single_criterion_optima(&g, s, t, &pareto_prep(&g, s, t).unwrap());
        check_single_criterion_optima(&g, s, t, &bidirectional_pareto_prep(&g, s, t).unwrap());
        check_single_criterion_optima(&g, s, t, &multi_dijkstra(&g, s, t).unwrap());
        if d == 2 {
            check_single_criterion_optima(&g, s, t, &double_dijkstra(&g, s, t).unwrap());
        }
    }
}

#[test]
fn grid_queries_agree_across_methods() {
    for seed in 0..4 {
        let g =
            generate_graph(&GeneratorConfig::grid(15, 15, 3, seed).with_correlation(0.3)).unwrap();
        let (s, t) = (NodeId(16), NodeId(200));
        let reference = answer_query(&g, s, t, Method::None).unwrap().costs();
        for m in [
            Method::ParetoPrep,
            Method::BidirectionalParetoPrep,
            Method::MultiDijkstra,
        ] {
            assert_eq!(
                answer_query(&g, s, t, m).unwrap().costs(),
                reference,
                "method {m}"
            );
        }
    }
}
