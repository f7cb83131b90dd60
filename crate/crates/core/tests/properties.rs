use proptest::prelude::*;
use route_skyline::bounds::pareto_prep;
use route_skyline::graph::{parse_graph, write_graph, GraphBuilder, PathError};
use route_skyline::oracle::{all_simple_paths, brute_force_skyline, dijkstra_single};
use route_skyline::{
    answer_query, CostVector, EdgeId, Method, MultiCostGraph, NodeId, Path, Skyline,
    SortedSkyline2D,
};

fn vector(d: usize) -> impl Strategy<Value = CostVector> {
    prop::collection::vec(0u8..6, d)
        .prop_map(|v| CostVector::from_slice(&v.iter().map(|&x| f64::from(x)).collect::<Vec<_>>()))
}

/// Edge list over `n` nodes with integer costs, no self-loops.
fn edge_list(n: u32, d: usize) -> impl Strategy<Value = Vec<(u32, u32, Vec<u8>)>> {
    prop::collection::vec(
        (0..n, 0..n - 1, prop::collection::vec(1u8..=10, d)).prop_map(move |(a, b, c)| {
            let b = if b >= a { b + 1 } else { b };
            (a, b, c)
        }),
        1..(3 * n as usize),
    )
}

fn build(d: usize, n: u32, edges: &[(u32, u32, Vec<u8>)]) -> MultiCostGraph {
    let mut b = GraphBuilder::new(d).unwrap();
    b.ensure_nodes(n as usize);
    for (a, c, w) in edges {
        let w: Vec<f64> = w.iter().map(|&x| f64::from(x)).collect();
        b.add_edge(*a, *c, &w).unwrap();
    }
    b.build()
}

fn small_graph() -> impl Strategy<Value = MultiCostGraph> {
    (2usize..=3, 3u32..=8)
        .prop_flat_map(|(d, n)| edge_list(n, d).prop_map(move |e| build(d, n, &e)))
}

fn sorted_costs(mut v: Vec<CostVector>) -> Vec<CostVector> {
    v.sort_by(|a, b| a.lex_cmp(b));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dominance_is_a_strict_partial_order(a in vector(3), b in vector(3), c in vector(3)) {
        prop_assert!(!a.dominates(&a));
        prop_assert!(!(a.dominates(&b) && b.dominates(&a)));
        if a.dominates(&b) && b.dominates(&c) {
            prop_assert!(a.dominates(&c));
        }
    }

    #[test]
    fn skyline_keeps_exactly_the_nondominated_costs(vs in prop::collection::vec(vector(3), 0..60)) {
        let mut sky = Skyline::new();
        for (i, v) in vs.iter().enumerate() {
            sky.insert(*v, i);
        }
        let kept: Vec<CostVector> = sky.costs().collect();
        for (i, a) in kept.iter().enumerate() {
            for b in &kept[i + 1..] {
                prop_assert!(!a.dominates(b) && !b.dominates(a) && a != b);
            }
        }
        // Every inserted vector is covered; every kept vector is a true maximum.
        for v in &vs {
            prop_assert!(kept.iter().any(|k| k == v || k.dominates(v)));
        }
        for k in &kept {
            prop_assert!(!vs.iter().any(|v| v.dominates(k)));
        }
        // One witness per cost: the first occurrence.
        for (k, &i) in sky.iter() {
            prop_assert_eq!(vs.iter().position(|v| *v == k), Some(i));
        }
    }

    #[test]
    fn sorted_2d_skyline_matches_general(vs in prop::collection::vec(vector(2), 0..80)) {
        let mut general = Skyline::new();
        let mut sorted = SortedSkyline2D::new();
        for (i, v) in vs.iter().enumerate() {
            let a = general.insert(*v, i);
            let b = sorted.insert(*v, i).unwrap();
            prop_assert_eq!(a, b);
        }
        let g: Vec<(CostVector, usize)> = {
            let mut e = general.into_entries();
            e.sort_by(|x, y| x.0.lex_cmp(&y.0));
            e
        };
        let s = sorted.into_entries();
        prop_assert_eq!(g.len(), s.len());
        for (x, y) in g.iter().zip(&s) {
            prop_assert_eq!(x.0, y.0);
            prop_assert_eq!(x.1, y.1);
        }
    }

    #[test]
    fn text_format_round_trips(g in small_graph()) {
        let mut buf = Vec::new();
        write_graph(&g, &mut buf).unwrap();
        let back = parse_graph(std::str::from_utf8(&buf).unwrap()).unwrap();
        // Trailing isolated nodes are not representable in the edge list.
        if g.nodes().last().is_none_or(|n| g.in_degree(n) + g.out_degree(n) > 0) {
            prop_assert_eq!(back, g);
        }
    }

    #[test]
    fn path_construction_rejects_non_paths(g in small_graph(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..6)) {
        let edges: Vec<EdgeId> = picks.iter().map(|i| EdgeId(i.index(g.edge_count()) as u32)).collect();
        let start = g.edge(edges[0]).from;
        let mut at = start;
        let mut seen = vec![start];
        let mut expected = Ok(());
        for (k, &e) in edges.iter().enumerate() {
            let edge = g.edge(e);
            if edge.from != at {
                expected = Err(PathError::BrokenChain { position: k, expected: at });
                break;
            }
            if seen.contains(&edge.to) {
                expected = Err(PathError::RepeatedNode(edge.to));
                break;
            }
            seen.push(edge.to);
            at = edge.to;
        }
        prop_assert_eq!(Path::from_edges(&g, start, edges).map(|_| ()), expected);
    }

    #[test]
    fn every_method_equals_brute_force(g in small_graph(), s in any::<prop::sample::Index>(), t in any::<prop::sample::Index>()) {
        let s = NodeId(s.index(g.node_count()) as u32);
        let t = NodeId(t.index(g.node_count()) as u32);
        prop_assume!(s != t);
        let expected: Vec<CostVector> = brute_force_skyline(&g, s, t).unwrap().iter().map(|p| p.cost()).collect();
        for m in Method::ALL.into_iter().filter(|m| m.supports(g.criteria())) {
            prop_assert_eq!(answer_query(&g, s, t, m).unwrap().costs(), expected.clone(), "method {}", m);
        }
    }

    #[test]
    fn brute_force_ignores_adjacency_order(
        (d, n, edges, perm) in (2usize..=3, 3u32..=7).prop_flat_map(|(d, n)| {
            edge_list(n, d).prop_flat_map(move |e| {
                let len = e.len();
                (Just(d), Just(n), Just(e), Just((0..len).collect::<Vec<_>>()).prop_shuffle())
            })
        })
    ) {
        let g = build(d, n, &edges);
        let shuffled: Vec<_> = perm.iter().map(|&i| edges[i].clone()).collect();
        let h = build(d, n, &shuffled);
        for t in 1..n {
            let a: Vec<_> = brute_force_skyline(&g, NodeId(0), NodeId(t)).unwrap().iter().map(|p| p.cost()).collect();
            let b: Vec<_> = brute_force_skyline(&h, NodeId(0), NodeId(t)).unwrap().iter().map(|p| p.cost()).collect();
            prop_assert_eq!(sorted_costs(a), sorted_costs(b));
        }
    }

    #[test]
    fn dijkstra_is_below_every_path(g in small_graph(), t in any::<prop::sample::Index>()) {
        let t = NodeId(t.index(g.node_count() - 1) as u32 + 1);
        let paths = all_simple_paths(&g, NodeId(0), t, 14).unwrap();
        for i in 0..g.criteria() {
            let best = dijkstra_single(&g, NodeId(0), t, i).unwrap();
            for p in &paths {
                prop_assert!(best.distance <= p.cost()[i]);
            }
            let min = paths.iter().map(|p| p.cost()[i]).fold(f64::INFINITY, f64::min);
            prop_assert_eq!(best.distance, min);
        }
    }

    #[test]
    fn pareto_prep_bounds_every_skyline_suffix(g in small_graph(), t in any::<prop::sample::Index>()) {
        let t = NodeId(t.index(g.node_count() - 1) as u32 + 1);
        let s = NodeId(0);
        let bounds = pareto_prep(&g, s, t).unwrap();
        for p in brute_force_skyline(&g, s, t).unwrap() {
            let nodes = p.nodes(&g);
            let mut suffix = CostVector::zero(g.criteria());
            for (k, &e) in p.edges().iter().enumerate().rev() {
                suffix = suffix + g.edge(e).cost;
                let lb = bounds.lb(nodes[k]);
                for i in 0..g.criteria() {
                    prop_assert!(lb[i] <= suffix[i], "node {} criterion {}", nodes[k], i);
                }
            }
        }
    }
}
