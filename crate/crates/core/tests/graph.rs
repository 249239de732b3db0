mod common;

use common::{naive_edges_between, naive_neighbors, random_graph, rng};
use pcat_core::graph::generators::{complete, complete_bipartite, cycle, path, random_min_degree_seeded, two_cliques};
use pcat_core::graph::{parse_edge_list, serialize_edge_list};
use pcat_core::{Graph, GraphError, VertexSet};
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..16, 0.0f64..1.0, any::<u64>()).prop_map(|(n, q, seed)| random_graph(n, q, &mut rng(seed)))
}

fn arb_graph_and_sets() -> impl Strategy<Value = (Graph, Vec<usize>, Vec<usize>)> {
    arb_graph().prop_flat_map(|g| {
        let n = g.n();
        (
            Just(g),
            proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 0..=n),
            proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 0..=n),
        )
    })
}

proptest! {
    #[test]
    fn edge_list_round_trip(g in arb_graph()) {
        let back = parse_edge_list(&serialize_edge_list(&g)).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn adjacency_is_symmetric_and_matches_degrees(g in arb_graph()) {
        for v in 0..g.n() {
            prop_assert!(!g.has_edge(v, v));
            prop_assert_eq!(g.neighbors(v).to_vec(), naive_neighbors(&g, v));
            prop_assert_eq!(g.degree(v), naive_neighbors(&g, v).len());
        }
        let total: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn edges_between_matches_reference((g, a, b) in arb_graph_and_sets()) {
        let n = g.n();
        let (sa, sb) = (VertexSet::from_slice(n, &a), VertexSet::from_slice(n, &b));
        let got = g.edges_between(&sa, &sb);
        prop_assert_eq!(got, g.edges_between(&sb, &sa));
        // overlapping sets: each qualifying edge counts once
        prop_assert_eq!(got, naive_edges_between(&g, &a, &b));
        prop_assert_eq!(g.edges_between(&g.vertices(), &g.vertices()), g.edge_count());
    }

    #[test]
    fn internal_edges_counts_induced_pairs((g, a, _b) in arb_graph_and_sets()) {
        let set = VertexSet::from_slice(g.n(), &a);
        prop_assert_eq!(g.internal_edges(&set), naive_edges_between(&g, &a, &a));
    }

    #[test]
    fn random_min_degree_meets_floor(n in 2usize..40, frac in 0.0f64..1.0, seed in any::<u64>()) {
        let d = ((n - 1) as f64 * frac) as usize;
        let g = random_min_degree_seeded(n, d, seed);
        prop_assert!(g.min_degree().unwrap() >= d);
        prop_assert_eq!(g, random_min_degree_seeded(n, d, seed));
    }

    #[test]
    fn two_cliques_shape(n in 2usize..40) {
        let g = two_cliques(n);
        let half = n / 2;
        prop_assert_eq!(g.component_count(), if half == 0 { 1 } else { 2 });
        prop_assert_eq!(g.edge_count(), half * (half.saturating_sub(1)) / 2 + (n - half) * (n - half - 1) / 2);
        prop_assert_eq!(g.min_degree().unwrap(), half.saturating_sub(1).min(n - half - 1));
    }
}

#[test]
fn generator_examples() {
    assert_eq!(complete(6).edge_count(), 15);
    assert_eq!(cycle(7).edge_count(), 7);
    assert_eq!(cycle(7).min_degree(), Ok(2));
    assert_eq!(path(5).edge_count(), 4);
    assert_eq!(path(5).min_degree(), Ok(1));
    let k = complete_bipartite(3, 4);
    assert_eq!(k.edge_count(), 12);
    assert!(!k.has_edge(0, 1) && k.has_edge(0, 3));
    assert_eq!(k.component_count(), 1);
}

#[test]
fn edge_list_rejects_bad_input() {
    assert!(matches!(parse_edge_list("3 1\n0 0\n"), Err(GraphError::Loop(0))));
    assert!(matches!(parse_edge_list("3 2\n0 1\n1 0\n"), Err(GraphError::DuplicateEdge(..))));
    assert!(matches!(parse_edge_list("3 1\n0 3\n"), Err(GraphError::OutOfRange { vertex: 3, n: 3 })));
    assert!(matches!(parse_edge_list("3 1\n0 x\n"), Err(GraphError::Malformed { .. })));
    assert!(parse_edge_list("").is_err());
}

#[test]
fn edge_list_format_is_header_then_pairs() {
    let text = serialize_edge_list(&path(3));
    assert_eq!(text, "3 2\n0 1\n1 2\n");
}
