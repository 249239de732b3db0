mod common;

use common::{naive_density_ok, random_graph, reference_threshold, rng};
use pcat_core::analysis::{
    bipartite_spine_split, degree_threshold, is_beta_extremal, meets_threshold, neighborhood_density_ok, AnalysisError,
    ExtremalKind, SearchMode,
};
use pcat_core::graph::generators::{complete, complete_bipartite, random_min_degree_seeded, two_cliques};
use pcat_core::oracle::exact_solve;
use pcat_core::{Graph, Rational};
use proptest::prelude::*;

fn beta(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// `‖G[W]‖ ≤ βn²` or `‖V1, V2‖ ≤ βn²` recomputed from the witness.
fn witness_holds(g: &Graph, kind: &ExtremalKind, b: Rational) -> bool {
    let n = g.n() as i64;
    let limit = b * Rational::from_integer(n * n);
    let half = Rational::new(1, 2) - b;
    match kind {
        ExtremalKind::NonExtremal => true,
        ExtremalKind::SparseSet { w } => {
            Rational::from_integer(w.len() as i64) >= half * Rational::from_integer(n)
                && Rational::from_integer(g.internal_edges(w) as i64) <= limit
        }
        ExtremalKind::SparseCut { v1, v2 } => {
            let big = |s: usize| Rational::from_integer(s as i64) >= half * Rational::from_integer(n);
            big(v1.len())
                && big(v2.len())
                && v1.is_disjoint(v2)
                && v1.len() + v2.len() == g.n()
                && Rational::from_integer(g.edges_between(v1, v2) as i64) <= limit
        }
    }
}

proptest! {
    #[test]
    fn threshold_matches_case_split(p in 1usize..=6, k in 1usize..=100) {
        let n = k * (p + 1);
        let (num, den) = reference_threshold(n, p).unwrap();
        prop_assert_eq!(degree_threshold(n, p).unwrap(), Rational::new(num, den));
    }

    #[test]
    fn threshold_rejects_indivisible(p in 1usize..=6, n in 1usize..200) {
        prop_assume!(n % (p + 1) != 0);
        prop_assert!(degree_threshold(n, p).is_err());
    }

    #[test]
    fn meets_threshold_is_rational_comparison(n in 2usize..30, frac in 0.0f64..1.0, seed in any::<u64>(), p in 1usize..=3) {
        prop_assume!(n % (p + 1) == 0);
        let d = ((n - 1) as f64 * frac) as usize;
        let g = random_min_degree_seeded(n, d, seed);
        let expect = Rational::from_integer(g.min_degree().unwrap() as i64) >= degree_threshold(n, p).unwrap();
        prop_assert_eq!(meets_threshold(&g, p).unwrap(), expect);
    }

    #[test]
    fn density_matches_double_loop(n in 2usize..=20, q in 0.3f64..1.0, seed in any::<u64>(), den in 2i64..30) {
        let g = random_graph(n, q, &mut rng(seed));
        prop_assert_eq!(neighborhood_density_ok(&g, beta(1, den)).ok, naive_density_ok(&g, 1, den));
    }

    #[test]
    fn local_search_never_contradicts_exhaustive(n in 4usize..=16, q in 0.2f64..0.9, seed in any::<u64>(), den in 5i64..=40) {
        let g = random_graph(n, q, &mut rng(seed));
        let b = beta(1, den);
        let exact = is_beta_extremal(&g, b, SearchMode::Exhaustive).unwrap();
        let local = is_beta_extremal(&g, b, SearchMode::local(seed)).unwrap();
        prop_assert!(witness_holds(&g, &exact.kind, b));
        prop_assert!(witness_holds(&g, &local.kind, b));
        if local.is_extremal() {
            prop_assert!(exact.is_extremal());
        }
    }
}

#[test]
fn threshold_examples() {
    assert_eq!(degree_threshold(12, 1), Ok(Rational::from_integer(6)));
    assert_eq!(degree_threshold(9, 2), Ok(Rational::from_integer(4)));
    assert_eq!(degree_threshold(12, 3), Ok(Rational::new(13, 2)));
    assert!(matches!(degree_threshold(10, 2), Err(AnalysisError::Divisibility { n: 10, p: 2 })));
    let k66 = complete_bipartite(6, 6);
    assert_eq!(meets_threshold(&k66, 1), Ok(true));
    assert_eq!(meets_threshold(&k66, 3), Ok(false));
    assert_eq!(meets_threshold(&complete(12), 2), Ok(true));
}

#[test]
fn split_examples_agree_with_oracle() {
    for (a, b, p, feasible) in [(5, 7, 1, false), (6, 6, 2, true), (4, 8, 3, false), (5, 7, 3, true)] {
        assert_eq!(bipartite_spine_split(a, b, p).unwrap().feasible, feasible, "({a}, {b}, {p})");
        let oracle = exact_solve(&complete_bipartite(a, b), p, 10_000_000).unwrap();
        assert_eq!(oracle.is_found(), feasible, "oracle on K_({a},{b}) with p = {p}");
    }
}

#[test]
fn extremality_examples() {
    let cut = is_beta_extremal(&two_cliques(12), beta(1, 20), SearchMode::Exhaustive).unwrap();
    assert!(matches!(cut.kind, ExtremalKind::SparseCut { .. }));
    let set = is_beta_extremal(&complete_bipartite(6, 6), beta(1, 20), SearchMode::Exhaustive).unwrap();
    assert!(matches!(set.kind, ExtremalKind::SparseSet { .. }));
    let none = is_beta_extremal(&complete(12), beta(1, 100), SearchMode::Exhaustive).unwrap();
    assert_eq!(none.kind, ExtremalKind::NonExtremal);
    assert!(is_beta_extremal(&complete(12), beta(1, 2), SearchMode::Exhaustive).is_err());
}

#[test]
fn density_examples() {
    assert!(neighborhood_density_ok(&complete(20), beta(1, 10)).ok);
    assert!(!neighborhood_density_ok(&two_cliques(16), beta(1, 5)).ok);
}
