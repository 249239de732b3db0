//! Deterministic constructions (including the tightness families) and
//! seeded random graphs.

use rand::seq::IndexedRandom;
use rand::Rng;

use super::Graph;
use crate::rng::seeded;

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

pub fn cycle(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    if n >= 3 {
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
    } else if n == 2 {
        g.add_edge(0, 1);
    }
    g
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.add_edge(v - 1, v);
    }
    g
}

/// `K_{⌊n/2⌋} ∪ K_{⌈n/2⌉}`; the first clique occupies `0..⌊n/2⌋`.
pub fn two_cliques(n: usize) -> Graph {
    let half = n / 2;
    let mut g = Graph::empty(n);
    for (lo, hi) in [(0, half), (half, n)] {
        for u in lo..hi {
            for v in u + 1..hi {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// `K_{a,b}` with side `A = 0..a` and side `B = a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::empty(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v);
        }
    }
    g
}

/// Erdős–Rényi `G(n, q)`.
pub fn gnp<R: Rng + ?Sized>(n: usize, q: f64, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(q.clamp(0.0, 1.0)) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// A random graph with `δ(G) ≥ d`.
///
/// Samples `G(n, q)` with `q = (d + 1) / (n − 1)` (capped at 1), then visits
/// vertices in ascending order and tops up any deficient vertex with
/// uniformly random absent edges.
pub fn random_min_degree<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Graph {
    assert!(n == 0 || d < n, "minimum degree {d} impossible on {n} vertices");
    if n <= 1 {
        return Graph::empty(n);
    }
    let q = ((d as f64 + 1.0) / (n as f64 - 1.0)).min(1.0);
    let mut g = gnp(n, q, rng);
    for v in 0..n {
        while g.degree(v) < d {
            let absent: Vec<usize> = (0..n).filter(|&u| u != v && !g.has_edge(u, v)).collect();
            let &u = absent.choose(rng).expect("deficient vertex has an absent edge");
            g.add_edge(u, v);
        }
    }
    g
}

pub fn random_min_degree_seeded(n: usize, d: usize, seed: u64) -> Graph {
    random_min_degree(n, d, &mut seeded(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cliques_shape() {
        let g = two_cliques(8);
        assert_eq!(g.min_degree(), Ok(3));
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.component_count(), 2);

        let g = two_cliques(9);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(8), 4);
        assert_eq!(g.edge_count(), 6 + 10);
    }

    #[test]
    fn complete_bipartite_shape() {
        let g = complete_bipartite(5, 7);
        assert_eq!(g.n(), 12);
        assert_eq!(g.edge_count(), 35);
        assert_eq!(g.min_degree(), Ok(5));
        assert_eq!(complete_bipartite(6, 6).min_degree(), Ok(6));
        let k11 = complete_bipartite(1, 1);
        assert_eq!(k11.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn random_min_degree_examples() {
        assert_eq!(random_min_degree_seeded(10, 9, 7), complete(10));
        assert!(random_min_degree_seeded(8, 4, 1).min_degree().unwrap() >= 4);
        assert_eq!(random_min_degree_seeded(6, 0, 1).n(), 6);
        assert_eq!(random_min_degree_seeded(30, 12, 5), random_min_degree_seeded(30, 12, 5));
    }

    #[test]
    fn cycles_and_paths() {
        assert_eq!(cycle(6).edge_count(), 6);
        assert_eq!(path(4).edge_count(), 3);
        assert_eq!(cycle(2).edge_count(), 1);
    }
}
