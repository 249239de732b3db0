//! Reference implementations used as independent oracles. They only touch
//! the graph through `n()` and `has_edge`, and share no code with the
//! library's search, matching or validation routines.

#![allow(dead_code)]

use pcat_core::Graph;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Threshold as `(numerator, denominator)` in lowest terms, from the
/// three-case rule on the parity of `n/(p+1)` and the size of `p`.
pub fn reference_threshold(n: usize, p: usize) -> Option<(i64, i64)> {
    if p == 0 || n == 0 || !n.is_multiple_of(p + 1) {
        return None;
    }
    let n = n as i64;
    let q = n / (p as i64 + 1);
    let twice = if q % 2 == 0 {
        n
    } else if p > 2 {
        n + 1
    } else {
        n - 1
    };
    Some(if twice % 2 == 0 { (twice / 2, 1) } else { (twice, 2) })
}

/// Direct check of every caterpillar clause.
pub fn reference_is_caterpillar(g: &Graph, p: usize, spine: &[usize], spikes: &[Vec<usize>]) -> bool {
    let n = g.n();
    if p == 0 || spine.is_empty() || spine.len() != spikes.len() {
        return false;
    }
    if spikes.iter().any(|s| s.len() != p) {
        return false;
    }
    let all: Vec<usize> = spine.iter().chain(spikes.iter().flatten()).copied().collect();
    if all.iter().any(|&v| v >= n) {
        return false;
    }
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if all[i] == all[j] {
                return false;
            }
        }
    }
    for i in 1..spine.len() {
        if !g.has_edge(spine[i - 1], spine[i]) {
            return false;
        }
    }
    spine.iter().zip(spikes).all(|(&v, s)| s.iter().all(|&x| g.has_edge(v, x)))
}

/// Calls `visit` with every spine sequence of length `q` (ascending
/// lexicographic order, consecutive vertices adjacent).
fn for_each_spine(g: &Graph, q: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        g: &Graph,
        q: usize,
        seq: &mut Vec<usize>,
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if seq.len() == q {
            return visit(seq);
        }
        for v in 0..g.n() {
            if used[v] {
                continue;
            }
            if let Some(&last) = seq.last() {
                if !g.has_edge(last, v) {
                    continue;
                }
            }
            used[v] = true;
            seq.push(v);
            let stop = rec(g, q, seq, used, visit);
            seq.pop();
            used[v] = false;
            if stop {
                return true;
            }
        }
        false
    }
    rec(g, q, &mut Vec::new(), &mut vec![false; g.n()], visit)
}

/// Number of ways to hand every free vertex to an adjacent spine vertex so
/// each spine vertex receives exactly `p`; stops counting at `limit`.
fn leaf_assignments(g: &Graph, p: usize, spine: &[usize], free: &[usize], limit: u128) -> u128 {
    fn rec(g: &Graph, p: usize, spine: &[usize], free: &[usize], load: &mut [usize], limit: u128) -> u128 {
        let Some((&x, rest)) = free.split_first() else {
            return 1;
        };
        let mut total = 0;
        for (i, &s) in spine.iter().enumerate() {
            if load[i] < p && g.has_edge(s, x) {
                load[i] += 1;
                total += rec(g, p, spine, rest, load, limit - total);
                load[i] -= 1;
                if total >= limit {
                    break;
                }
            }
        }
        total
    }
    rec(g, p, spine, free, &mut vec![0; spine.len()], limit)
}

fn free_vertices(n: usize, spine: &[usize]) -> Vec<usize> {
    (0..n).filter(|v| !spine.contains(v)).collect()
}

/// Whether some spanning p-caterpillar exists, by trying every spine.
pub fn naive_has_spanning(g: &Graph, p: usize) -> bool {
    let n = g.n();
    if p == 0 || n == 0 || !n.is_multiple_of(p + 1) {
        return false;
    }
    let q = n / (p + 1);
    for_each_spine(g, q, &mut |spine| {
        spine[0] <= spine[q - 1] && leaf_assignments(g, p, spine, &free_vertices(n, spine), 1) > 0
    })
}

/// Number of distinct spanning p-caterpillars: spines up to reversal, each
/// with every valid spike assignment.
pub fn naive_count(g: &Graph, p: usize) -> u128 {
    let n = g.n();
    if p == 0 || n == 0 || !n.is_multiple_of(p + 1) {
        return 0;
    }
    let q = n / (p + 1);
    let mut total = 0;
    for_each_spine(g, q, &mut |spine| {
        if q == 1 || spine[0] < spine[q - 1] {
            total += leaf_assignments(g, p, spine, &free_vertices(n, spine), u128::MAX);
        }
        false
    });
    total
}

/// `‖A, B‖` counted edge by edge: unordered pairs with one end in each set.
pub fn naive_edges_between(g: &Graph, a: &[usize], b: &[usize]) -> usize {
    let n = g.n();
    let (mut ina, mut inb) = (vec![false; n], vec![false; n]);
    a.iter().for_each(|&v| ina[v] = true);
    b.iter().for_each(|&v| inb[v] = true);
    let mut count = 0;
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) && ((ina[u] && inb[v]) || (ina[v] && inb[u])) {
                count += 1;
            }
        }
    }
    count
}

pub fn naive_neighbors(g: &Graph, v: usize) -> Vec<usize> {
    (0..g.n()).filter(|&u| g.has_edge(u, v)).collect()
}

/// Whether `32·‖N(u), N(v)‖ ≥ β²n²` for all pairs, with `β = num/den`.
pub fn naive_density_ok(g: &Graph, num: i64, den: i64) -> bool {
    let n = g.n() as i64;
    let nbrs: Vec<Vec<usize>> = (0..g.n()).map(|v| naive_neighbors(g, v)).collect();
    (0..g.n()).all(|u| {
        (u..g.n()).all(|v| 32 * den * den * naive_edges_between(g, &nbrs[u], &nbrs[v]) as i64 >= num * num * n * n)
    })
}

/// `G(n, q)` drawn edge by edge.
pub fn random_graph(n: usize, q: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(q) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("simple graph")
}

pub fn complete_bipartite_edges(a: usize, b: usize) -> Vec<(usize, usize)> {
    (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect()
}
