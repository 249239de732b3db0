//! Spanning caterpillars in nearly complete bipartite graphs: a spine that
//! alternates between small sets `B_1 ∋ x`, `B_2`, with every spine vertex
//! taking `p` leaves from the opposite side.

use rand::seq::IndexedRandom;
use rand::Rng;

use super::{failed, precondition, SolverError};
use crate::caterpillar::Caterpillar;
use crate::graph::{Graph, VertexSet};
use crate::matching::star_system;
use crate::rational::{int, Rational};
use crate::rng::stream;

const ROTATION_LIMIT: usize = 20_000;
const SPLIT_ATTEMPTS: u64 = 12;
const PATH_SEED: u64 = 0x9a7;

/// Spanning path of the bipartite graph between `b1 ∋ x` and `b2` that
/// starts at `x`, found by greedy extension with end rotations. Only edges
/// between the two sets are used. `None` when the rotation budget runs out.
pub fn hamilton_path_from(g: &Graph, b1: &VertexSet, b2: &VertexSet, x: usize) -> Option<Vec<usize>> {
    if !b1.contains(x) || !b1.is_disjoint(b2) {
        return None;
    }
    let total = b1.len() + b2.len();
    let other = |v: usize| if b1.contains(v) { b2 } else { b1 };
    let mut rng = stream(PATH_SEED, x as u64);
    let mut path = vec![x];
    let mut on = VertexSet::from_slice(g.n(), &[x]);
    let mut rotations = 0;
    while path.len() < total {
        let e = *path.last().expect("non-empty");
        let mut fresh = g.neighbors(e).intersection(other(e));
        fresh.difference_with(&on);
        if let Some(next) = fresh.iter().max_by_key(|&w| {
            let mut f = g.neighbors(w).intersection(other(w));
            f.difference_with(&on);
            (std::cmp::Reverse(f.len()), std::cmp::Reverse(w))
        }) {
            // extend through the candidate with the fewest fresh options first
            on.insert(next);
            path.push(next);
            continue;
        }
        if rotations == ROTATION_LIMIT {
            return None;
        }
        rotations += 1;
        let len = path.len();
        let pivots: Vec<usize> =
            (0..len.saturating_sub(2)).filter(|&i| g.has_edge(e, path[i]) && other(e).contains(path[i])).collect();
        if pivots.is_empty() {
            return None;
        }
        let promising: Vec<usize> = pivots
            .iter()
            .copied()
            .filter(|&i| {
                let w = path[i + 1];
                let mut f = g.neighbors(w).intersection(other(w));
                f.difference_with(&on);
                !f.is_empty()
            })
            .collect();
        let i = if promising.is_empty() || rng.random_bool(0.1) {
            *pivots.choose(&mut rng).expect("non-empty")
        } else {
            *promising.choose(&mut rng).expect("non-empty")
        };
        path[i + 1..].reverse();
    }
    Some(path)
}

fn split_sizes(n: usize, p: usize) -> (usize, usize) {
    let q = n / (p + 1);
    if q.is_multiple_of(2) {
        (q / 2, q / 2)
    } else {
        (q.div_ceil(2), (q - 1) / 2)
    }
}

/// Required `(|A_1|, |A_2|)` for `n` vertices.
pub(crate) fn side_sizes(n: usize, p: usize) -> (usize, usize) {
    let q = n / (p + 1);
    if q.is_multiple_of(2) {
        (n / 2, n / 2)
    } else {
        ((n + 1 - p) / 2, (n + p - 1) / 2)
    }
}

/// Spanning caterpillar of the bipartite graph between `a1 ∋ x` and `a2`
/// (inner edges ignored) starting at `x`. Sizes must match [`side_sizes`];
/// degrees are not checked. Tries a degree-ranked choice of `B_1, B_2` and
/// then a few random ones.
pub(crate) fn bipartite_core(
    g: &Graph,
    a1: &VertexSet,
    a2: &VertexSet,
    x: usize,
    p: usize,
) -> Result<Caterpillar, SolverError> {
    let n = a1.len() + a2.len();
    if p == 0 || !n.is_multiple_of(p + 1) || (a1.len(), a2.len()) != side_sizes(n, p) || !a1.contains(x) {
        return Err(precondition("bipartite sides do not fit the caterpillar shape"));
    }
    let (k1, k2) = split_sizes(n, p);
    let ranked = |side: &VertexSet, across: &VertexSet, skip: Option<usize>| -> Vec<usize> {
        let mut v: Vec<usize> = side.iter().filter(|&u| Some(u) != skip).collect();
        v.sort_by_key(|&u| (std::cmp::Reverse(g.degree_into(u, across)), u));
        v
    };
    for attempt in 0..SPLIT_ATTEMPTS {
        let mut c1 = ranked(a1, a2, Some(x));
        let mut c2 = ranked(a2, a1, None);
        if attempt > 0 {
            use rand::seq::SliceRandom;
            let mut rng = stream(x as u64, attempt);
            c1.shuffle(&mut rng);
            c2.shuffle(&mut rng);
        }
        let mut b1 = VertexSet::from_iter_in(g.n(), c1.into_iter().take(k1 - 1));
        b1.insert(x);
        let b2 = VertexSet::from_iter_in(g.n(), c2.into_iter().take(k2));
        let Some(spine) = hamilton_path_from(g, &b1, &b2, x) else { continue };
        let (c_1, c_2): (Vec<usize>, Vec<usize>) = spine.iter().partition(|&&v| b1.contains(v));
        let Some(s1) = star_system(g, &c_1, &vec![p; c_1.len()], &a2.difference(&b2)) else { continue };
        let Some(s2) = star_system(g, &c_2, &vec![p; c_2.len()], &a1.difference(&b1)) else { continue };
        let (mut i1, mut i2) = (s1.into_iter(), s2.into_iter());
        let spikes = spine
            .iter()
            .map(|&v| if b1.contains(v) { i1.next() } else { i2.next() }.expect("one star per center"))
            .collect();
        return Ok(Caterpillar::from_parts_unchecked(p, spine, spikes));
    }
    Err(failed("no spine split admits a spanning path with stars"))
}

/// Spanning p-caterpillar of the bipartite graph `h = (a1, a2)` starting at
/// `x ∈ a1`, assuming the side sizes fit `n/(p+1)`'s parity and every
/// vertex sees at least `(1−ξ)` of the other side, `ξ < 1/(4p+5)`.
pub fn bipartite_spanning(
    h: &Graph,
    a1: &VertexSet,
    a2: &VertexSet,
    x: usize,
    p: usize,
    xi: Rational,
) -> Result<Caterpillar, SolverError> {
    let n = h.n();
    if p == 0 || !n.is_multiple_of(p + 1) {
        return Err(precondition("n must be a positive multiple of p + 1"));
    }
    if !a1.is_disjoint(a2) || a1.len() + a2.len() != n {
        return Err(precondition("sides must partition the vertex set"));
    }
    if (a1.len(), a2.len()) != side_sizes(n, p) {
        return Err(precondition("side sizes do not match n/(p+1) parity"));
    }
    if !a1.contains(x) {
        return Err(precondition("start vertex must lie in the first side"));
    }
    if !super::dense::extension_xi_ok(p, xi) {
        return Err(precondition("xi must lie in [0, 1/(4p+5))"));
    }
    let one = Rational::from_integer(1);
    for (side, across) in [(a1, a2), (a2, a1)] {
        let need = (one - xi) * int(across.len());
        if side.iter().any(|v| int(h.degree_into(v, across)) < need) {
            return Err(precondition("cross degree below (1 - xi) of the other side"));
        }
    }
    bipartite_core(h, a1, a2, x, p)
}
