//! Spanning x,y-caterpillars in graphs of minimum degree close to `n`.

use std::collections::VecDeque;

use super::grow::{any_edge, extend_end, insert_interior, pick_spikes, swap_insert};
use super::{failed, precondition, SolverError};
use crate::caterpillar::{is_spanning, Caterpillar};
use crate::graph::{Graph, VertexSet};
use crate::matching::star_system;
use crate::rational::{int, Rational};

/// `0 ≤ ξ < 1/(4p+5)`.
pub fn extension_xi_ok(p: usize, xi: Rational) -> bool {
    xi >= Rational::from_integer(0) && xi < Rational::new(1, 4 * p as i64 + 5)
}

/// Spanning p-caterpillar of `h` from `x` to `y`, assuming `(p+1) | n`,
/// `ξ < 1/(4p+5)` and `δ(h) ≥ (1−ξ)n`; all three are checked.
///
/// Starts from a shortest x,y-path and inserts one uncovered vertex at a
/// time between two consecutive spine neighbors, exchanging spikes where
/// the new vertex needs them.
pub fn dense_spanning(h: &Graph, x: usize, y: usize, p: usize, xi: Rational) -> Result<Caterpillar, SolverError> {
    let n = h.n();
    if p == 0 || !n.is_multiple_of(p + 1) {
        return Err(precondition("n must be a positive multiple of p + 1"));
    }
    if x == y || x >= n || y >= n {
        return Err(precondition("endpoints must be distinct vertices"));
    }
    if !extension_xi_ok(p, xi) {
        return Err(precondition("xi must lie in [0, 1/(4p+5))"));
    }
    let delta = h.min_degree().map_err(|e| precondition(e.to_string()))?;
    if int(delta) < (Rational::from_integer(1) - xi) * int(n) {
        return Err(precondition("minimum degree below (1 - xi) n"));
    }
    let c = dense_spanning_core(h, &h.vertices(), x, Some(y), p)?;
    debug_assert!(is_spanning(h, &c));
    Ok(c)
}

fn shortest_path_in(g: &Graph, region: &VertexSet, x: usize, y: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; g.n()];
    prev[x] = x;
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        if u == y {
            let mut path = vec![y];
            let mut cur = y;
            while cur != x {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for w in g.neighbors(u).intersection(region).iter() {
            if prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Caterpillar spanning `region` (no hypotheses checked) starting at `x`
/// and ending at `y` when given, otherwise anywhere. Fails instead of
/// guessing when no local move applies.
pub(crate) fn dense_spanning_core(
    g: &Graph,
    region: &VertexSet,
    x: usize,
    y: Option<usize>,
    p: usize,
) -> Result<Caterpillar, SolverError> {
    if !region.len().is_multiple_of(p + 1) || !region.contains(x) || y.is_some_and(|y| y == x || !region.contains(y)) {
        return Err(precondition("region size or endpoints unsuitable"));
    }
    let mut cat = match y {
        Some(y) => {
            let path = shortest_path_in(g, region, x, y).ok_or_else(|| failed("endpoints not connected in region"))?;
            let mut pool = region.clone();
            for &v in &path {
                pool.remove(v);
            }
            let spikes = star_system(g, &path, &vec![p; path.len()], &pool)
                .ok_or_else(|| failed("no spikes for the initial path"))?;
            Caterpillar::from_parts_unchecked(p, path, spikes)
        }
        None => {
            let mut pool = region.clone();
            pool.remove(x);
            let spikes = pick_spikes(g, x, &pool, p, &any_edge).ok_or_else(|| failed("start vertex lacks spikes"))?;
            Caterpillar::from_parts_unchecked(p, vec![x], vec![spikes])
        }
    };
    let mut free = region.difference(&cat.vertex_set(g.n()));
    while !free.is_empty() {
        let moved = (y.is_none() && extend_end(g, &mut cat, &mut free, &any_edge) > 0)
            || insert_interior(g, &mut cat, &mut free)
            || swap_insert(g, &mut cat, &mut free);
        if !moved {
            return Err(failed(format!("no insertion move with {} vertices uncovered", free.len())));
        }
    }
    Ok(cat)
}
