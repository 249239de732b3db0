//! Spanning caterpillars when some near-half vertex set `S` spans almost no
//! edges, so the graph is close to complete bipartite.
//!
//! Vertices with low degree across are redistributed between the sides
//! `Y_1, Y_2` so that the smaller side has the size `s` the bipartite shape
//! requires. A short head caterpillar fixes the size imbalance and pins
//! awkward vertices as spikes. The nearly complete bipartite remainder is
//! then spanned from a neighbor of the head's last spine vertex.

use super::bipartite::{bipartite_core, side_sizes};
use super::grow::{any_edge, pick_spikes};
use super::skeleton::{concat, match_into, skeleton, Center};
use super::two_cliques::extension_xi;
use super::{failed, precondition, SolverError};
use crate::caterpillar::{is_spanning, is_valid, Caterpillar};
use crate::graph::{Graph, VertexSet};
use crate::matching::{maximum_matching_in, star_system};

const START_CANDIDATES: usize = 6;

/// `√β = ξ/(10+3p)` with `ξ = 1/(4p+6)`; sets the rule (a) threshold.
pub(crate) fn classify_sqrt_beta(p: usize) -> f64 {
    extension_xi(p) / (10 + 3 * p) as f64
}

/// Target size of the smaller side: `n/2` when `n/(p+1)` is even, else
/// `(n−p+1)/2`.
fn target_small(n: usize, p: usize) -> usize {
    side_sizes(n, p).0
}

/// Minimum degree required by the sparse-set case, doubled:
/// `n`, `n+1` or `n−1` by parity of `n/(p+1)` and `p`.
fn doubled_degree_bound(n: usize, p: usize) -> usize {
    let q = n / (p + 1);
    match (q.is_multiple_of(2), p > 2) {
        (true, _) => n,
        (false, true) => n + 1,
        (false, false) => n - 1,
    }
}

/// Spanning p-caterpillar for a graph meeting the sparse-set degree bound in
/// which `s` (of size about `n/2`) spans few edges.
pub fn solve_sparse_set(g: &Graph, s: &VertexSet, p: usize) -> Result<Caterpillar, SolverError> {
    let n = g.n();
    if p == 0 || !n.is_multiple_of(p + 1) || n < 2 * (p + 1) {
        return Err(precondition("n must be a positive even multiple of p + 1 at least 2(p + 1)"));
    }
    if s.is_empty() || s.len() == n {
        return Err(precondition("sparse set must be a proper non-empty subset"));
    }
    let delta = g.min_degree().map_err(|e| precondition(e.to_string()))?;
    if 2 * delta < doubled_degree_bound(n, p) {
        return Err(precondition("minimum degree below the sparse-set bound"));
    }
    let cat = construct(g, s, p)?;
    if !is_spanning(g, &cat) {
        return Err(failed("sparse-set construction did not span"));
    }
    Ok(cat)
}

struct Sides {
    y1: VertexSet,
    y2: VertexSet,
    /// Vertices that must be pinned as spikes of partners across.
    deficient: VertexSet,
}

fn distribute(g: &Graph, s: &VertexSet, p: usize) -> Sides {
    let n = g.n();
    let sb = classify_sqrt_beta(p);
    let mut u1 = s.clone();
    // keep the sparse side at most n/2, dropping its best-connected vertices
    while u1.len() > n / 2 {
        let v = u1.iter().max_by_key(|&v| (g.degree_into(v, &u1), std::cmp::Reverse(v))).expect("non-empty");
        u1.remove(v);
    }
    let u2 = u1.complement();
    // regular vertices meet the bipartite extension hypothesis across
    let low = |side: &VertexSet, other: &VertexSet| {
        let bound = (1.0 - extension_xi(p)) * other.len() as f64;
        VertexSet::from_iter_in(n, side.iter().filter(|&u| (g.degree_into(u, other) as f64) < bound))
    };
    let (w1, w2) = (low(&u1, &u2), low(&u2, &u1));
    let w = w1.union(&w2);
    // rule (a): a vertex in X_i needs 10√β·n neighbors in U_{3-i}
    let rich = |v: usize, other: &VertexSet| g.degree_into(v, other) as f64 >= 10.0 * sb * n as f64;
    let (mut forced1, mut flexible, mut forced2) = (Vec::new(), Vec::new(), Vec::new());
    for v in w.iter() {
        match (rich(v, &u2), rich(v, &u1)) {
            (true, true) => flexible.push(v),
            (true, false) => forced1.push(v),
            (false, true) => forced2.push(v),
            // eligible nowhere: keep it where it has more neighbors across
            (false, false) if g.degree_into(v, &u2) >= g.degree_into(v, &u1) => forced1.push(v),
            (false, false) => forced2.push(v),
        }
    }
    let s_target = target_small(n, p) as i64;
    let base = (u1.len() - w1.len() + forced1.len()) as i64;
    let gap = |y1: i64| (y1.min(n as i64 - y1) - s_target).abs();
    let k = (0..=flexible.len() as i64).min_by_key(|&k| (gap(base + k), k)).expect("non-empty range") as usize;
    flexible.sort_by_key(|&v| (std::cmp::Reverse(g.degree_into(v, &u2)), v));
    let mut y1 = u1.difference(&w1);
    let mut y2 = u2.difference(&w2);
    for (i, &v) in flexible.iter().enumerate() {
        if i < k {
            y1.insert(v)
        } else {
            y2.insert(v)
        };
    }
    for &v in &forced1 {
        y1.insert(v);
    }
    for &v in &forced2 {
        y2.insert(v);
    }
    let mut deficient = w;
    // move regular vertices across while that still narrows the gap
    loop {
        let now = gap(y1.len() as i64);
        if now == 0 {
            break;
        }
        let small_is_1 = y1.len() <= y2.len();
        let grow_small = (y1.len().min(y2.len()) as i64) < s_target;
        let from_1 = small_is_1 != grow_small;
        let (src_u, dst_u) = if from_1 { (&u1, &u2) } else { (&u2, &u1) };
        let (src_y, _) = if from_1 { (&y1, &y2) } else { (&y2, &y1) };
        let cand =
            src_y.iter().filter(|&v| src_u.contains(v) && !deficient.contains(v) && rich(v, src_u)).max_by_key(|&v| {
                (g.degree_into(v, src_u), std::cmp::Reverse(g.degree_into(v, dst_u)), std::cmp::Reverse(v))
            });
        let Some(v) = cand else { break };
        let after = if from_1 { y1.len() as i64 - 1 } else { y1.len() as i64 + 1 };
        if gap(after) >= now {
            break;
        }
        if from_1 {
            y1.remove(v);
            y2.insert(v);
        } else {
            y2.remove(v);
            y1.insert(v);
        }
        deficient.insert(v);
    }
    if y1.len() > y2.len() {
        std::mem::swap(&mut y1, &mut y2);
    }
    Sides { y1, y2, deficient }
}

fn construct(g: &Graph, s: &VertexSet, p: usize) -> Result<Caterpillar, SolverError> {
    let n = g.n();
    let Sides { mut y1, mut y2, deficient } = distribute(g, s, p);
    let s_target = target_small(n, p);
    if y1.len() > s_target {
        return larger_branch(g, &y1, &y2, p);
    }
    let mut pins = Vec::new();
    if y1.len() < s_target {
        // move matched b_i into Y_1; each stays a spike of its partner a_i
        let need = s_target - y1.len();
        let m = maximum_matching_in(g, &y2.difference(&deficient));
        if m.len() < need {
            return Err(failed("matching inside the larger side is too small"));
        }
        for &(a, b) in &m[..need] {
            y2.remove(b);
            y1.insert(b);
            pins.push(Center { v: a, fixed: vec![b] });
        }
    }
    let mut taken = VertexSet::new(n);
    for c in &pins {
        taken.insert(c.v);
        taken.insert(c.fixed[0]);
    }
    for (side, across) in [(&y1, &y2), (&y2, &y1)] {
        let low: Vec<usize> = deficient.intersection(side).difference(&taken).iter().collect();
        if low.is_empty() {
            continue;
        }
        let partners = across.difference(&deficient).difference(&taken);
        let m = match_into(g, &low, &partners).ok_or_else(|| failed("no partners for low-degree vertices"))?;
        for (w, v) in m {
            taken.insert(w);
            taken.insert(v);
            pins.push(Center { v, fixed: vec![w] });
        }
    }
    pins.sort_by_key(|c| c.v);
    let head = pin_prefix(g, &y1, &pins, p)?;
    finish(g, head.as_ref(), &y1, &y2, p)
}

fn cross_graph(g: &Graph, y1: &VertexSet) -> Graph {
    g.without_edges(g.edges().filter(|&(a, b)| y1.contains(a) == y1.contains(b)).collect::<Vec<_>>())
}

/// Balanced head through `pins` using only edges across: its spine
/// alternates sides, starts in `Y_1` and ends in `Y_2`, and each spike lies
/// across from its spine vertex.
fn pin_prefix(g: &Graph, y1: &VertexSet, pins: &[Center], p: usize) -> Result<Option<Caterpillar>, SolverError> {
    if pins.is_empty() {
        return Ok(None);
    }
    let n = g.n();
    let gx = cross_graph(g, y1);
    let mut cat = skeleton(&gx, pins, &g.vertices(), p)?;
    let mut free = cat.vertex_set(n).complement();
    let pad = |cat: &mut Caterpillar, free: &mut VertexSet| -> Result<(), SolverError> {
        let end = cat.last();
        let hit = gx
            .neighbors(end)
            .intersection(free)
            .iter()
            .find_map(|c| {
                let mut pool = free.clone();
                pool.remove(c);
                pick_spikes(&gx, c, &pool, p, &any_edge).map(|sp| (c, sp))
            })
            .ok_or_else(|| failed("cannot pad the head"))?;
        free.remove(hit.0);
        for &l in &hit.1 {
            free.remove(l);
        }
        cat.spine_mut().push(hit.0);
        cat.spikes_mut().push(hit.1);
        Ok(())
    };
    if !y1.contains(cat.first()) {
        cat = cat.reversed();
        pad(&mut cat, &mut free)?;
        cat = cat.reversed();
    }
    if y1.contains(cat.last()) {
        pad(&mut cat, &mut free)?;
    }
    Ok(Some(cat))
}

/// Appends a bipartite spanning caterpillar of what `head` leaves of
/// `Y_1 ∪ Y_2`, starting next to the head's last spine vertex.
fn finish(
    g: &Graph,
    head: Option<&Caterpillar>,
    y1: &VertexSet,
    y2: &VertexSet,
    p: usize,
) -> Result<Caterpillar, SolverError> {
    let n = g.n();
    let covered = head.map_or_else(|| VertexSet::new(n), |h| h.vertex_set(n));
    let r1 = y1.difference(&covered);
    let r2 = y2.difference(&covered);
    let rest = r1.len() + r2.len();
    if rest == 0 {
        return head.cloned().ok_or_else(|| failed("nothing to span"));
    }
    if !rest.is_multiple_of(p + 1) {
        return Err(failed("head leaves a remainder not divisible by p + 1"));
    }
    let want = side_sizes(rest, p);
    let mut orientations = Vec::new();
    if (r1.len(), r2.len()) == want {
        orientations.push((&r1, &r2));
    }
    if (r2.len(), r1.len()) == want {
        orientations.push((&r2, &r1));
    }
    if orientations.is_empty() {
        return Err(failed("remaining sides do not fit the bipartite shape"));
    }
    for (a1, a2) in orientations {
        let mut starts: Vec<usize> = match head {
            Some(h) => g.neighbors(h.last()).intersection(a1).iter().collect(),
            None => a1.iter().collect(),
        };
        starts.sort_by_key(|&x| (std::cmp::Reverse(g.degree_into(x, a2)), x));
        for &x in starts.iter().take(START_CANDIDATES) {
            let Ok(tail) = bipartite_core(g, a1, a2, x, p) else { continue };
            let cat = match head {
                Some(h) => concat(p, &[h, &tail]),
                None => tail,
            };
            if is_valid(g, &cat) {
                return Ok(cat);
            }
        }
    }
    Err(failed("no bipartite completion from the head"))
}

/// `|Y_1| > s`: either one star at `y ∈ Y_2` taking `l` leaves inside `Y_2`,
/// or a walk through `l` matching edges of `G[Y_2]`, each `b_i` a spike of
/// `a_i`; `l = (n+p−1)/2 − |Y_1|`.
fn larger_branch(g: &Graph, y1: &VertexSet, y2: &VertexSet, p: usize) -> Result<Caterpillar, SolverError> {
    let n = g.n();
    let l = (n + p - 1) / 2 - y1.len();
    let star = y2.iter().find_map(|y| {
        let inner: Vec<usize> = g.neighbors(y).intersection(y2).iter().collect();
        if inner.len() < l + 1 {
            return None;
        }
        let outer: Vec<usize> = g.neighbors(y).intersection(y1).iter().take(p - l).collect();
        if outer.len() < p - l {
            return None;
        }
        // the first inner neighbor is kept for the bipartite start
        let mut leaves: Vec<usize> = outer.into_iter().chain(inner[1..=l].iter().copied()).collect();
        leaves.sort_unstable();
        Some(Caterpillar::from_parts_unchecked(p, vec![y], vec![leaves]))
    });
    if let Some(head) = star {
        return finish(g, Some(&head), y1, y2, p);
    }
    let head = matching_walk(g, y1, y2, p, l)?;
    finish(g, Some(&head), y1, y2, p)
}

/// Spine `x, y, y', z_1, a_1', a_1, c_2, z_2, a_2', a_2, …` with `x, y, z_i,
/// a_i ∈ Y_2` and the rest in `Y_1`; `a_i` carries `b_i` plus `p−1` spikes
/// from `Y_1`, every other spine vertex `p` spikes from the opposite side.
fn matching_walk(g: &Graph, y1: &VertexSet, y2: &VertexSet, p: usize, l: usize) -> Result<Caterpillar, SolverError> {
    let n = g.n();
    let m = maximum_matching_in(g, y2);
    if m.len() < l + 1 {
        return Err(failed("matching inside the larger side is too small"));
    }
    let (x, y) = m[0];
    let pairs = &m[1..=l];
    let mut used = VertexSet::from_iter_in(n, m[..=l].iter().flat_map(|&(a, b)| [a, b]));
    let mut spine = vec![x, y];
    let mut prev = y;
    for (i, &(a, _)) in pairs.iter().enumerate() {
        let pick = |set: VertexSet, used: &VertexSet| set.difference(used).first();
        let c = if i == 0 {
            None
        } else {
            let c = pick(g.neighbors(prev).intersection(y1), &used).ok_or_else(|| failed("walk step"))?;
            used.insert(c);
            Some(c)
        };
        let from = c.unwrap_or(prev);
        let entry = if i == 0 {
            let yp = pick(g.neighbors(y).intersection(y1), &used).ok_or_else(|| failed("walk step"))?;
            used.insert(yp);
            yp
        } else {
            from
        };
        let a_prime = g
            .neighbors(a)
            .intersection(y1)
            .difference(&used)
            .iter()
            .find(|&ap| !g.common_neighbors(entry, ap).intersection(y2).difference(&used).is_empty())
            .ok_or_else(|| failed("walk step"))?;
        used.insert(a_prime);
        let z = g.common_neighbors(entry, a_prime).intersection(y2).difference(&used).first().expect("checked above");
        used.insert(z);
        if i == 0 {
            spine.push(entry);
        } else {
            spine.push(c.expect("later steps add c"));
        }
        spine.extend([z, a_prime, a]);
        prev = a;
    }
    let b_of = |v: usize| pairs.iter().find(|&&(a, _)| a == v).map(|&(_, b)| b);
    let (in1, in2): (Vec<usize>, Vec<usize>) = spine.iter().partition(|&&v| y1.contains(v));
    let need2: Vec<usize> = in2.iter().map(|&v| if b_of(v).is_some() { p - 1 } else { p }).collect();
    let s2 = star_system(g, &in2, &need2, &y1.difference(&used)).ok_or_else(|| failed("walk spikes"))?;
    let mut used_all = used.clone();
    for &v in s2.iter().flatten() {
        used_all.insert(v);
    }
    let s1 =
        star_system(g, &in1, &vec![p; in1.len()], &y2.difference(&used_all)).ok_or_else(|| failed("walk spikes"))?;
    let (mut i1, mut i2) = (s1.into_iter(), s2.into_iter());
    let spikes = spine
        .iter()
        .map(|&v| {
            if y1.contains(v) {
                i1.next().expect("one star each")
            } else {
                let mut s = i2.next().expect("one star each");
                if let Some(b) = b_of(v) {
                    s.insert(0, b);
                }
                s
            }
        })
        .collect();
    let cat = Caterpillar::from_parts_unchecked(p, spine, spikes);
    if !is_valid(g, &cat) {
        return Err(failed("matching walk is not a caterpillar"));
    }
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::complete_bipartite;

    #[test]
    fn complete_bipartite_one_side() {
        let g = complete_bipartite(6, 6);
        let s = VertexSet::from_iter_in(12, 0..6);
        let c = solve_sparse_set(&g, &s, 1).unwrap();
        assert!(is_spanning(&g, &c));
    }

    #[test]
    fn matching_inside_one_side() {
        let g = complete_bipartite(8, 8).with_edges((0..4).map(|i| (8 + 2 * i, 9 + 2 * i))).unwrap();
        let s = VertexSet::from_iter_in(16, 0..8);
        let c = solve_sparse_set(&g, &s, 3).unwrap();
        assert!(is_spanning(&g, &c));
    }

    #[test]
    fn smaller_side_grows_by_matching() {
        // n = 12, p = 1: sides 5 and 7, every vertex of the 7 has an inner neighbor
        let g = complete_bipartite(5, 7).with_edges([(5, 6), (7, 8), (9, 10), (10, 11)]).unwrap();
        let s = VertexSet::from_iter_in(12, 0..5);
        let c = solve_sparse_set(&g, &s, 1).unwrap();
        assert!(is_spanning(&g, &c));
    }

    fn halves(n: usize) -> (VertexSet, VertexSet) {
        let y1 = VertexSet::from_iter_in(n, 0..n / 2);
        let y2 = y1.complement();
        (y1, y2)
    }

    #[test]
    fn larger_side_star_head() {
        // n = 20, p = 3: s = 9 < |Y_1| = 10, so l = 1 and vertex 10 hosts the star
        let g = complete_bipartite(10, 10).with_edges([(10, 11), (10, 12)]).unwrap();
        let (y1, y2) = halves(20);
        let c = larger_branch(&g, &y1, &y2, 3).unwrap();
        assert!(is_spanning(&g, &c));
        assert_eq!(c.first(), 10);
    }

    #[test]
    fn larger_side_matching_walk() {
        // n = 44, p = 3: inner degree 1 everywhere on Y_2, so the walk is used
        let g = complete_bipartite(22, 22).with_edges((0..11).map(|i| (22 + 2 * i, 23 + 2 * i))).unwrap();
        let (y1, y2) = halves(44);
        let c = larger_branch(&g, &y1, &y2, 3).unwrap();
        assert!(is_spanning(&g, &c));
        assert!(c.spine()[..2].iter().all(|&v| v >= 22));
    }

    #[test]
    fn degree_bound_checked() {
        let g = complete_bipartite(5, 7);
        let s = VertexSet::from_iter_in(12, 0..5);
        assert!(matches!(solve_sparse_set(&g, &s, 1), Err(SolverError::Precondition(_))));
    }
}
