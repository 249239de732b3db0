//! Local moves on caterpillars: endpoint extension, interior insertion and
//! the spike-exchange insertion, plus greedy caterpillar growth.
//!
//! `free` always holds exactly the vertices a move may still consume; every
//! move keeps the caterpillar valid and removes what it uses from `free`.

use super::{failed, precondition, SolverError};
use crate::caterpillar::Caterpillar;
use crate::graph::{Graph, VertexSet};
use crate::matching::max_b_matching;
use crate::rational::{int, Rational};

/// Which edges a move may use.
pub(crate) type EdgeFilter<'a> = &'a (dyn Fn(usize, usize) -> bool + Sync);

pub(crate) fn any_edge(_: usize, _: usize) -> bool {
    true
}

pub(crate) fn pick_spikes(g: &Graph, x: usize, free: &VertexSet, p: usize, allow: EdgeFilter) -> Option<Vec<usize>> {
    let s: Vec<usize> = g.neighbors(x).intersection(free).iter().filter(|&s| s != x && allow(x, s)).take(p).collect();
    (s.len() == p).then_some(s)
}

fn take(free: &mut VertexSet, x: usize, spikes: &[usize]) {
    free.remove(x);
    for &s in spikes {
        free.remove(s);
    }
}

/// Extends the spine past its last vertex while possible; returns the
/// number of spine vertices added.
pub(crate) fn extend_end(g: &Graph, cat: &mut Caterpillar, free: &mut VertexSet, allow: EdgeFilter) -> usize {
    let p = cat.p();
    let mut added = 0;
    loop {
        let e = cat.last();
        let next = g
            .neighbors(e)
            .intersection(free)
            .iter()
            .filter(|&x| allow(e, x))
            .find_map(|x| pick_spikes(g, x, free, p, allow).map(|s| (x, s)));
        let Some((x, spikes)) = next else { return added };
        take(free, x, &spikes);
        cat.spine_mut().push(x);
        cat.spikes_mut().push(spikes);
        added += 1;
    }
}

/// Extends at both ends until neither end can grow.
pub(crate) fn extend_both(g: &Graph, cat: &mut Caterpillar, free: &mut VertexSet, allow: EdgeFilter) -> usize {
    let mut total = extend_end(g, cat, free, allow);
    *cat = cat.reversed();
    total += extend_end(g, cat, free, allow);
    *cat = cat.reversed();
    total
}

/// Largest caterpillar found by growing from up to `max_starts` start
/// vertices of `region` (highest region-degree first, ties by index).
pub(crate) fn greedy_caterpillar(
    g: &Graph,
    region: &VertexSet,
    p: usize,
    max_starts: usize,
    allow: EdgeFilter,
) -> Option<Caterpillar> {
    let mut starts: Vec<usize> = region.iter().collect();
    starts.sort_by_key(|&v| (std::cmp::Reverse(g.degree_into(v, region)), v));
    let mut best: Option<Caterpillar> = None;
    for s in starts.into_iter().take(max_starts.max(1)) {
        let Some(spikes) = pick_spikes(g, s, region, p, allow) else {
            continue;
        };
        let mut free = region.clone();
        take(&mut free, s, &spikes);
        let mut cat = Caterpillar::from_parts_unchecked(p, vec![s], vec![spikes]);
        extend_both(g, &mut cat, &mut free, allow);
        if best.as_ref().is_none_or(|b| cat.vertex_count() > b.vertex_count()) {
            best = Some(cat);
        }
    }
    best
}

/// Inserts a free common neighbor of two consecutive spine vertices, with
/// `p` fresh spikes. Endpoints are unchanged.
pub(crate) fn insert_interior(g: &Graph, cat: &mut Caterpillar, free: &mut VertexSet) -> bool {
    let p = cat.p();
    for i in 0..cat.q().saturating_sub(1) {
        let (a, b) = (cat.spine()[i], cat.spine()[i + 1]);
        let mut common = g.common_neighbors(a, b);
        common.intersect_with(free);
        let hit = common.iter().find_map(|v| pick_spikes(g, v, free, p, &any_edge).map(|s| (v, s)));
        if let Some((v, spikes)) = hit {
            take(free, v, &spikes);
            cat.spine_mut().insert(i + 1, v);
            cat.spikes_mut().insert(i + 1, spikes);
            return true;
        }
    }
    false
}

/// Spike-exchange insertion: a free vertex `v` adjacent to consecutive spine
/// vertices goes between them and takes over `p` spikes adjacent to it, each
/// donor spine vertex receiving a free replacement leaf. Covers `p + 1` new
/// vertices; endpoints are unchanged.
pub(crate) fn swap_insert(g: &Graph, cat: &mut Caterpillar, free: &mut VertexSet) -> bool {
    let p = cat.p();
    let q = cat.q();
    if q < 2 || free.len() < p + 1 {
        return false;
    }
    for v in free.iter().collect::<Vec<_>>() {
        let nv = g.neighbors(v);
        let Some(i) = (0..q - 1).find(|&i| nv.contains(cat.spine()[i]) && nv.contains(cat.spine()[i + 1])) else {
            continue;
        };
        // donor spine indices with the spikes they could hand over
        let donors: Vec<(usize, Vec<usize>)> = (0..q)
            .filter_map(|f| {
                let s: Vec<usize> = cat.spikes()[f].iter().copied().filter(|&c| nv.contains(c)).collect();
                (!s.is_empty()).then_some((f, s))
            })
            .collect();
        if donors.iter().map(|(_, s)| s.len()).sum::<usize>() < p {
            continue;
        }
        let leaves: Vec<usize> = free.iter().filter(|&y| y != v).collect();
        let adj: Vec<Vec<usize>> = leaves
            .iter()
            .map(|&y| (0..donors.len()).filter(|&d| g.has_edge(y, cat.spine()[donors[d].0])).collect())
            .collect();
        let cap: Vec<usize> = donors.iter().map(|(_, s)| s.len()).collect();
        let m = max_b_matching(&adj, &cap);
        if m.size < p {
            continue;
        }
        let mut used = vec![0usize; donors.len()];
        let mut moved = Vec::with_capacity(p);
        let mut spikes = cat.spikes().to_vec();
        for (li, c) in m.leaf_center.iter().enumerate() {
            let Some(d) = *c else { continue };
            if moved.len() == p {
                break;
            }
            let (f, ref s) = donors[d];
            let c_vertex = s[used[d]];
            used[d] += 1;
            let slot = spikes[f].iter().position(|&x| x == c_vertex).expect("donor spike");
            spikes[f][slot] = leaves[li];
            free.remove(leaves[li]);
            moved.push(c_vertex);
        }
        free.remove(v);
        let mut spine = cat.spine().to_vec();
        spine.insert(i + 1, v);
        spikes.insert(i + 1, moved);
        *cat = Caterpillar::from_parts_unchecked(p, spine, spikes);
        return true;
    }
    false
}

/// A caterpillar inside `G[w]` on at least `γ|w| − p` vertices, when `w`
/// spans at least `γ|w|²` edges. Vertices of degree at most `γ|w|` are peeled
/// off first; growth from the dense core then cannot stall early.
pub fn dense_caterpillar_in(g: &Graph, w: &VertexSet, gamma: Rational, p: usize) -> Result<Caterpillar, SolverError> {
    if p == 0 {
        return Err(precondition("p must be at least 1"));
    }
    let size = int(w.len());
    if w.is_empty() || int(g.internal_edges(w)) < gamma * size * size {
        return Err(precondition("vertex set is not dense enough"));
    }
    let cutoff = gamma * size;
    let mut core = w.clone();
    loop {
        let low = core.iter().find(|&v| int(g.degree_into(v, &core)) <= cutoff);
        match low {
            Some(v) => {
                core.remove(v);
            }
            None => break,
        }
    }
    let cat = greedy_caterpillar(g, &core, p, 4, &any_edge).ok_or_else(|| failed("dense core has no p-star"))?;
    if int(cat.vertex_count()) < cutoff - int(p) {
        return Err(failed("caterpillar in dense core is too short"));
    }
    Ok(cat)
}
