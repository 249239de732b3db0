//! Short caterpillars threaded through prescribed spine vertices, used to
//! cover the few low-degree vertices before a dense spanning step.

use std::collections::VecDeque;

use super::{failed, SolverError};
use crate::caterpillar::{is_valid, Caterpillar};
use crate::graph::{Graph, VertexSet};
use crate::matching::{max_b_matching, star_system};

/// A prescribed spine vertex and spikes it must carry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Center {
    pub v: usize,
    pub fixed: Vec<usize>,
}

/// Shortest path from `a` to `b` whose interior lies in `avail`.
pub(crate) fn path_through(g: &Graph, a: usize, b: usize, avail: &VertexSet) -> Option<Vec<usize>> {
    if g.has_edge(a, b) {
        return Some(vec![a, b]);
    }
    let mut prev = vec![usize::MAX; g.n()];
    prev[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u).iter() {
            if w == b {
                let mut path = vec![b, u];
                let mut cur = u;
                while cur != a {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            if prev[w] == usize::MAX && avail.contains(w) {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Caterpillar whose spine visits `centers` in order, consecutive centers
/// joined by shortest paths through `region`. Each center keeps its fixed
/// spikes; every spine vertex is topped up to `p` spikes from `region`.
pub(crate) fn skeleton(
    g: &Graph,
    centers: &[Center],
    region: &VertexSet,
    p: usize,
) -> Result<Caterpillar, SolverError> {
    let n = g.n();
    let mut used = VertexSet::new(n);
    for c in centers {
        used.insert(c.v);
        for &f in &c.fixed {
            used.insert(f);
        }
    }
    let Some(first) = centers.first() else {
        return Err(failed("skeleton needs at least one center"));
    };
    let mut spine = vec![first.v];
    let mut fixed = vec![first.fixed.clone()];
    for c in &centers[1..] {
        let avail = region.difference(&used);
        let path = path_through(g, *spine.last().expect("non-empty"), c.v, &avail)
            .ok_or_else(|| failed(format!("no path to skeleton center {}", c.v)))?;
        for &w in &path[1..path.len() - 1] {
            used.insert(w);
            spine.push(w);
            fixed.push(Vec::new());
        }
        spine.push(c.v);
        fixed.push(c.fixed.clone());
    }
    let needs: Vec<usize> = fixed.iter().map(|f| p.saturating_sub(f.len())).collect();
    let extra = star_system(g, &spine, &needs, &region.difference(&used))
        .ok_or_else(|| failed("no spikes for the skeleton"))?;
    let spikes = fixed
        .into_iter()
        .zip(extra)
        .map(|(mut f, e)| {
            f.extend(e);
            f
        })
        .collect();
    let cat = Caterpillar::from_parts_unchecked(p, spine, spikes);
    if !is_valid(g, &cat) {
        return Err(failed("skeleton is not a caterpillar"));
    }
    Ok(cat)
}

/// Matches each of `low` to a distinct partner in `partners`; `None` when
/// some vertex stays unmatched.
pub(crate) fn match_into(g: &Graph, low: &[usize], partners: &VertexSet) -> Option<Vec<(usize, usize)>> {
    let cand: Vec<usize> = partners.iter().collect();
    let adj: Vec<Vec<usize>> =
        low.iter().map(|&x| (0..cand.len()).filter(|&j| g.has_edge(x, cand[j])).collect()).collect();
    let m = max_b_matching(&adj, &vec![1; cand.len()]);
    (m.size == low.len())
        .then(|| low.iter().zip(&m.leaf_center).map(|(&x, c)| (x, cand[c.expect("perfect")])).collect())
}

/// Hands each of `low` to an adjacent center as a spike: the `preset`
/// centers first (up to `p` spikes in total each), then fresh centers from
/// `partners`. Returns the preset centers followed by every fresh center
/// that received a spike; `None` when some vertex stays uncovered.
pub(crate) fn cover_into(
    g: &Graph,
    low: &[usize],
    preset: &[Center],
    partners: &VertexSet,
    p: usize,
) -> Option<Vec<Center>> {
    let mut cand: Vec<usize> = preset.iter().map(|c| c.v).collect();
    let mut capacity: Vec<usize> = preset.iter().map(|c| p.saturating_sub(c.fixed.len())).collect();
    for v in partners.iter() {
        if !cand.contains(&v) {
            cand.push(v);
            capacity.push(p);
        }
    }
    let adj: Vec<Vec<usize>> =
        low.iter().map(|&x| (0..cand.len()).filter(|&j| g.has_edge(x, cand[j])).collect()).collect();
    let m = max_b_matching(&adj, &capacity);
    if m.size < low.len() {
        return None;
    }
    let groups = m.groups(cand.len());
    let mut out: Vec<Center> = preset.to_vec();
    for (j, leaves) in groups.into_iter().enumerate() {
        let leaves: Vec<usize> = leaves.into_iter().map(|l| low[l]).collect();
        if j < preset.len() {
            out[j].fixed.extend(leaves);
        } else if !leaves.is_empty() {
            out.push(Center { v: cand[j], fixed: leaves });
        }
    }
    Some(out)
}

/// Concatenates spines and spikes without checks; the caller validates.
pub(crate) fn concat(p: usize, parts: &[&Caterpillar]) -> Caterpillar {
    let mut spine = Vec::new();
    let mut spikes = Vec::new();
    for c in parts {
        spine.extend_from_slice(c.spine());
        spikes.extend_from_slice(c.spikes());
    }
    Caterpillar::from_parts_unchecked(p, spine, spikes)
}
