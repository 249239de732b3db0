use serde::Serialize;
use thiserror::Error;

use super::Caterpillar;
use crate::graph::Graph;
use crate::matching::max_b_matching;

/// Where a set `T = {x, y_1, …, y_p}` can be swallowed: `x` goes between the
/// consecutive spine vertices `x1, x2` and takes over the spikes `u_i`, while
/// each `y_i` replaces `u_i` under spine vertex `v_i`. `pairs` holds `(v_i, u_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbsorptionSite {
    pub x1: usize,
    pub x2: usize,
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbsorbError {
    #[error("target has {found} vertices, expected {expected}")]
    WrongSize { expected: usize, found: usize },
    #[error("target vertex {0} already lies on the caterpillar")]
    Intersects(usize),
    #[error("site does not match the caterpillar: {0}")]
    StaleSite(String),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("no vertex of the target fits the site")]
    NoAssignment,
}

/// Finds a role assignment for `t` at `site` using only graph adjacency:
/// returns `x` and the `y`s ordered like `site.pairs`.
pub fn find_absorption(g: &Graph, site: &AbsorptionSite, t: &[usize]) -> Option<(usize, Vec<usize>)> {
    let p = site.pairs.len();
    if t.len() != p + 1 {
        return None;
    }
    let mut sorted = t.to_vec();
    sorted.sort_unstable();
    for (k, &x) in sorted.iter().enumerate() {
        let fits =
            g.has_edge(x, site.x1) && g.has_edge(x, site.x2) && site.pairs.iter().all(|&(_, u)| g.has_edge(x, u));
        if !fits {
            continue;
        }
        let ys: Vec<usize> = sorted.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &y)| y).collect();
        let adj: Vec<Vec<usize>> =
            ys.iter().map(|&y| (0..p).filter(|&i| g.has_edge(y, site.pairs[i].0)).collect()).collect();
        let m = max_b_matching(&adj, &vec![1; p]);
        if m.size == p {
            let mut ordered = vec![0; p];
            for (yi, c) in m.leaf_center.iter().enumerate() {
                ordered[c.expect("perfect matching")] = ys[yi];
            }
            return Some((x, ordered));
        }
    }
    None
}

/// Inserts `T` at `site`, choosing the roles inside `T` automatically.
pub fn absorb_insert(
    g: &Graph,
    c: &Caterpillar,
    site: &AbsorptionSite,
    t: &[usize],
) -> Result<Caterpillar, AbsorbError> {
    if t.len() != c.p() + 1 {
        return Err(AbsorbError::WrongSize { expected: c.p() + 1, found: t.len() });
    }
    let on_cat = c.vertex_set(g.n());
    if let Some(&v) = t.iter().find(|&&v| on_cat.contains(v)) {
        return Err(AbsorbError::Intersects(v));
    }
    let (x, ys) = find_absorption(g, site, t).ok_or(AbsorbError::NoAssignment)?;
    absorb_insert_with(g, c, site, x, &ys)
}

/// Inserts `x` between `site.x1` and `site.x2` with spikes `u_1..u_p`, and
/// puts `ys[i]` in place of `u_i` under `v_i`. Endpoints are unchanged.
pub fn absorb_insert_with(
    g: &Graph,
    c: &Caterpillar,
    site: &AbsorptionSite,
    x: usize,
    ys: &[usize],
) -> Result<Caterpillar, AbsorbError> {
    let p = c.p();
    if site.pairs.len() != p || ys.len() != p {
        return Err(AbsorbError::WrongSize { expected: p + 1, found: ys.len() + 1 });
    }
    let on_cat = c.vertex_set(g.n());
    for &v in std::iter::once(&x).chain(ys) {
        if v >= g.n() || on_cat.contains(v) {
            return Err(AbsorbError::Intersects(v));
        }
    }
    let i1 = c.position(site.x1).ok_or_else(|| AbsorbError::StaleSite(format!("{} not on spine", site.x1)))?;
    let i2 = c.position(site.x2).ok_or_else(|| AbsorbError::StaleSite(format!("{} not on spine", site.x2)))?;
    if i1.abs_diff(i2) != 1 {
        return Err(AbsorbError::StaleSite(format!("{} and {} are not consecutive", site.x1, site.x2)));
    }
    for &(a, b) in &[(x, site.x1), (x, site.x2)] {
        if !g.has_edge(a, b) {
            return Err(AbsorbError::NotAdjacent(a, b));
        }
    }
    let mut spikes = c.spikes().to_vec();
    for (&(v, u), &y) in site.pairs.iter().zip(ys) {
        let iv = c.position(v).ok_or_else(|| AbsorbError::StaleSite(format!("{v} not on spine")))?;
        let slot = spikes[iv]
            .iter()
            .position(|&s| s == u)
            .ok_or_else(|| AbsorbError::StaleSite(format!("{u} is not a spike of {v}")))?;
        if !g.has_edge(x, u) {
            return Err(AbsorbError::NotAdjacent(x, u));
        }
        if !g.has_edge(y, v) {
            return Err(AbsorbError::NotAdjacent(y, v));
        }
        spikes[iv][slot] = y;
    }
    let at = i1.max(i2);
    let mut spine = c.spine().to_vec();
    spine.insert(at, x);
    spikes.insert(at, site.pairs.iter().map(|&(_, u)| u).collect());
    Ok(Caterpillar::from_parts_unchecked(p, spine, spikes))
}
