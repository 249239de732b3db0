//! Absorbing sets and the absorbing caterpillar built from them.

use serde::Serialize;

use super::connect::connect3;
use super::reservoir::Reservoir;
use super::{failed, precondition, SolverError};
use crate::caterpillar::{absorb_insert, find_absorption, is_valid, link, AbsorptionSite, Caterpillar};
use crate::graph::{Graph, VertexSet};
use crate::matching::{max_b_matching, star_system};
use crate::rational::{floor_usize, int, Rational};

/// Vertex count of one absorbing set.
pub fn absorbing_set_order(p: usize) -> usize {
    (3 * p + 2) * (p + 1)
}

/// A caterpillar on `(3p+2)(p+1)` vertices that can swallow `target` at `site`
/// without moving its endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbsorbingSet {
    pub caterpillar: Caterpillar,
    pub site: AbsorptionSite,
    pub target: Vec<usize>,
    /// The target vertex that goes onto the spine.
    pub x: usize,
}

/// Builds an absorbing set for `t` avoiding `forbidden`.
///
/// `x ∈ t` maximizes the minimum of `‖N(x), N(y)‖` over the other `y ∈ t`.
/// Then `v_i ∈ N(y_i)`, `u_i ∈ N(v_i) ∩ N(x)` and an edge `x1x2` in `N(x)` are
/// picked in ascending order, and the spine
/// `v_1 ·· x1 x2 ·· v_2 ·· v_3 … v_p` is completed with length-three
/// connectors. Each `u_i` is a spike of `v_i`; `x` would later sit between
/// `x1` and `x2` and take the `u_i` while `y_i` replaces `u_i`.
pub fn build_absorbing_set(g: &Graph, t: &[usize], forbidden: &VertexSet) -> Result<AbsorbingSet, SolverError> {
    if t.len() < 2 {
        return Err(precondition("target must have p + 1 ≥ 2 vertices"));
    }
    let p = t.len() - 1;
    let n = g.n();
    let mut sorted = t.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != t.len() || sorted.iter().any(|&v| v >= n) {
        return Err(precondition("target vertices must be distinct and in range"));
    }
    if sorted.iter().any(|&v| forbidden.contains(v)) {
        return Err(failed("target meets the forbidden set"));
    }
    let score = |x: usize| {
        sorted.iter().filter(|&&y| y != x).map(|&y| g.edges_between(g.neighbors(x), g.neighbors(y))).min().unwrap_or(0)
    };
    let x = *sorted.iter().max_by_key(|&&x| (score(x), std::cmp::Reverse(x))).expect("non-empty");
    let ys: Vec<usize> = sorted.iter().copied().filter(|&y| y != x).collect();

    let mut used = forbidden.clone();
    for &v in &sorted {
        used.insert(v);
    }
    let nx = g.neighbors(x);
    let mut pairs = Vec::with_capacity(p);
    for &y in &ys {
        let hit = g.neighbors(y).difference(&used).iter().find_map(|v| {
            let mut cand = g.neighbors(v).intersection(nx);
            cand.difference_with(&used);
            cand.remove(v);
            cand.first().map(|u| (v, u))
        });
        let (v, u) = hit.ok_or_else(|| failed(format!("no spine partner for target vertex {y}")))?;
        used.insert(v);
        used.insert(u);
        pairs.push((v, u));
    }
    let free_nx = nx.difference(&used);
    let (x1, x2) = free_nx
        .iter()
        .find_map(|a| g.neighbors(a).intersection(&free_nx).iter().find(|&b| b > a).map(|b| (a, b)))
        .ok_or_else(|| failed("no edge inside N(x)"))?;
    used.insert(x1);
    used.insert(x2);

    let connect = |a: usize, b: usize, used: &mut VertexSet| -> Result<[usize; 2], SolverError> {
        let mut forb = used.clone();
        forb.remove(a);
        forb.remove(b);
        let c = connect3(g, a, b, p, &forb)?;
        let inner = [c.spine()[1], c.spine()[2]];
        used.insert(inner[0]);
        used.insert(inner[1]);
        Ok(inner)
    };
    let v = |i: usize| pairs[i].0;
    let q1 = connect(v(0), x1, &mut used)?;
    let mut spine = vec![v(0), q1[0], q1[1], x1, x2];
    if p >= 2 {
        let q2 = connect(x2, v(1), &mut used)?;
        spine.extend([q2[0], q2[1], v(1)]);
        for i in 1..p - 1 {
            let c = connect(v(i), v(i + 1), &mut used)?;
            spine.extend([c[0], c[1], v(i + 1)]);
        }
    }
    let needs: Vec<usize> = spine.iter().map(|s| if pairs.iter().any(|&(v, _)| v == *s) { p - 1 } else { p }).collect();
    let pool = used.complement();
    let mut spikes = star_system(g, &spine, &needs, &pool).ok_or_else(|| failed("spikes for the absorbing set"))?;
    for (s, list) in spine.iter().zip(spikes.iter_mut()) {
        if let Some(&(_, u)) = pairs.iter().find(|&&(v, _)| v == *s) {
            list.insert(0, u);
        }
    }
    let caterpillar = Caterpillar::from_parts_unchecked(p, spine, spikes);
    let site = AbsorptionSite { x1, x2, pairs };
    debug_assert_eq!(caterpillar.vertex_count(), absorbing_set_order(p));
    if !is_valid(g, &caterpillar) {
        return Err(failed("absorbing set is not a caterpillar"));
    }
    let swallowed = absorb_insert(g, &caterpillar, &site, t).map_err(|e| failed(e.to_string()))?;
    if !is_valid(g, &swallowed) {
        return Err(failed("absorption check failed"));
    }
    Ok(AbsorbingSet { caterpillar, site, target: sorted, x })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    pub set: AbsorbingSet,
    /// Indices of coverage targets this member was verified to absorb.
    pub absorbs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Absorber {
    pub p: usize,
    pub p_abs: Option<Caterpillar>,
    pub family: Vec<FamilyMember>,
    pub coverage: Vec<Vec<usize>>,
    /// Largest union of coverage targets guaranteed absorbable.
    pub capacity: usize,
}

impl Absorber {
    pub fn vertex_set(&self, n: usize) -> VertexSet {
        self.p_abs.as_ref().map_or_else(|| VertexSet::new(n), |c| c.vertex_set(n))
    }

    /// Absorbs each of `targets` (disjoint `(p+1)`-sets off the host) into
    /// `host`, which must contain `p_abs` as a contiguous piece. Targets are
    /// matched to distinct family members first.
    pub fn absorb_into(
        &self,
        g: &Graph,
        host: &Caterpillar,
        targets: &[Vec<usize>],
    ) -> Result<Caterpillar, SolverError> {
        let overflow = || SolverError::AbsorptionOverflow {
            leftover: targets.iter().map(Vec::len).sum(),
            capacity: self.capacity,
        };
        let adj: Vec<Vec<usize>> = targets
            .iter()
            .map(|t| {
                (0..self.family.len()).filter(|&m| find_absorption(g, &self.family[m].set.site, t).is_some()).collect()
            })
            .collect();
        let m = max_b_matching(&adj, &vec![1; self.family.len()]);
        if m.size < targets.len() {
            return Err(overflow());
        }
        let mut cat = host.clone();
        for (t, member) in targets.iter().zip(&m.leaf_center) {
            let site = &self.family[member.expect("perfect matching")].set.site;
            cat = absorb_insert(g, &cat, site, t).map_err(|_| overflow())?;
        }
        if !is_valid(g, &cat) {
            return Err(failed("absorbed caterpillar is invalid"));
        }
        Ok(cat)
    }

    /// [`Absorber::absorb_into`] with `p_abs` itself as host.
    pub fn absorb(&self, g: &Graph, targets: &[Vec<usize>]) -> Result<Caterpillar, SolverError> {
        let host = self
            .p_abs
            .as_ref()
            .ok_or(SolverError::AbsorptionOverflow { leftover: targets.iter().map(Vec::len).sum(), capacity: 0 })?;
        self.absorb_into(g, host, targets)
    }
}

/// Joins `c1.last()` to `c2.first()` by two new spine vertices with `p`
/// spikes each, all outside `used`.
pub(crate) fn bridge(g: &Graph, c1: &Caterpillar, c2: &Caterpillar, used: &VertexSet) -> Option<Caterpillar> {
    let p = c1.p();
    let avail = used.complement();
    for a in g.neighbors(c1.last()).intersection(&avail).iter() {
        let mut second = g.neighbors(a).intersection(g.neighbors(c2.first()));
        second.intersect_with(&avail);
        for b in second.iter() {
            let mut pool = avail.clone();
            pool.remove(a);
            pool.remove(b);
            if let Some(spikes) = star_system(g, &[a, b], &[p, p], &pool) {
                return link(g, c1, &[a, b], &spikes, Some(c2)).ok();
            }
        }
    }
    None
}

/// [`bridge`] trying all four orientations of `c` and `m`.
fn bridge_either_way(g: &Graph, c: &Caterpillar, m: &Caterpillar, avoid: &VertexSet) -> Option<Caterpillar> {
    let (rev_c, rev_m) = (c.reversed(), m.reversed());
    for (a, b) in [(c, m), (c, &rev_m), (&rev_c, m), (&rev_c, &rev_m)] {
        if let Some(joined) = bridge(g, a, b, avoid) {
            return Some(joined);
        }
    }
    None
}

/// Builds one absorbing set per coverage target (in order, pairwise
/// disjoint, avoiding the reservoir and all coverage vertices) and chains
/// them with two-vertex bridges, stopping before `|V(p_abs)|` would exceed
/// `δn`. Every member is verified against every coverage target.
pub fn build_absorber(
    g: &Graph,
    p: usize,
    delta: Rational,
    reservoir: &Reservoir,
    coverage: &[Vec<usize>],
) -> Result<Absorber, SolverError> {
    if p == 0 {
        return Err(precondition("p must be at least 1"));
    }
    let n = g.n();
    let mut reserved = reservoir.z.clone();
    for t in coverage {
        if t.len() != p + 1 {
            return Err(precondition("coverage targets must have p + 1 vertices"));
        }
        for &v in t {
            if v >= n || !reserved.insert(v) {
                return Err(precondition("coverage targets must be disjoint and avoid the reservoir"));
            }
        }
    }
    let budget = floor_usize(&(delta * int(n)));
    let q = absorbing_set_order(p);
    let mut used = reserved.clone();
    let mut chain: Option<Caterpillar> = None;
    let mut family: Vec<FamilyMember> = Vec::new();
    for t in coverage {
        let grown = chain.as_ref().map_or(q, |c| c.vertex_count() + 2 * (p + 1) + q);
        if grown > budget {
            break;
        }
        let mut forb = used.clone();
        for &v in t {
            forb.remove(v);
        }
        let Ok(set) = build_absorbing_set(g, t, &forb) else { continue };
        let member_vs = set.caterpillar.vertex_set(n);
        let mut with_member = used.union(&member_vs);
        let joined = match &chain {
            None => Some(set.caterpillar.clone()),
            Some(c) => bridge_either_way(g, c, &set.caterpillar, &with_member),
        };
        let Some(joined) = joined else { continue };
        with_member.union_with(&joined.vertex_set(n));
        used = with_member;
        chain = Some(joined);
        family.push(FamilyMember { set, absorbs: Vec::new() });
    }
    if !coverage.is_empty() && family.is_empty() {
        return Err(SolverError::InsufficientFamily);
    }
    if let Some(host) = &chain {
        for member in &mut family {
            member.absorbs = coverage
                .iter()
                .enumerate()
                .filter(|(_, t)| absorb_insert(g, host, &member.set.site, t).is_ok_and(|c| is_valid(g, &c)))
                .map(|(i, _)| i)
                .collect();
        }
    }
    let adj: Vec<Vec<usize>> =
        (0..coverage.len()).map(|i| (0..family.len()).filter(|&m| family[m].absorbs.contains(&i)).collect()).collect();
    let matched = max_b_matching(&adj, &vec![1; family.len()]).size;
    Ok(Absorber { p, p_abs: chain, family, coverage: coverage.to_vec(), capacity: matched * (p + 1) })
}
