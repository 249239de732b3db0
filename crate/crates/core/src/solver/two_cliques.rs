//! Spanning caterpillars when the graph is close to two disjoint cliques.
//!
//! Every vertex joins the half it sees more of, giving sides `Y_1` and
//! `Y_2`; vertices missing more than a `ξ = 1/(4p+6)` fraction of their
//! side are low (`X_i`), the rest regular (`U_i`). The smaller side `Y_1`
//! hands `|Y_1| mod (p+1)` vertices to stars centered across the cut, and
//! its low vertices are covered by a
//! short skeleton `P`. A dense spanning caterpillar `P'` finishes `Y_1` and
//! ends at `x`, which has a neighbor `y` across. On the `Y_2` side a skeleton
//! `P''` covers the cross stars and the remaining low vertices. A second
//! dense caterpillar `P'''` fills the rest between `y'` and `y'''`.
//! Final spine order: `rev(P) · P' · [y] · P''' · P''`.

use super::dense::dense_spanning_core;
use super::skeleton::{concat, cover_into, skeleton, Center};
use super::{failed, precondition, SolverError};
use crate::caterpillar::{is_spanning, Caterpillar};
use crate::graph::{Graph, VertexSet};

/// `ξ = 1/(4p+6)`, inside the dense extension range `ξ < 1/(4p+5)`.
pub(crate) fn extension_xi(p: usize) -> f64 {
    1.0 / (4 * p + 6) as f64
}

/// Spanning p-caterpillar for a graph with `δ ≥ (n−1)/2` that is nearly the
/// disjoint union of cliques on `v1` and `v2`.
pub fn solve_two_cliques(g: &Graph, v1: &VertexSet, v2: &VertexSet, p: usize) -> Result<Caterpillar, SolverError> {
    let n = g.n();
    if p == 0 || !n.is_multiple_of(p + 1) {
        return Err(precondition("n must be a positive multiple of p + 1"));
    }
    if !v1.is_disjoint(v2) || v1.len() + v2.len() != n {
        return Err(precondition("the two sides must partition the vertex set"));
    }
    let delta = g.min_degree().map_err(|e| precondition(e.to_string()))?;
    if 2 * delta + 1 < n {
        return Err(precondition("minimum degree below (n - 1)/2"));
    }
    let cat = construct(g, v1, v2, p)?;
    if !is_spanning(g, &cat) {
        return Err(failed("two-cliques construction did not span"));
    }
    Ok(cat)
}

/// Candidate choices tried per stage before giving up.
const TRIES: usize = 6;

fn construct(g: &Graph, v1: &VertexSet, v2: &VertexSet, p: usize) -> Result<Caterpillar, SolverError> {
    let n = g.n();
    // each vertex joins the half it sees more of; ties keep the given half
    let mut y1 = VertexSet::new(n);
    for v in 0..n {
        let (d1, d2) = (g.degree_into(v, v1), g.degree_into(v, v2));
        if d1 > d2 || (d1 == d2 && v1.contains(v)) {
            y1.insert(v);
        }
    }
    let mut y2 = y1.complement();
    if y1.len() > y2.len() {
        std::mem::swap(&mut y1, &mut y2);
    }
    // regular vertices meet the dense extension hypothesis inside their side
    let keep = 1.0 - extension_xi(p);
    let low = |side: &VertexSet| {
        let cutoff = keep * side.len().saturating_sub(1) as f64;
        VertexSet::from_iter_in(n, side.iter().filter(|&v| (g.degree_into(v, side) as f64) < cutoff))
    };
    let (x1, x2) = (low(&y1), low(&y2));
    let (u1, u2) = (y1.difference(&x1), y2.difference(&x2));

    // r_1 vertices of Y_1 (low ones first) become spikes of neighbors in Y_2
    let r1 = y1.len() % (p + 1);
    let mut stars: Vec<Center> = Vec::new();
    let mut us = VertexSet::new(n);
    for u in x1.iter().chain(u1.iter()) {
        if us.len() == r1 {
            break;
        }
        let nu = g.neighbors(u);
        if let Some(c) = stars.iter_mut().find(|c| c.fixed.len() < p && nu.contains(c.v)) {
            c.fixed.push(u);
        } else if let Some(w) = nu.intersection(&u2).first().or_else(|| nu.intersection(&x2).first()) {
            stars.push(Center { v: w, fixed: vec![u] });
        } else {
            continue;
        }
        us.insert(u);
    }
    if us.len() < r1 {
        return Err(failed("too few vertices with a neighbor across the cut"));
    }
    let ws = VertexSet::from_iter_in(n, stars.iter().map(|c| c.v));
    let sides = Sides { y2: &y2, u2: &u2, x2: &x2, ws: &ws };

    // P: low vertices of Y_1 as spikes of regular centers
    let low1: Vec<usize> = x1.difference(&us).iter().collect();
    let pool1 = u1.difference(&us);
    let p_cat = if low1.is_empty() {
        None
    } else {
        let centers = cover_into(g, &low1, &[], &pool1, p)
            .ok_or_else(|| failed("no matching for low vertices of the first side"))?;
        Some(skeleton(g, &centers, &pool1.difference(&leaves_of(n, &centers)), p)?)
    };
    let rev_p = p_cat.as_ref().map(|c| c.reversed());
    let mut region1 = y1.difference(&us);
    if let Some(c) = &p_cat {
        region1.difference_with(&c.vertex_set(n));
    }
    let assemble = |p1: Option<&Caterpillar>, y_star: Option<Caterpillar>, rest: Vec<Caterpillar>| {
        let parts: Vec<&Caterpillar> =
            [rev_p.as_ref(), p1, y_star.as_ref()].into_iter().flatten().chain(&rest).collect();
        concat(p, &parts)
    };

    // P' ends at x, which sees y across; each (start, x, y) choice is tried
    let across = |x: usize| {
        let nx = g.neighbors(x).difference(&ws);
        nx.intersection(&u2).iter().chain(nx.intersection(&x2).iter()).take(2).collect::<Vec<_>>()
    };
    let mut last_err = failed("no crossing edge from the first side");
    if region1.is_empty() {
        // Y_1 is all stars and skeleton: P ends at x = P.first()
        let ys: Vec<Option<usize>> = match &p_cat {
            Some(c) => across(c.first()).into_iter().map(Some).collect(),
            None => vec![None],
        };
        for y in ys {
            match finish(g, p, &sides, &stars, y) {
                Ok((y_star, rest)) => return Ok(assemble(None, y_star, rest)),
                Err(e) => last_err = e,
            }
        }
        return Err(last_err);
    }
    let starts: Vec<usize> = match &p_cat {
        Some(c) => g.neighbors(c.first()).intersection(&region1).iter().take(TRIES).collect(),
        None => region1.iter().take(TRIES).collect(),
    };
    if starts.is_empty() {
        return Err(failed("no start for the first dense caterpillar"));
    }
    let single = region1.len() == p + 1;
    for &b_prime in &starts {
        let ends: Vec<usize> = if single {
            vec![b_prime]
        } else {
            let (reg, lo): (Vec<usize>, Vec<usize>) =
                region1.iter().filter(|&v| v != b_prime).partition(|&v| u1.contains(v));
            reg.into_iter().chain(lo).filter(|&x| !across(x).is_empty()).take(TRIES).collect()
        };
        for x in ends {
            let p1 = match dense_spanning_core(g, &region1, b_prime, (!single).then_some(x), p) {
                Ok(c) if c.last() == x => c,
                Ok(_) => continue,
                Err(e) => {
                    last_err = e;
                    continue;
                }
            };
            for y in across(x) {
                match finish(g, p, &sides, &stars, Some(y)) {
                    Ok((y_star, rest)) => return Ok(assemble(Some(&p1), y_star, rest)),
                    Err(e) => last_err = e,
                }
            }
        }
    }
    Err(last_err)
}

fn leaves_of(n: usize, centers: &[Center]) -> VertexSet {
    VertexSet::from_iter_in(n, centers.iter().flat_map(|c| c.fixed.iter().copied()))
}

/// The larger side split into regular and low vertices, and the centers of
/// the cross stars.
struct Sides<'a> {
    y2: &'a VertexSet,
    u2: &'a VertexSet,
    x2: &'a VertexSet,
    ws: &'a VertexSet,
}

/// Everything on the `Y_2` side once the crossing vertex `y` is fixed: the
/// optional star at `y`, then `P'''` followed by `P''`. Without `y` the side
/// is covered on its own.
fn finish(
    g: &Graph,
    p: usize,
    s: &Sides<'_>,
    stars: &[Center],
    y: Option<usize>,
) -> Result<(Option<Caterpillar>, Vec<Caterpillar>), SolverError> {
    let n = g.n();
    let mut used2 = s.ws.clone();
    // y (with star Y_0 when y is low) and the entry point y'
    let (y_star, y_prime) = match y {
        Some(y) if s.x2.contains(y) => {
            used2.insert(y);
            let y_prime = g
                .neighbors(y)
                .intersection(s.u2)
                .difference(&used2)
                .first()
                .ok_or_else(|| failed("low crossing vertex has no regular neighbor"))?;
            used2.insert(y_prime);
            let free = g.neighbors(y).intersection(s.y2).difference(&used2);
            let mut leaves: Vec<usize> =
                free.intersection(s.x2).iter().chain(free.intersection(s.u2).iter()).take(p).collect();
            if leaves.len() < p {
                return Err(failed("low crossing vertex lacks spikes"));
            }
            leaves.sort_unstable();
            for &l in &leaves {
                used2.insert(l);
            }
            (Some(Caterpillar::from_parts_unchecked(p, vec![y], vec![leaves])), y_prime)
        }
        Some(y) => {
            used2.insert(y);
            (None, y)
        }
        None => {
            let y_prime = s.u2.difference(&used2).first().ok_or_else(|| failed("second side has no regular vertex"))?;
            used2.insert(y_prime);
            (None, y_prime)
        }
    };

    // P'': cross stars and the remaining low vertices of Y_2
    let low2: Vec<usize> = s.x2.difference(&used2).iter().collect();
    let partners = s.u2.difference(&used2);
    let centers = if low2.is_empty() {
        stars.to_vec()
    } else {
        cover_into(g, &low2, stars, &partners, p)
            .ok_or_else(|| failed("no matching for low vertices of the second side"))?
    };
    let p2 = if centers.is_empty() {
        None
    } else {
        Some(skeleton(g, &centers, &partners.difference(&leaves_of(n, &centers)), p)?)
    };

    // P''': dense caterpillar on everything left, from y' to y'''
    let mut region3 = s.y2.clone();
    if let Some(c) = &y_star {
        region3.difference_with(&c.vertex_set(n));
    }
    let p3 = match &p2 {
        Some(c) => {
            region3.difference_with(&c.vertex_set(n));
            let mut targets = g.neighbors(c.first()).intersection(&region3).intersection(s.u2);
            targets.remove(y_prime);
            let mut last_err = failed("skeleton start has no free neighbor");
            let mut found = None;
            for y3 in targets.iter().take(TRIES) {
                match dense_spanning_core(g, &region3, y_prime, Some(y3), p) {
                    Ok(c) => {
                        found = Some(c);
                        break;
                    }
                    Err(e) => last_err = e,
                }
            }
            found.ok_or(last_err)?
        }
        None => dense_spanning_core(g, &region3, y_prime, None, p)?,
    };
    Ok((y_star, [Some(p3), p2].into_iter().flatten().collect()))
}
