//! The reservoir: a small random vertex set that keeps a proportional share
//! of every neighborhood, so caterpillar ends can always be joined through it.

use num_rational::Ratio;
use rand::Rng;
use serde::Serialize;

use super::{precondition, SolverError};
use crate::caterpillar::{link, Caterpillar};
use crate::graph::{Graph, VertexSet};
use crate::matching::star_system;
use crate::par::{find_first_range, map_range, Execution};
use crate::rational::{int, to_f64, Rational};
use crate::rng::stream;

type Wide = Ratio<i128>;

fn wide(r: Rational) -> Wide {
    Wide::new(*r.numer() as i128, *r.denom() as i128)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reservoir {
    pub z: VertexSet,
    #[serde(with = "crate::rational::serde_str")]
    pub gamma: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub beta: Rational,
}

/// Outcome of recomputing the three reservoir conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReservoirReport {
    pub size_ok: bool,
    pub degree_ok: bool,
    pub pair_ok: bool,
    /// Smallest `|N(v) ∩ Z|`.
    pub min_degree_into: usize,
    /// Smallest edge count between `N(u) ∩ Z` and `N(v) ∩ Z` over `u ≠ v`.
    pub min_pair_edges: usize,
}

impl ReservoirReport {
    pub fn ok(&self) -> bool {
        self.size_ok && self.degree_ok && self.pair_ok
    }
}

impl Reservoir {
    /// Recomputes (i) `|Z| ∈ [(γ−γ²)n, (γ+γ²)n]`, (ii) `|N(v) ∩ Z| ≥
    /// (1/2 − 2β²)γn` for all `v`, and (iii) `‖N(u) ∩ Z, N(v) ∩ Z‖ ≥
    /// β⁶γ²n²/4` for all distinct `u, v`.
    pub fn check(&self, g: &Graph) -> ReservoirReport {
        check(g, &self.z, self.gamma, self.beta, Execution::default())
    }
}

fn check(g: &Graph, z: &VertexSet, gamma: Rational, beta: Rational, exec: Execution) -> ReservoirReport {
    let n = g.n();
    let nn = int(n);
    let size = int(z.len());
    let size_ok = (gamma - gamma * gamma) * nn <= size && size <= (gamma + gamma * gamma) * nn;
    let into: Vec<VertexSet> = (0..n).map(|v| g.neighbors(v).intersection(z)).collect();
    let min_degree_into = into.iter().map(VertexSet::len).min().unwrap_or(0);
    let degree_ok = int(min_degree_into) >= (Rational::new(1, 2) - beta * beta * 2) * gamma * nn;
    let rows =
        map_range(exec, n, |u| ((u + 1)..n).map(|v| g.edges_between(&into[u], &into[v])).min().unwrap_or(usize::MAX));
    let min_pair_edges = rows.into_iter().min().unwrap_or(usize::MAX);
    let (b, gm, nw) = (wide(beta), wide(gamma), Wide::from_integer(n as i128));
    let pair_bound = b.pow(6) * gm * gm * nw * nw / 4;
    let pair_ok = min_pair_edges == usize::MAX || Wide::from_integer(min_pair_edges as i128) >= pair_bound;
    ReservoirReport {
        size_ok,
        degree_ok,
        pair_ok,
        min_degree_into,
        min_pair_edges: if min_pair_edges == usize::MAX { 0 } else { min_pair_edges },
    }
}

/// Samples `Z` with each vertex kept independently with probability `γ`,
/// attempt `i` drawing from stream `i` of `seed`; the lowest verified
/// attempt wins. Enforces `0 < γ < β⁴` and `δ(G) ≥ (1/2 − β²)n`.
pub fn sample_reservoir(
    g: &Graph,
    gamma: Rational,
    beta: Rational,
    max_attempts: usize,
    seed: u64,
) -> Result<(Reservoir, usize), SolverError> {
    if gamma <= Rational::from_integer(0) || gamma >= beta.pow(4) {
        return Err(precondition("reservoir needs 0 < gamma < beta^4"));
    }
    let n = g.n();
    let min_deg = g.min_degree().map_err(|e| precondition(e.to_string()))?;
    if int(min_deg) < (Rational::new(1, 2) - beta * beta) * int(n) {
        return Err(precondition("minimum degree below (1/2 - beta^2) n"));
    }
    sample_reservoir_relaxed(g, gamma, beta, max_attempts, seed)
}

/// [`sample_reservoir`] without the parameter and degree hypotheses; the
/// three conditions are still verified on every accepted sample.
pub fn sample_reservoir_relaxed(
    g: &Graph,
    gamma: Rational,
    beta: Rational,
    max_attempts: usize,
    seed: u64,
) -> Result<(Reservoir, usize), SolverError> {
    if gamma <= Rational::from_integer(0) || gamma >= Rational::from_integer(1) {
        return Err(precondition("gamma must lie in (0, 1)"));
    }
    let prob = to_f64(&gamma);
    let n = g.n();
    let hit = find_first_range(Execution::default(), max_attempts, |attempt| {
        let mut rng = stream(seed, attempt as u64);
        let z = VertexSet::from_iter_in(n, (0..n).filter(|_| rng.random_bool(prob)));
        check(g, &z, gamma, beta, Execution::Sequential).ok().then_some((z, attempt))
    });
    let (z, attempt) = hit.ok_or(SolverError::AttemptsExhausted(max_attempts))?;
    Ok((Reservoir { z, gamma, beta }, attempt))
}

/// Joins `c1.last()` to `c2.first()` through two adjacent reservoir vertices
/// `x1 ∈ N(c1.last())`, `x2 ∈ N(c2.first())`, each with `p` spikes from the
/// reservoir. Returns the joined caterpillar and the `2(p + 1)` reservoir
/// vertices consumed; `used_z` lists reservoir vertices already spent.
pub fn glue(
    g: &Graph,
    c1: &Caterpillar,
    c2: &Caterpillar,
    reservoir: &Reservoir,
    used_z: &VertexSet,
) -> Result<(Caterpillar, Vec<usize>), SolverError> {
    let z = &reservoir.z;
    let p = c1.p();
    if c2.p() != p {
        return Err(precondition("caterpillars differ in p"));
    }
    if [c1.first(), c1.last(), c2.first(), c2.last()].iter().any(|&e| z.contains(e)) {
        return Err(precondition("caterpillar endpoints must lie outside the reservoir"));
    }
    let n = g.n();
    let s1 = c1.vertex_set(n);
    let s2 = c2.vertex_set(n);
    if !s1.is_disjoint(&s2) {
        return Err(precondition("caterpillars must be disjoint"));
    }
    let mut avail = z.difference(used_z);
    avail.difference_with(&s1);
    avail.difference_with(&s2);
    for x1 in g.neighbors(c1.last()).intersection(&avail).iter() {
        let mut second = g.neighbors(c2.first()).intersection(g.neighbors(x1));
        second.intersect_with(&avail);
        for x2 in second.iter() {
            let mut pool = avail.clone();
            pool.remove(x1);
            pool.remove(x2);
            if let Some(spikes) = star_system(g, &[x1, x2], &[p, p], &pool) {
                let joined = link(g, c1, &[x1, x2], &spikes, Some(c2))?;
                let mut consumed: Vec<usize> = [x1, x2].into_iter().chain(spikes.into_iter().flatten()).collect();
                consumed.sort_unstable();
                return Ok((joined, consumed));
            }
        }
    }
    Err(SolverError::NoBridge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caterpillar::validate;
    use crate::graph::generators::complete;

    #[test]
    fn reservoir_on_complete_graph() {
        let g = complete(200);
        let (r, _) = sample_reservoir(&g, Rational::new(1, 100), Rational::new(2, 5), 50, 1).unwrap();
        let report = r.check(&g);
        assert!(report.ok(), "{report:?}");
        let nn = int(200);
        let gamma = r.gamma;
        assert!((gamma - gamma * gamma) * nn <= int(r.z.len()));
        assert!(int(r.z.len()) <= (gamma + gamma * gamma) * nn);
    }

    #[test]
    fn parameter_hypothesis() {
        let g = complete(50);
        assert!(matches!(
            sample_reservoir(&g, Rational::new(1, 10), Rational::new(1, 2), 5, 0),
            Err(SolverError::Precondition(_))
        ));
    }

    #[test]
    fn glue_consumes_two_stars() {
        let g = complete(20);
        let z = VertexSet::from_slice(20, &[10, 11, 12, 13, 14, 15]);
        let r = Reservoir { z, gamma: Rational::new(1, 4), beta: Rational::new(1, 4) };
        let c1 = Caterpillar::new(1, vec![0, 1], vec![vec![2], vec![3]]).unwrap();
        let c2 = Caterpillar::new(1, vec![4, 5], vec![vec![6], vec![7]]).unwrap();
        let (c, used) = glue(&g, &c1, &c2, &r, &VertexSet::new(20)).unwrap();
        assert_eq!(used.len(), 4);
        assert!(used.iter().all(|&v| r.z.contains(v)));
        assert_eq!((c.first(), c.last()), (0, 5));
        assert!(validate(&g, &c).is_ok());

        let spent = VertexSet::from_slice(20, &[10, 11, 12]);
        assert_eq!(glue(&g, &c1, &c2, &r, &spent), Err(SolverError::NoBridge));
    }
}
