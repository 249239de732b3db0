//! The minimum-degree threshold, the bipartite feasibility criterion, and
//! the structural predicates used to route dense graphs.

mod extremal;

pub use extremal::{
    default_beta, is_beta_extremal, is_beta_extremal_with, ExtremalKind, ExtremalityVerdict, SearchMode,
    EXHAUSTIVE_LIMIT,
};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::par::{map_range, Execution};
use crate::rational::{int, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("p must be at least 1")]
    ZeroP,
    #[error("p + 1 = {} does not divide n = {n}", p + 1)]
    Divisibility { n: usize, p: usize },
    #[error("beta must satisfy 0 < beta < 1/2")]
    BetaOutOfRange,
    #[error("exhaustive mode supports at most {limit} vertices, graph has {n}")]
    TooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn check_divisible(n: usize, p: usize) -> Result<usize, AnalysisError> {
    if p == 0 {
        return Err(AnalysisError::ZeroP);
    }
    if n == 0 || !n.is_multiple_of(p + 1) {
        return Err(AnalysisError::Divisibility { n, p });
    }
    Ok(n / (p + 1))
}

/// Minimum degree guaranteeing a spanning p-caterpillar; a half-integer when
/// the spine length is odd.
pub fn degree_threshold(n: usize, p: usize) -> Result<Rational, AnalysisError> {
    let q = check_divisible(n, p)?;
    let n = n as i64;
    Ok(if q % 2 == 0 {
        Rational::new(n, 2)
    } else if p > 2 {
        Rational::new(n + 1, 2)
    } else {
        Rational::new(n - 1, 2)
    })
}

pub fn meets_threshold(g: &Graph, p: usize) -> Result<bool, AnalysisError> {
    let t = degree_threshold(g.n(), p)?;
    Ok(int(g.min_degree()?) >= t)
}

/// Feasibility of a spanning p-caterpillar in `K_{a,b}` and the side sizes
/// that would make it feasible, smaller side first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplitVerdict {
    pub feasible: bool,
    pub required: (usize, usize),
}

/// In `K_{a,b}` the spine alternates sides, so a side holding `k` spine
/// vertices has exactly `k + p(q - k)` vertices.
pub fn bipartite_spine_split(a: usize, b: usize, p: usize) -> Result<SplitVerdict, AnalysisError> {
    let n = a + b;
    let q = check_divisible(n, p)?;
    let required = if q % 2 == 0 { (n / 2, n / 2) } else { ((n + 1 - p) / 2, (n + p - 1) / 2) };
    let sides = (a.min(b), a.max(b));
    Ok(SplitVerdict { feasible: sides == required, required })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub ok: bool,
    /// Pair minimizing the neighborhood edge count, lexicographically first.
    pub worst: (usize, usize),
    pub worst_edges: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub bound: Rational,
}

/// Whether every pair `u, v` (including `u = v`) has at least `β²n²/32`
/// edges between `N(u)` and `N(v)`.
pub fn neighborhood_density_ok(g: &Graph, beta: Rational) -> DensityReport {
    neighborhood_density_ok_with(g, beta, Execution::default())
}

pub fn neighborhood_density_ok_with(g: &Graph, beta: Rational, exec: Execution) -> DensityReport {
    let n = g.n();
    let nn = int(n);
    let bound = beta * beta * nn * nn / 32;
    let rows = map_range(exec, n, |u| {
        (u..n).map(|v| (g.edges_between(g.neighbors(u), g.neighbors(v)), u, v)).min().expect("non-empty row")
    });
    let (worst_edges, u, v) = rows.into_iter().min().unwrap_or((0, 0, 0));
    DensityReport { ok: n == 0 || int(worst_edges) >= bound, worst: (u, v), worst_edges, bound }
}
