//! Top-level solver: divisibility, degree threshold, extremality routing,
//! the constructive routes, and the exact oracle as a fallback. A `Found`
//! outcome always carries a validated spanning certificate.

use serde::Serialize;

use super::absorber::{absorbing_set_order, build_absorber};
use super::extend::{extend_loop, ExtendParams};
use super::reservoir::{sample_reservoir, sample_reservoir_relaxed, Reservoir};
use super::trace::{Trace, TraceEvent};
use super::{precondition, solve_sparse_set, solve_two_cliques, SolverError};
use crate::analysis::{default_beta, degree_threshold, is_beta_extremal, ExtremalKind, SearchMode};
use crate::caterpillar::{is_spanning, validate, Caterpillar};
use crate::graph::{Graph, VertexSet};
use crate::oracle::{exact_solve_with, OracleConfig, OutcomeKind, SolveOutcome};
use crate::rational::{floor_usize, format_rational, int, Rational};

/// Largest graph whose extremality is decided exactly.
const EXHAUSTIVE_EXTREMALITY: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// Extremality parameter; `None` picks [`default_beta`].
    pub beta: Option<Rational>,
    pub delta: Rational,
    pub gamma: Rational,
    /// `β` used by the reservoir checks; defaults to the extremality `β`.
    pub reservoir_beta: Option<Rational>,
    /// Block size `C`; `None` means `max(4(p+1), n/25)`.
    pub block_size: Option<usize>,
    /// Enforce the asymptotic parameter chain and the reservoir hypotheses.
    pub strict: bool,
    /// Continue on the constructive routes when the degree threshold fails.
    pub warn_only: bool,
    pub seed: u64,
    /// Run the exact oracle when every constructive route fails.
    pub fallback: bool,
    pub fallback_budget: u64,
    /// Reservoir resampling budget.
    pub max_attempts: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            beta: None,
            delta: Rational::new(1, 10),
            gamma: Rational::new(1, 50),
            reservoir_beta: None,
            block_size: None,
            strict: false,
            warn_only: false,
            seed: 0,
            fallback: true,
            fallback_budget: OracleConfig::default().budget,
            max_attempts: 50,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Divisibility,
    TwoCliques,
    SparseSet,
    NonExtremal,
    Oracle,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Divisibility => "divisibility",
            Route::TwoCliques => "two_cliques",
            Route::SparseSet => "sparse_set",
            Route::NonExtremal => "non_extremal",
            Route::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    #[serde(flatten)]
    pub outcome: SolveOutcome,
    /// Route that produced the outcome.
    pub route: Route,
    /// Whether a constructive route failed before the oracle answered.
    pub fallback: bool,
}

impl SolveReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Solves without tracing.
pub fn solve(g: &Graph, p: usize, cfg: &SolverConfig) -> SolveReport {
    solve_traced(g, p, cfg, &mut Trace::disabled())
}

pub fn solve_traced(g: &Graph, p: usize, cfg: &SolverConfig, trace: &mut Trace) -> SolveReport {
    let report = run(g, p, cfg, trace);
    let outcome = match report.outcome.kind {
        OutcomeKind::Found => "found",
        OutcomeKind::ProvedAbsent => "proved_absent",
        OutcomeKind::Exhausted => "exhausted",
    };
    trace.push(TraceEvent::Finished { outcome: outcome.to_string() });
    report
}

fn run(g: &Graph, p: usize, cfg: &SolverConfig, trace: &mut Trace) -> SolveReport {
    let n = g.n();
    let divisible = p > 0 && n > 0 && n.is_multiple_of(p + 1);
    trace.push(TraceEvent::Divisibility { n, p, ok: divisible });
    if !divisible {
        let outcome = if p == 0 { SolveOutcome::exhausted(0) } else { SolveOutcome::absent(0) };
        return SolveReport { outcome, route: Route::Divisibility, fallback: false };
    }
    let threshold = degree_threshold(n, p).expect("divisibility checked");
    let min_degree = g.min_degree().expect("non-empty graph");
    let met = int(min_degree) >= threshold;
    trace.push(TraceEvent::Threshold { min_degree, threshold: format_rational(&threshold), met });
    if !met && !cfg.warn_only {
        return oracle(g, p, cfg, trace, false);
    }

    let beta = cfg.beta.unwrap_or_else(|| default_beta(n));
    let mode = if n <= EXHAUSTIVE_EXTREMALITY { SearchMode::Exhaustive } else { SearchMode::local(cfg.seed) };
    let kind = match is_beta_extremal(g, beta, mode) {
        Ok(v) => v.kind,
        Err(e) => {
            trace.push(TraceEvent::RouteFailed { route: "extremality".into(), error: e.to_string() });
            ExtremalKind::NonExtremal
        }
    };
    trace.push(TraceEvent::Extremality {
        kind: match &kind {
            ExtremalKind::NonExtremal => "non_extremal",
            ExtremalKind::SparseSet { .. } => "sparse_set",
            ExtremalKind::SparseCut { .. } => "sparse_cut",
        }
        .into(),
        beta: format_rational(&beta),
    });

    // the extremal solver first, then the non-extremal pipeline
    let mut routes: Vec<Route> = match &kind {
        ExtremalKind::SparseCut { .. } => vec![Route::TwoCliques],
        ExtremalKind::SparseSet { .. } => vec![Route::SparseSet],
        ExtremalKind::NonExtremal => vec![],
    };
    routes.push(Route::NonExtremal);
    for route in routes {
        let attempt = match (&kind, route) {
            (ExtremalKind::SparseCut { v1, v2 }, Route::TwoCliques) => solve_two_cliques(g, v1, v2, p),
            (ExtremalKind::SparseSet { w }, Route::SparseSet) => solve_sparse_set(g, w, p),
            _ => non_extremal(g, p, beta, cfg, trace),
        };
        match attempt.and_then(|c| certify(g, c)) {
            Ok(c) => return SolveReport { outcome: SolveOutcome::found(c, 0), route, fallback: false },
            Err(e) => trace.push(TraceEvent::RouteFailed { route: route.as_str().into(), error: e.to_string() }),
        }
    }
    oracle(g, p, cfg, trace, true)
}

fn certify(g: &Graph, c: Caterpillar) -> Result<Caterpillar, SolverError> {
    validate(g, &c).map_err(|v| super::failed(format!("invalid certificate: {v}")))?;
    if !is_spanning(g, &c) {
        return Err(super::failed("certificate does not span"));
    }
    Ok(c)
}

fn oracle(g: &Graph, p: usize, cfg: &SolverConfig, trace: &mut Trace, fallback: bool) -> SolveReport {
    // with the oracle disabled nothing is claimed and no fallback happened
    if !cfg.fallback {
        return SolveReport { outcome: SolveOutcome::exhausted(0), route: Route::Oracle, fallback: false };
    }
    trace.push(TraceEvent::Fallback { budget: cfg.fallback_budget });
    let outcome = exact_solve_with(g, p, &OracleConfig::with_budget(cfg.fallback_budget))
        .unwrap_or_else(|_| SolveOutcome::exhausted(0));
    // the oracle's own certificate is re-checked like any other
    let outcome = match outcome.certificate {
        Some(ref c) if validate(g, c).is_err() || !is_spanning(g, c) => SolveOutcome::exhausted(outcome.nodes_explored),
        _ => outcome,
    };
    SolveReport { outcome, route: Route::Oracle, fallback }
}

/// Default block size `max(4(p+1), n/25)`.
pub fn default_block_size(n: usize, p: usize) -> usize {
    (4 * (p + 1)).max(n / 25)
}

/// The asymptotic parameter chain: `γ < β⁴`, `δ < (β/300)²` and
/// `C > 80(p+1)/(δγβ³)`.
pub fn strict_parameters_ok(beta: Rational, delta: Rational, gamma: Rational, block_size: usize, p: usize) -> bool {
    let zero = Rational::from_integer(0);
    if delta <= zero || gamma <= zero || beta <= zero {
        return false;
    }
    let b300 = beta / 300;
    gamma < beta * beta * beta * beta
        && delta < b300 * b300
        && int(block_size) > int(80 * (p + 1)) / (delta * gamma * beta * beta * beta)
}

fn non_extremal(
    g: &Graph,
    p: usize,
    beta: Rational,
    cfg: &SolverConfig,
    trace: &mut Trace,
) -> Result<Caterpillar, SolverError> {
    let n = g.n();
    let block_size = cfg.block_size.unwrap_or_else(|| default_block_size(n, p));
    let rbeta = cfg.reservoir_beta.unwrap_or(beta);
    if cfg.strict && !strict_parameters_ok(beta, cfg.delta, cfg.gamma, block_size, p) {
        return Err(precondition("parameters violate the strict chain"));
    }
    let reservoir = if cfg.strict {
        let (r, attempt) = sample_reservoir(g, cfg.gamma, rbeta, cfg.max_attempts, cfg.seed)?;
        trace.push(TraceEvent::Reservoir { attempt, size: r.z.len() });
        r
    } else {
        match sample_reservoir_relaxed(g, cfg.gamma, rbeta, cfg.max_attempts, cfg.seed) {
            Ok((r, attempt)) => {
                trace.push(TraceEvent::Reservoir { attempt, size: r.z.len() });
                r
            }
            Err(e) => {
                // desk profile: proceed without a reservoir; junctions use
                // direct edges or spare vertices instead
                trace.push(TraceEvent::RouteFailed { route: "reservoir".into(), error: e.to_string() });
                trace.push(TraceEvent::Reservoir { attempt: cfg.max_attempts, size: 0 });
                Reservoir { z: VertexSet::new(n), gamma: cfg.gamma, beta: rbeta }
            }
        }
    };
    let coverage = coverage_targets(g, p, cfg.delta, &reservoir.z);
    let absorber = build_absorber(g, p, cfg.delta, &reservoir, &coverage)?;
    trace.push(TraceEvent::Absorber {
        family: absorber.family.len(),
        vertices: absorber.vertex_set(n).len(),
        capacity: absorber.capacity,
    });
    let params = ExtendParams { block_size, delta: cfg.delta, gamma: cfg.gamma, beta };
    Ok(extend_loop(g, p, &absorber, &reservoir, &params, trace)?.caterpillar)
}

/// Lowest-degree vertices outside `z`, chunked into `(p+1)`-sets: as many
/// as an absorber of `δn` vertices can hold, counting one bridge per member.
pub(crate) fn coverage_targets(g: &Graph, p: usize, delta: Rational, z: &VertexSet) -> Vec<Vec<usize>> {
    let per_member = absorbing_set_order(p) + 2 * (p + 1);
    let count = floor_usize(&(delta * int(g.n()))) / per_member;
    let mut order: Vec<usize> = z.complement().iter().collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    order.chunks_exact(p + 1).take(count).map(|c| c.to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{complete, cycle, two_cliques};

    #[test]
    fn complete_graph_is_constructive() {
        let r = solve(&complete(24), 1, &SolverConfig::default());
        assert_eq!(r.outcome.kind, OutcomeKind::Found);
        assert!(!r.fallback);
        assert!(is_spanning(&complete(24), r.outcome.certificate.as_ref().unwrap()));
    }

    #[test]
    fn below_threshold_goes_to_the_oracle() {
        let r = solve(&two_cliques(12), 1, &SolverConfig::default());
        assert_eq!((r.outcome.kind, r.route), (OutcomeKind::ProvedAbsent, Route::Oracle));
        let r = solve(&cycle(6), 1, &SolverConfig::default());
        assert_eq!(r.outcome.kind, OutcomeKind::ProvedAbsent);
    }

    #[test]
    fn indivisible_and_zero_p() {
        let r = solve(&complete(10), 2, &SolverConfig::default());
        assert_eq!((r.outcome.kind, r.route), (OutcomeKind::ProvedAbsent, Route::Divisibility));
        assert_eq!(solve(&complete(10), 0, &SolverConfig::default()).outcome.kind, OutcomeKind::Exhausted);
    }

    #[test]
    fn strict_chain_refuses_desk_parameters() {
        assert!(!strict_parameters_ok(Rational::new(1, 20), Rational::new(1, 10), Rational::new(1, 50), 8, 1));
        let cfg = SolverConfig { strict: true, fallback: false, ..SolverConfig::default() };
        let mut t = Trace::enabled();
        let r = solve_traced(&complete(24), 1, &cfg, &mut t);
        assert_eq!(r.outcome.kind, OutcomeKind::Exhausted);
        assert!(t.events().iter().any(|e| matches!(e, TraceEvent::RouteFailed { .. })));
    }

    #[test]
    fn coverage_fits_the_budget() {
        let g = complete(200);
        let z = VertexSet::new(200);
        let t = coverage_targets(&g, 1, Rational::new(1, 10), &z);
        assert_eq!(t.len(), 20 / 14);
        assert!(coverage_targets(&complete(48), 1, Rational::new(1, 10), &VertexSet::new(48)).is_empty());
    }
}
