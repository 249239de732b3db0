//! Experiment runners: minimum-degree sweeps over random graphs and the
//! certification that the extremal families sit just below the threshold.

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{bipartite_spine_split, degree_threshold};
use crate::graph::generators::{complete_bipartite, random_min_degree, two_cliques};
use crate::graph::Graph;
use crate::oracle::{exact_solve_with, OracleConfig, OutcomeKind, SolveOutcome};
use crate::par::{map_range, Execution};
use crate::rational::{ceil_usize, format_rational, int, Rational};
use crate::rng::stream;
use crate::solver::{solve, SolverConfig};

/// Below this many vertices the automatic solver choice is the oracle.
pub const AUTO_EXACT_BELOW: usize = 13;
/// Largest `n` accepted by an exact sweep.
pub const EXACT_SWEEP_CEILING: usize = 24;

pub const CSV_HEADER: &str = "p,n,d,trials,successes,mean_nodes,threshold_num,threshold_den";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("p must be at least 1")]
    ZeroP,
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("n = {n} is not divisible by p + 1 = {}", p + 1)]
    Indivisible { n: usize, p: usize },
    #[error("minimum degree {d} impossible on {n} vertices")]
    DegreeOutOfRange { n: usize, d: usize },
    #[error("n = {n} exceeds the exact-sweep ceiling {ceiling}")]
    CeilingExceeded { n: usize, ceiling: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepSolver {
    /// Oracle below [`AUTO_EXACT_BELOW`] vertices, constructive above.
    Auto,
    Exact,
    /// Constructive routes only; no oracle fallback.
    Constructive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeValues {
    List(Vec<usize>),
    /// `⌈threshold⌉ − k ..= ⌈threshold⌉ + k`, clipped to `0..n`.
    AroundThreshold(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSpec {
    pub p: usize,
    pub n_values: Vec<usize>,
    pub degree_values: DegreeValues,
    pub trials: usize,
    pub seed: u64,
    pub solver: SweepSolver,
    /// Oracle node budget per trial.
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: usize,
    pub n: usize,
    pub d: usize,
    pub trials: usize,
    pub successes: usize,
    pub proved_absent: usize,
    pub exhausted: usize,
    pub mean_nodes: f64,
    #[serde(with = "crate::rational::serde_str")]
    pub threshold: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// Fixed-column CSV with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{:.3},{},{}\n",
                r.p,
                r.n,
                r.d,
                r.trials,
                r.successes,
                r.mean_nodes,
                r.threshold.numer(),
                r.threshold.denom()
            ));
        }
        out
    }
}

/// Seed of trial `trial` at `(n, d)`: the stream of `seed ⊕ trial` indexed by `(n, d)`.
fn trial_graph(spec: &SweepSpec, n: usize, d: usize, trial: usize) -> Graph {
    let mut rng = stream(spec.seed ^ trial as u64, ((n as u64) << 32) | d as u64);
    random_min_degree(n, d, &mut rng)
}

fn degrees(spec: &SweepSpec, n: usize, threshold: Rational) -> Vec<usize> {
    match &spec.degree_values {
        DegreeValues::List(v) => v.clone(),
        DegreeValues::AroundThreshold(k) => {
            let t = ceil_usize(&threshold);
            (t.saturating_sub(*k)..=(t + k).min(n - 1)).collect()
        }
    }
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult, HarnessError> {
    run_sweep_with(spec, Execution::default())
}

/// Trials run through `exec`; the result does not depend on it.
pub fn run_sweep_with(spec: &SweepSpec, exec: Execution) -> Result<SweepResult, HarnessError> {
    let p = spec.p;
    if p == 0 {
        return Err(HarnessError::ZeroP);
    }
    if spec.trials == 0 {
        return Err(HarnessError::NoTrials);
    }
    for &n in &spec.n_values {
        if n == 0 || n % (p + 1) != 0 {
            return Err(HarnessError::Indivisible { n, p });
        }
        if spec.solver == SweepSolver::Exact && n > EXACT_SWEEP_CEILING {
            return Err(HarnessError::CeilingExceeded { n, ceiling: EXACT_SWEEP_CEILING });
        }
    }
    let mut rows = Vec::new();
    for &n in &spec.n_values {
        let threshold = degree_threshold(n, p).expect("divisibility checked");
        let exact = match spec.solver {
            SweepSolver::Exact => true,
            SweepSolver::Constructive => false,
            SweepSolver::Auto => n < AUTO_EXACT_BELOW,
        };
        for d in degrees(spec, n, threshold) {
            if d >= n {
                return Err(HarnessError::DegreeOutOfRange { n, d });
            }
            let outcomes: Vec<SolveOutcome> = map_range(exec, spec.trials, |t| {
                let g = trial_graph(spec, n, d, t);
                if exact {
                    exact_solve_with(&g, p, &OracleConfig::with_budget(spec.budget)).expect("p checked")
                } else {
                    let cfg = SolverConfig { seed: spec.seed ^ t as u64, fallback: false, ..SolverConfig::default() };
                    solve(&g, p, &cfg).outcome
                }
            });
            let count = |k: OutcomeKind| outcomes.iter().filter(|o| o.kind == k).count();
            let nodes: u64 = outcomes.iter().map(|o| o.nodes_explored).sum();
            rows.push(SweepRow {
                p,
                n,
                d,
                trials: spec.trials,
                successes: count(OutcomeKind::Found),
                proved_absent: count(OutcomeKind::ProvedAbsent),
                exhausted: count(OutcomeKind::Exhausted),
                mean_nodes: nodes as f64 / spec.trials as f64,
                threshold,
            });
        }
    }
    Ok(SweepResult { rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `K_{⌊n/2⌋} ∪ K_{⌈n/2⌉}`.
    TwoCliques,
    /// `K_{n/2−1, n/2+1}`.
    UnbalancedBipartite,
    /// `K_{n/2, n/2}`.
    BalancedBipartite,
    /// `K_{(n−1)/2, (n+1)/2}`.
    NearBalancedBipartite,
}

impl Family {
    pub fn graph(self, n: usize) -> Graph {
        match self.sides(n) {
            None => two_cliques(n),
            Some((a, b)) => complete_bipartite(a, b),
        }
    }

    /// Side sizes of a bipartite family.
    pub fn sides(self, n: usize) -> Option<(usize, usize)> {
        match self {
            Family::TwoCliques => None,
            Family::UnbalancedBipartite => Some((n / 2 - 1, n / 2 + 1)),
            Family::BalancedBipartite => Some((n / 2, n / 2)),
            Family::NearBalancedBipartite => Some(((n - 1) / 2, n.div_ceil(2))),
        }
    }

    /// Expected shortfall `threshold − δ` of the family.
    pub fn expected_gap(self, n: usize, p: usize) -> Rational {
        let q = n / (p + 1);
        match self {
            Family::TwoCliques if n % 2 == 1 || q.is_multiple_of(2) || p > 2 => int(1),
            Family::TwoCliques => Rational::new(1, 2),
            Family::UnbalancedBipartite | Family::NearBalancedBipartite => int(1),
            Family::BalancedBipartite => Rational::new(1, 2),
        }
    }
}

/// Families shown infeasible for `(n, p)`: two cliques when `p ≤ 2`; for
/// `p ≥ 3` the unbalanced bipartite graph and two cliques when `n/(p+1)` is
/// even, else the (near-)balanced bipartite graph by the parity of `n`.
pub fn families_for(n: usize, p: usize) -> Vec<Family> {
    let q = n / (p + 1);
    if p <= 2 {
        vec![Family::TwoCliques]
    } else if q.is_multiple_of(2) {
        let mut v = Vec::new();
        if n >= 4 {
            v.push(Family::UnbalancedBipartite);
        }
        v.push(Family::TwoCliques);
        v
    } else if n.is_multiple_of(2) {
        vec![Family::BalancedBipartite]
    } else {
        vec![Family::NearBalancedBipartite]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifyRow {
    pub p: usize,
    pub n: usize,
    pub family: Family,
    pub min_degree: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub threshold: Rational,
    pub outcome: OutcomeKind,
    /// Oracle proved absence and the degree gap matched the expected one.
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifyReport {
    pub rows: Vec<CertifyRow>,
}

impl CertifyReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,n,family,min_degree,threshold,outcome,ok\n");
        for r in &self.rows {
            let family = serde_json::to_value(r.family).expect("serializes");
            let outcome = serde_json::to_value(r.outcome).expect("serializes");
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.p,
                r.n,
                family.as_str().unwrap_or_default(),
                r.min_degree,
                format_rational(&r.threshold),
                outcome.as_str().unwrap_or_default(),
                r.ok
            ));
        }
        out
    }
}

/// Runs the oracle on every family for `p ≤ p_max` and feasible `n ≤ n_max`.
pub fn certify_extremal_families(p_max: usize, n_max: usize, budget: u64) -> CertifyReport {
    let cases: Vec<(usize, usize, Family)> = (1..=p_max)
        .flat_map(|p| {
            (1..=n_max / (p + 1)).flat_map(move |q| {
                let n = q * (p + 1);
                families_for(n, p).into_iter().map(move |f| (p, n, f))
            })
        })
        .collect();
    let rows = map_range(Execution::default(), cases.len(), |i| {
        let (p, n, family) = cases[i];
        let g = family.graph(n);
        let min_degree = g.min_degree().expect("non-empty");
        let threshold = degree_threshold(n, p).expect("feasible n");
        let outcome = exact_solve_with(&g, p, &OracleConfig::with_budget(budget)).expect("p positive").kind;
        let gap_ok = threshold - int(min_degree) == family.expected_gap(n, p);
        // a bipartite family must also fail the spine-split test
        let split_ok = family.sides(n).is_none_or(|(a, b)| bipartite_spine_split(a, b, p).is_ok_and(|v| !v.feasible));
        CertifyRow {
            p,
            n,
            family,
            min_degree,
            threshold,
            outcome,
            ok: outcome == OutcomeKind::ProvedAbsent && gap_ok && split_ok,
        }
    });
    CertifyReport { rows }
}
