use pcat_core::harness::{
    certify_extremal_families, families_for, run_sweep, DegreeValues, Family, HarnessError, SweepSolver, SweepSpec,
    CSV_HEADER,
};
use pcat_core::OutcomeKind;

fn spec(p: usize, n_values: Vec<usize>, degrees: DegreeValues, solver: SweepSolver) -> SweepSpec {
    SweepSpec { p, n_values, degree_values: degrees, trials: 5, seed: 1, solver, budget: 1_000_000 }
}

#[test]
fn complete_graphs_always_succeed() {
    let r = run_sweep(&spec(1, vec![8], DegreeValues::List(vec![7]), SweepSolver::Exact)).unwrap();
    assert_eq!(r.rows.len(), 1);
    assert_eq!((r.rows[0].successes, r.rows[0].trials), (5, 5));
}

#[test]
fn csv_has_header_and_one_row_per_point() {
    let r = run_sweep(&spec(1, vec![8], DegreeValues::List((3..=7).collect()), SweepSolver::Exact)).unwrap();
    let csv = r.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    assert_eq!(lines.count(), 5);
    assert!(r.rows.iter().all(|row| row.successes + row.proved_absent + row.exhausted == row.trials));
}

#[test]
fn around_threshold_clips_to_valid_degrees() {
    let r = run_sweep(&spec(2, vec![9], DegreeValues::AroundThreshold(10), SweepSolver::Auto)).unwrap();
    let degrees: Vec<usize> = r.rows.iter().map(|row| row.d).collect();
    assert_eq!(degrees, (0..9).collect::<Vec<_>>());
}

#[test]
fn constructive_sweeps_never_report_absence() {
    let r = run_sweep(&spec(1, vec![24], DegreeValues::List(vec![13, 16]), SweepSolver::Constructive)).unwrap();
    assert!(r.rows.iter().all(|row| row.proved_absent == 0));
    assert_eq!(r.rows.iter().map(|row| row.successes).sum::<usize>(), 10);
}

#[test]
fn invalid_specs_are_rejected() {
    let s = |p, n: Vec<usize>, d: Vec<usize>, solver| run_sweep(&spec(p, n, DegreeValues::List(d), solver));
    assert_eq!(s(2, vec![10], vec![5], SweepSolver::Exact).unwrap_err(), HarnessError::Indivisible { n: 10, p: 2 });
    assert_eq!(s(0, vec![10], vec![5], SweepSolver::Exact).unwrap_err(), HarnessError::ZeroP);
    assert!(matches!(s(1, vec![8], vec![8], SweepSolver::Exact), Err(HarnessError::DegreeOutOfRange { .. })));
    assert!(matches!(s(1, vec![40], vec![30], SweepSolver::Exact), Err(HarnessError::CeilingExceeded { .. })));
    let mut zero = spec(1, vec![8], DegreeValues::List(vec![4]), SweepSolver::Exact);
    zero.trials = 0;
    assert_eq!(run_sweep(&zero).unwrap_err(), HarnessError::NoTrials);
}

#[test]
fn certification_examples() {
    let report = certify_extremal_families(3, 12, 5_000_000);
    assert!(report.all_ok());
    let attempted: usize =
        (1..=3).flat_map(|p| (p + 1..=12).step_by(p + 1).map(move |n| families_for(n, p).len())).sum();
    assert_eq!(report.rows.len(), attempted);
    let row = report.rows.iter().find(|r| r.p == 1 && r.n == 8).unwrap();
    assert_eq!((row.family, row.min_degree, row.outcome), (Family::TwoCliques, 3, OutcomeKind::ProvedAbsent));
    // q even and p ≥ 3: the balanced graph is feasible, the unbalanced one is certified
    assert_eq!(families_for(8, 3), vec![Family::UnbalancedBipartite, Family::TwoCliques]);
    assert!(report.to_csv().starts_with("p,n,family,"));
}
