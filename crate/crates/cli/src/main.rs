//! `pcat`: spanning p-caterpillar tools. JSON and CSV go to stdout (or
//! `--out`). Exit codes: 0 completed, 1 usage or input error, 2 invalid
//! certificate (or a certification contradiction), 3 budget exhausted.

use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use pcat_core::analysis::{degree_threshold, is_beta_extremal, SearchMode};
use pcat_core::caterpillar::{is_spanning, validate, Caterpillar};
use pcat_core::graph::generators;
use pcat_core::graph::{parse_edge_list, serialize_edge_list, Graph};
use pcat_core::harness::{certify_extremal_families, run_sweep, DegreeValues, SweepSolver, SweepSpec};
use pcat_core::oracle::{count_spanning_with_ceiling, exact_solve, OutcomeKind, COUNT_CEILING};
use pcat_core::rational::{format_rational, parse_rational, Rational};
use pcat_core::rng::seeded;
use pcat_core::solver::{solve_traced, SolverConfig, Trace};

const EXIT_INVALID: u8 = 2;
const EXIT_EXHAUSTED: u8 = 3;

#[derive(Parser)]
#[command(name = "pcat", version, about = "Spanning p-caterpillars in dense graphs")]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Constructive solver with exact fallback.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        p: usize,
        /// Enforce the asymptotic parameter chain.
        #[arg(long)]
        strict: bool,
        /// Keep going when the degree threshold fails.
        #[arg(long)]
        warn_only: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, alias = "budget", default_value_t = 5_000_000)]
        fallback_budget: u64,
        /// Never call the exact oracle.
        #[arg(long)]
        no_fallback: bool,
        /// Extremality parameter, e.g. `1/20`.
        #[arg(long)]
        beta: Option<String>,
        /// Emit phase events as JSON lines on stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Exact branch-and-bound search.
    SolveExact {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 5_000_000)]
        budget: u64,
    },
    /// Check a certificate against a graph.
    Validate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Count spanning p-caterpillars exactly.
    Count {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = COUNT_CEILING)]
        ceiling: usize,
    },
    /// Minimum-degree threshold for `n` and `p`.
    Threshold {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
    },
    /// β-extremality verdict with a witness.
    Extremal {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "1/20")]
        beta: String,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generate a graph as an edge list.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        /// Second side size for `bipartite`.
        #[arg(long)]
        m: Option<usize>,
        /// Minimum degree for `min-degree`.
        #[arg(long)]
        d: Option<usize>,
        /// Edge probability for `gnp`.
        #[arg(long)]
        q: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Success rates over random graphs of given minimum degree (CSV).
    Sweep {
        #[arg(long)]
        p: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', conflicts_with = "around")]
        d: Vec<usize>,
        /// Degrees within this distance of the threshold.
        #[arg(long)]
        around: Option<usize>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SolverKind::Auto)]
        solver: SolverKind,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Check that the extremal families have no spanning caterpillar (CSV).
    Certify {
        #[arg(long, default_value_t = 3)]
        p_max: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 5_000_000)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Local,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Complete,
    Cycle,
    Path,
    TwoCliques,
    Bipartite,
    Gnp,
    MinDegree,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverKind {
    Auto,
    Exact,
    Constructive,
}

type Res<T> = Result<T, Box<dyn Error>>;

fn read_graph(path: &Path) -> Res<Graph> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(parse_edge_list(&text)?)
}

fn rational(text: &str) -> Res<Rational> {
    Ok(parse_rational(text)?)
}

fn outcome_code(kind: OutcomeKind) -> u8 {
    if kind == OutcomeKind::Exhausted {
        EXIT_EXHAUSTED
    } else {
        0
    }
}

/// Output text and exit code.
fn run(command: Command) -> Res<(String, u8)> {
    Ok(match command {
        Command::Solve { graph, p, strict, warn_only, seed, fallback_budget, no_fallback, beta, trace } => {
            let g = read_graph(&graph)?;
            let cfg = SolverConfig {
                beta: beta.as_deref().map(rational).transpose()?,
                strict,
                warn_only,
                seed,
                fallback: !no_fallback,
                fallback_budget,
                ..SolverConfig::default()
            };
            let mut t = if trace { Trace::enabled() } else { Trace::disabled() };
            let report = solve_traced(&g, p, &cfg, &mut t);
            eprint!("{}", t.to_json_lines());
            (report.to_json() + "\n", outcome_code(report.outcome.kind))
        }
        Command::SolveExact { graph, p, budget } => {
            let g = read_graph(&graph)?;
            let outcome = exact_solve(&g, p, budget)?;
            (serde_json::to_string(&outcome)? + "\n", outcome_code(outcome.kind))
        }
        Command::Validate { graph, cert } => {
            let g = read_graph(&graph)?;
            let text = fs::read_to_string(&cert).map_err(|e| format!("{}: {e}", cert.display()))?;
            // a bare certificate, or a solve report carrying one
            let parsed = serde_json::from_str::<serde_json::Value>(&text).and_then(|mut v| {
                let inner = v.get_mut("certificate").map(serde_json::Value::take);
                serde_json::from_value::<Caterpillar>(inner.unwrap_or(v))
            });
            let (value, ok) = match parsed {
                Err(e) => (json!({"valid": false, "spanning": false, "violation": e.to_string()}), false),
                Ok(c) => match validate(&g, &c) {
                    Err(v) => (json!({"valid": false, "spanning": false, "violation": v.to_string()}), false),
                    Ok(()) => (json!({"valid": true, "spanning": is_spanning(&g, &c)}), true),
                },
            };
            (value.to_string() + "\n", if ok { 0 } else { EXIT_INVALID })
        }
        Command::Count { graph, p, ceiling } => {
            let g = read_graph(&graph)?;
            let count = count_spanning_with_ceiling(&g, p, ceiling)?;
            (json!({"count": count.to_string()}).to_string() + "\n", 0)
        }
        Command::Threshold { n, p } => (format_rational(&degree_threshold(n, p)?) + "\n", 0),
        Command::Extremal { graph, beta, mode, seed } => {
            let g = read_graph(&graph)?;
            let mode = match mode {
                Mode::Exhaustive => SearchMode::Exhaustive,
                Mode::Local => SearchMode::local(seed),
            };
            let verdict = is_beta_extremal(&g, rational(&beta)?, mode)?;
            (serde_json::to_string(&verdict)? + "\n", 0)
        }
        Command::Gen { kind, n, m, d, q, seed } => {
            let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| format!("`{flag}` is required for this kind"));
            let g = match kind {
                GenKind::Complete => generators::complete(n),
                GenKind::Cycle => generators::cycle(n),
                GenKind::Path => generators::path(n),
                GenKind::TwoCliques => generators::two_cliques(n),
                GenKind::Bipartite => generators::complete_bipartite(n, need(m, "--m")?),
                GenKind::Gnp => {
                    let q = q.ok_or("`--q` is required for gnp")?;
                    if !(0.0..=1.0).contains(&q) {
                        return Err("`--q` must lie in [0, 1]".into());
                    }
                    generators::gnp(n, q, &mut seeded(seed))
                }
                GenKind::MinDegree => {
                    let d = need(d, "--d")?;
                    if n > 0 && d >= n {
                        return Err(format!("minimum degree {d} impossible on {n} vertices").into());
                    }
                    generators::random_min_degree_seeded(n, d, seed)
                }
            };
            (serialize_edge_list(&g), 0)
        }
        Command::Sweep { p, n, d, around, trials, seed, solver, budget } => {
            let degree_values = match around {
                Some(k) => DegreeValues::AroundThreshold(k),
                None if d.is_empty() => return Err("give `--d` or `--around`".into()),
                None => DegreeValues::List(d),
            };
            let spec = SweepSpec {
                p,
                n_values: n,
                degree_values,
                trials,
                seed,
                solver: match solver {
                    SolverKind::Auto => SweepSolver::Auto,
                    SolverKind::Exact => SweepSolver::Exact,
                    SolverKind::Constructive => SweepSolver::Constructive,
                },
                budget,
            };
            (run_sweep(&spec)?.to_csv(), 0)
        }
        Command::Certify { p_max, n_max, budget } => {
            let report = certify_extremal_families(p_max, n_max, budget);
            let code = if report.all_ok() { 0 } else { EXIT_INVALID };
            (report.to_csv(), code)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((text, code)) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
