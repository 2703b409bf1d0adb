use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cqdirac::report::CheckReport;
use cqdirac::sampling::suite_rng;
use cqdirac::spin::{local_gauge_obstruction_demo, ObstructionReport};
use cqdirac::{run_all, run_suite, RunConfig, SuiteKind};

const GRID_NOTE: &str = "Grid searches in the spin suite use 10000 Fibonacci directions for the \
non-null eigendirection scan and a 32x32x32 (n) by 64 (beta) grid for the quaternionic-gauge \
no-escape scan.";

#[derive(Parser)]
#[command(name = "cqdirac", version, about = "Randomized invariant checks for complex-quaternion Dirac theory", after_help = GRID_NOTE)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one check suite, or all of them.
    Run(RunArgs),
}

#[derive(clap::Args)]
struct RunArgs {
    suite: SuiteArg,

    /// Seed for the ChaCha8 generator; each suite draws from its own stream.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Suite tolerance (default depends on the suite).
    #[arg(long)]
    tol: Option<f64>,

    /// Randomized cases per property.
    #[arg(long, default_value_t = 1000)]
    cases: usize,

    /// Emit one JSON object per suite, newline-delimited.
    #[arg(long)]
    json: bool,

    /// Also print a demonstration table.
    #[arg(long)]
    demo: Option<Demo>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Algebra,
    Lorentz,
    Dirac,
    Spin,
    Gauge,
    Lagrangian,
    Chiral,
    All,
}

impl SuiteArg {
    fn kind(self) -> Option<SuiteKind> {
        Some(match self {
            SuiteArg::Algebra => SuiteKind::Algebra,
            SuiteArg::Lorentz => SuiteKind::Lorentz,
            SuiteArg::Dirac => SuiteKind::Dirac,
            SuiteArg::Spin => SuiteKind::Spin,
            SuiteArg::Gauge => SuiteKind::Gauge,
            SuiteArg::Lagrangian => SuiteKind::Lagrangian,
            SuiteArg::Chiral => SuiteKind::Chiral,
            SuiteArg::All => return None,
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Demo {
    /// Compensating fields for a position-dependent quaternionic gauge.
    Obstruction,
}

/// Stream index for demos, clear of the suite streams.
const DEMO_STREAM: u64 = 100;
const DEMO_PAIRS: usize = 12;

fn obstruction_table(report: &ObstructionReport) -> String {
    let [x, y, z] = report.direction;
    let mut out = format!(
        "local gauge beta(q) = x about n = ({x:.4}, {y:.4}, {z:.4})\n\
         mismatch |B'(psi_a) - B'(psi_b)| / max|B'|, floor {:.0e}\n",
        report.floor
    );
    for row in report.controls.iter().chain(&report.generic) {
        out.push_str(&format!("  {:<40} {:.3e}\n", row.label, row.mismatch));
    }
    out.push_str(&format!(
        "  generic pairs above floor: {:.1}%\n",
        100.0 * report.fraction_above_floor()
    ));
    out
}

fn main() -> ExitCode {
    let Command::Run(args) = Cli::parse().command;
    if let Some(tol) = args.tol {
        if !(tol.is_finite() && tol > 0.0) {
            eprintln!("error: --tol must be a positive finite number");
            return ExitCode::from(2);
        }
    }
    let config = RunConfig {
        seed: args.seed,
        cases: args.cases,
        tolerance: args.tol,
    };
    let reports: Vec<CheckReport> = match args.suite.kind() {
        Some(kind) => vec![run_suite(kind, &config)],
        None => run_all(&config),
    };

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for report in &reports {
        let text = if args.json {
            report.to_json() + "\n"
        } else {
            report.to_table()
        };
        if out.write_all(text.as_bytes()).is_err() {
            return ExitCode::FAILURE;
        }
        for failed in report.failing_checks() {
            eprintln!(
                "{}: {} failed ({:.3e} vs {:.1e})",
                report.suite, failed.name, failed.value, failed.limit
            );
        }
    }

    if let Some(Demo::Obstruction) = args.demo {
        let mut rng = suite_rng(args.seed, DEMO_STREAM);
        let table = obstruction_table(&local_gauge_obstruction_demo(&mut rng, DEMO_PAIRS));
        if args.json {
            eprint!("{table}");
        } else {
            let _ = write!(out, "\n{table}");
        }
    }

    if reports.iter().all(CheckReport::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cqdirac::spin::{DIRECTION_GRID, GAUGE_ANGLE_GRID, GAUGE_AXIS_GRID};

    #[test]
    fn help_names_the_grid_sizes() {
        let axis = GAUGE_AXIS_GRID;
        assert!(GRID_NOTE.contains(&format!("{DIRECTION_GRID} Fibonacci")));
        assert!(GRID_NOTE.contains(&format!("{axis}x{axis}x{axis} (n) by {GAUGE_ANGLE_GRID}")));
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
