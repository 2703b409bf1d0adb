//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! summary is always printed; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cqdirac::chiral::{chiral_rest_nullity, gamma_algebra_check};
use cqdirac::relativity::full_turn;
use cqdirac::report::{CheckReport, SuiteKind};
use cqdirac::spin::spin_eigenspace_dimension;
use cqdirac::suites::{run_suite, RunConfig};
use cqdirac::wave::{
    apply_dbar, rest_frame_basis_rank, rest_frame_kernel_dimension, Field, Species,
};
use cqdirac::{Cq, MinkowskiVector};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn suite(kind: SuiteKind, budget: Duration) -> (CheckReport, Duration, bool) {
    let start = Instant::now();
    let report = run_suite(kind, &RunConfig::default());
    let elapsed = start.elapsed();
    let ok = report.passed() && elapsed < budget;
    (report, elapsed, ok)
}

fn describe(report: &CheckReport, elapsed: Duration, budget: Duration) -> String {
    let mut s = format!(
        "{} cases, max residual {:.2e} (tol {:.0e}), {} ms (budget {} ms)",
        report.cases,
        report.max_residual,
        report.tolerance,
        elapsed.as_millis(),
        budget.as_millis()
    );
    for c in report.failing_checks() {
        s.push_str(&format!(
            "; FAILED {} = {:.3e} vs {:.1e}",
            c.name, c.value, c.limit
        ));
    }
    s
}

fn has_check(report: &CheckReport, name: &str, min_cases: usize) -> bool {
    report
        .checks
        .iter()
        .any(|c| c.name.starts_with(name) && c.cases >= min_cases && c.passed())
}

fn algebra() -> Outcome {
    let budget = Duration::from_secs(1);
    let (r, t, ok) = suite(SuiteKind::Algebra, budget);
    let coverage = [
        "associativity",
        "quaternionic conjugate",
        "complex conjugate",
        "trace cyclicity",
        "det(to_matrix)",
    ]
    .iter()
    .all(|n| has_check(&r, n, 1000));
    Outcome {
        passed: ok && coverage && r.tolerance <= 1e-12,
        detail: describe(&r, t, budget),
    }
}

fn lorentz() -> Outcome {
    let budget = Duration::from_secs(1);
    let (r, t, ok) = suite(SuiteKind::Lorentz, budget);
    let coverage = has_check(&r, "scalar product invariant", 1000)
        && has_check(&r, "agrees with 4x4 matrix", 1000);
    let turn = [
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.6, 0.0, -0.8],
    ]
    .iter()
    .map(|n| full_turn(*n).unwrap().omega().max_abs_diff(&-Cq::ONE))
    .fold(0.0, f64::max);
    Outcome {
        passed: ok && coverage && turn <= 1e-12 && r.tolerance <= 1e-10,
        detail: format!("{}; |omega(2pi) + 1| = {turn:.1e}", describe(&r, t, budget)),
    }
}

fn wave() -> Outcome {
    let budget = Duration::from_secs(2);
    let (r, t, ok) = suite(SuiteKind::Dirac, budget);
    let q = MinkowskiVector::new(0.3, -1.2, 0.4, 2.0);
    let dbar_q = apply_dbar(&Field::Coordinate).unwrap().eval(&q);
    let exact = -dbar_q == Cq::real(4.0);
    let coverage = [
        "Klein-Gordon residual on shell",
        "Klein-Gordon residual off shell",
        "constructed solutions",
        "iterated operator",
    ]
    .iter()
    .all(|n| has_check(&r, n, 1000))
        && r.checks
            .iter()
            .any(|c| c.name.contains("finite differences") && c.limit <= 1e-8 && c.passed());
    Outcome {
        passed: ok && exact && coverage && r.tolerance <= 1e-10,
        detail: format!("{}; -Dbar q = {}", describe(&r, t, budget), -dbar_q),
    }
}

fn spin() -> Outcome {
    let budget = Duration::from_secs(10);
    let (r, t, ok) = suite(SuiteKind::Spin, budget);
    let coverage = has_check(&r, "S_z eigenstates", 4)
        && has_check(&r, "S^2 = 3/4", 1000)
        && has_check(&r, "right multiplication relations", 1)
        && has_check(&r, "null/non-null classification", 2000)
        && r.checks
            .iter()
            .any(|c| c.name.starts_with("no gauge") && c.limit >= 1e-3 && c.value > 1e-3);
    Outcome {
        passed: ok && coverage && r.tolerance <= 1e-12,
        detail: describe(&r, t, budget),
    }
}

fn gauge() -> Outcome {
    let budget = Duration::from_secs(2);
    let (r, t, ok) = suite(SuiteKind::Gauge, budget);
    let coverage = has_check(&r, "L0 invariant under quaternionic gauge", 1000)
        && has_check(&r, "coupled residual under U(1)", 1000)
        && has_check(&r, "L_QED invariant under U(1)", 1000)
        && has_check(&r, "decompose_normal round trip", 1000)
        && r.checks
            .iter()
            .any(|c| c.name.starts_with("obstruction: generic") && c.value >= 0.99);
    Outcome {
        passed: ok && coverage && r.tolerance <= 1e-11,
        detail: describe(&r, t, budget),
    }
}

fn lagrangian() -> Outcome {
    let budget = Duration::from_secs(2);
    let (r, t, ok) = suite(SuiteKind::Lagrangian, budget);
    let coverage = has_check(&r, "L_int real", 1000)
        && has_check(&r, "L_A real", 1000)
        && has_check(&r, "F = 0 for constant A", 1000)
        && has_check(&r, "discrete S0 real", 1)
        && has_check(&r, "discrete S0 stable under grid doubling", 1);
    Outcome {
        passed: ok && coverage && r.tolerance <= 1e-11,
        detail: describe(&r, t, budget),
    }
}

fn chiral() -> Outcome {
    let budget = Duration::from_secs(2);
    let (r, t, ok) = suite(SuiteKind::Chiral, budget);
    let exact = gamma_algebra_check().max_residual == 0.0;
    let coverage = has_check(&r, "mapped CQ solutions solve the chiral equation", 1000)
        && has_check(&r, "chiral solutions map to CQ solutions", 1000);
    Outcome {
        passed: ok && exact && coverage && r.tolerance <= 1e-10,
        detail: describe(&r, t, budget),
    }
}

fn counting() -> Outcome {
    let real_dim = rest_frame_kernel_dimension(1.0, Species::Particle);
    let basis_rank = rest_frame_basis_rank(1.0, Species::Particle);
    let per_spin: Vec<(usize, usize)> = [0.5, -0.5]
        .iter()
        .map(|m| {
            (
                spin_eigenspace_dimension(*m, false),
                spin_eigenspace_dimension(*m, true),
            )
        })
        .collect();
    let ordinary = chiral_rest_nullity(1.0, Species::Particle);
    let restricted_total: usize = per_spin.iter().map(|p| p.1).sum();
    let passed = real_dim == 8
        && basis_rank == 8
        && per_spin
            .iter()
            .all(|&(full, restricted)| full == 2 && restricted == 1)
        && restricted_total == ordinary;
    Outcome {
        passed,
        detail: format!(
            "real kernel dim {real_dim}, basis rank {basis_rank}, complex dim per m_z (full, one subspace) {per_spin:?}, \
             ordinary Dirac rest nullity {ordinary}"
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("algebra", algebra),
        ("lorentz", lorentz),
        ("wave", wave),
        ("spin", spin),
        ("gauge", gauge),
        ("lagrangian", lagrangian),
        ("chiral equivalence", chiral),
        ("solution counting", counting),
    ];
    let mut failures = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {} {:<20} {status}  {}",
            n + 1,
            name,
            outcome.detail
        );
        failures += usize::from(!outcome.passed);
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
