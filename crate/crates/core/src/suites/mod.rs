//! Randomized invariant suites behind the `cqdirac run` command.

use std::time::Instant;

use rand_chacha::ChaCha8Rng;

use crate::report::{Bound, CheckLine, CheckReport, SuiteKind};
use crate::sampling::suite_rng;

mod algebra;
mod chiral;
mod dirac;
mod gauge;
mod lagrangian;
mod lorentz;
pub mod oracle;
mod spin;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub cases: usize,
    /// Overrides the suite's default tolerance.
    pub tolerance: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            cases: 1000,
            tolerance: None,
        }
    }
}

/// Running maximum that keeps NaN once seen.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Worst(pub f64);

impl Worst {
    pub fn add(&mut self, v: f64) {
        if self.0.is_nan() {
            return;
        }
        if v.is_nan() || v > self.0 {
            self.0 = v;
        }
    }
}

/// Running minimum that keeps NaN once seen.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Least(pub f64);

impl Default for Least {
    fn default() -> Self {
        Least(f64::INFINITY)
    }
}

impl Least {
    pub fn add(&mut self, v: f64) {
        if self.0.is_nan() {
            return;
        }
        if v.is_nan() || v < self.0 {
            self.0 = v;
        }
    }
}

pub(crate) struct SuiteContext {
    pub rng: ChaCha8Rng,
    pub cases: usize,
    pub tol: f64,
    checks: Vec<CheckLine>,
}

impl SuiteContext {
    fn new(kind: SuiteKind, config: &RunConfig) -> Self {
        SuiteContext {
            rng: suite_rng(config.seed, kind.stream()),
            cases: config.cases,
            tol: config.tolerance.unwrap_or(kind.default_tolerance()),
            checks: Vec::new(),
        }
    }

    /// `value ≤ factor·tol`.
    pub fn ceiling(&mut self, name: &str, cases: usize, value: f64, factor: f64) {
        self.checks.push(CheckLine {
            name: name.to_string(),
            cases,
            value,
            limit: factor * self.tol,
            bound: Bound::Ceiling,
        });
    }

    /// `value ≥ limit`, independent of the suite tolerance.
    pub fn floor(&mut self, name: &str, cases: usize, value: f64, limit: f64) {
        self.checks.push(CheckLine {
            name: name.to_string(),
            cases,
            value,
            limit,
            bound: Bound::Floor,
        });
    }

    /// A count of failed predicates; must be zero.
    pub fn failures(&mut self, name: &str, cases: usize, failed: usize) {
        self.ceiling(name, cases, failed as f64, 1.0);
    }
}

pub fn run_suite(kind: SuiteKind, config: &RunConfig) -> CheckReport {
    let start = Instant::now();
    let mut ctx = SuiteContext::new(kind, config);
    match kind {
        SuiteKind::Algebra => algebra::run(&mut ctx),
        SuiteKind::Lorentz => lorentz::run(&mut ctx),
        SuiteKind::Dirac => dirac::run(&mut ctx),
        SuiteKind::Spin => spin::run(&mut ctx),
        SuiteKind::Gauge => gauge::run(&mut ctx),
        SuiteKind::Lagrangian => lagrangian::run(&mut ctx),
        SuiteKind::Chiral => chiral::run(&mut ctx),
    }
    let elapsed = start.elapsed().as_millis();
    CheckReport::new(kind, config.seed, ctx.tol, ctx.checks, elapsed)
}

pub fn run_all(config: &RunConfig) -> Vec<CheckReport> {
    SuiteKind::ALL
        .iter()
        .map(|k| run_suite(*k, config))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accumulators_keep_nan() {
        let mut w = Worst::default();
        w.add(1.0);
        w.add(f64::NAN);
        w.add(5.0);
        assert!(w.0.is_nan());

        let mut l = Least::default();
        l.add(2.0);
        l.add(0.5);
        assert_eq!(l.0, 0.5);
        l.add(f64::NAN);
        l.add(0.1);
        assert!(l.0.is_nan());
    }

    #[test]
    fn every_suite_passes_with_fewer_cases() {
        for report in run_all(&RunConfig {
            cases: 100,
            ..RunConfig::default()
        }) {
            assert!(report.passed(), "{}", report.to_table());
        }
    }
}
