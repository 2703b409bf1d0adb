//! Suite reports and their human and NDJSON renderings.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    Algebra,
    Lorentz,
    Dirac,
    Spin,
    Gauge,
    Lagrangian,
    Chiral,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 7] = [
        SuiteKind::Algebra,
        SuiteKind::Lorentz,
        SuiteKind::Dirac,
        SuiteKind::Spin,
        SuiteKind::Gauge,
        SuiteKind::Lagrangian,
        SuiteKind::Chiral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::Algebra => "algebra",
            SuiteKind::Lorentz => "lorentz",
            SuiteKind::Dirac => "dirac",
            SuiteKind::Spin => "spin",
            SuiteKind::Gauge => "gauge",
            SuiteKind::Lagrangian => "lagrangian",
            SuiteKind::Chiral => "chiral",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        SuiteKind::ALL.into_iter().find(|k| k.name() == name)
    }

    /// RNG stream index, so suites draw independent sequences from one seed.
    pub fn stream(self) -> u64 {
        SuiteKind::ALL.iter().position(|k| *k == self).unwrap() as u64
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            SuiteKind::Algebra | SuiteKind::Spin => 1e-12,
            SuiteKind::Gauge | SuiteKind::Lagrangian => 1e-11,
            SuiteKind::Lorentz | SuiteKind::Dirac | SuiteKind::Chiral => 1e-10,
        }
    }
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bound {
    /// `value ≤ limit`
    Ceiling,
    /// `value ≥ limit`
    Floor,
}

/// One named property inside a suite.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub cases: usize,
    pub value: f64,
    pub limit: f64,
    pub bound: Bound,
}

impl CheckLine {
    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::Ceiling => self.value <= self.limit,
            Bound::Floor => self.value >= self.limit,
        }
    }

    /// The value expressed on the suite scale: at most `tol` iff passed.
    pub fn normalized(&self, tol: f64) -> f64 {
        if self.value.is_nan() {
            return f64::INFINITY;
        }
        match self.bound {
            Bound::Ceiling => self.value * tol / self.limit,
            Bound::Floor if self.value <= 0.0 => f64::INFINITY,
            Bound::Floor => tol * self.limit / self.value,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub suite: SuiteKind,
    pub cases: usize,
    pub max_residual: f64,
    pub status: Status,
    pub seed: u64,
    #[serde(skip)]
    pub tolerance: f64,
    #[serde(skip)]
    pub elapsed_ms: u128,
    #[serde(skip)]
    pub checks: Vec<CheckLine>,
}

impl CheckReport {
    pub fn new(
        suite: SuiteKind,
        seed: u64,
        tolerance: f64,
        checks: Vec<CheckLine>,
        elapsed_ms: u128,
    ) -> Self {
        let max_residual = checks
            .iter()
            .map(|c| c.normalized(tolerance))
            .fold(0.0, f64::max);
        let cases = checks.iter().map(|c| c.cases).sum();
        let status =
            Status::from_bool(checks.iter().all(CheckLine::passed) && max_residual <= tolerance);
        CheckReport {
            suite,
            cases,
            max_residual,
            status,
            seed,
            tolerance,
            elapsed_ms,
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn failing_checks(&self) -> impl Iterator<Item = &CheckLine> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Multi-line table: one summary line, then one line per check.
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{:<11} {:<4} cases={:<6} max_residual={:.3e} tol={:.1e} elapsed={}ms\n",
            self.suite, self.status, self.cases, self.max_residual, self.tolerance, self.elapsed_ms
        );
        for c in &self.checks {
            let op = match c.bound {
                Bound::Ceiling => "<=",
                Bound::Floor => ">=",
            };
            out.push_str(&format!(
                "    {:<4} {:<48} {:>6}  {:.3e} {op} {:.1e}\n",
                Status::from_bool(c.passed()),
                c.name,
                c.cases,
                c.value,
                c.limit
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(value: f64, limit: f64, bound: Bound) -> CheckLine {
        CheckLine {
            name: "x".into(),
            cases: 1,
            value,
            limit,
            bound,
        }
    }

    #[test]
    fn normalization_matches_pass_state() {
        let tol = 1e-10;
        for c in [
            line(5e-9, 1e-8, Bound::Ceiling),
            line(2e-8, 1e-8, Bound::Ceiling),
            line(0.7, 1e-3, Bound::Floor),
            line(1e-4, 1e-3, Bound::Floor),
            line(0.0, 1e-3, Bound::Floor),
        ] {
            assert_eq!(c.passed(), c.normalized(tol) <= tol, "{c:?}");
        }
    }

    #[test]
    fn json_schema() {
        let r = CheckReport::new(
            SuiteKind::Chiral,
            3,
            1e-10,
            vec![line(0.0, 1e-10, Bound::Ceiling)],
            12,
        );
        assert_eq!(
            r.to_json(),
            r#"{"suite":"chiral","cases":1,"max_residual":0.0,"status":"pass","seed":3}"#
        );
    }

    #[test]
    fn names_round_trip() {
        for k in SuiteKind::ALL {
            assert_eq!(SuiteKind::from_name(k.name()), Some(k));
        }
    }
}
