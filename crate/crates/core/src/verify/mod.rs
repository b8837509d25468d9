//! Verification suites: named groups of checks, each with a stable id, a
//! short statement of the claim it checks and a pass/fail/skip status.
//!
//! Checks run in the rayon pool and reports are sorted by id, so completion
//! order never shows in the output. Wall-clock times are only recorded on
//! request; without them, identical invocations give byte-identical JSON.

use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

mod properties;
mod suites;
mod words;

pub use words::{reduced_words, word_run, WordRun};

pub(crate) type CheckError = Box<dyn std::error::Error + Send + Sync>;

/// `Ok((passed, detail))`, or an error that counts as a failure.
pub(crate) type Outcome = Result<(bool, String), CheckError>;

/// Every suite id, in the order `--all` runs them.
pub const SUITES: [&str; 11] = [
    "group-orders",
    "orbit-census",
    "orbit-probe-192",
    "quartic-invariants",
    "quartic-net",
    "line-intersections",
    "fano-enriques-maps",
    "cremona-algebra",
    "sarkisov-words",
    "invariant-curves",
    "properties",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    /// The mathematical claim being checked, in words.
    pub anchor: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    /// No check failed. Skipped checks do not count against a report.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    /// Checks whose id starts with `prefix`.
    pub fn with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a CheckResult> + 'a {
        self.checks.iter().filter(move |c| c.id.starts_with(prefix))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# Verification: {} (seed {})\n", self.suite, self.seed);
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} skipped\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip)
        );
        let timed = self.checks.iter().any(|c| c.seconds.is_some());
        if timed {
            out.push_str("| id | status | claim | detail | seconds |\n|---|---|---|---|---|\n");
        } else {
            out.push_str("| id | status | claim | detail |\n|---|---|---|---|\n");
        }
        let cell = |s: &str| s.replace('|', "\\|").replace('\n', " ");
        for c in &self.checks {
            let _ = write!(out, "| `{}` | {} | {} | {} |", c.id, c.status.as_str(), cell(&c.anchor), cell(&c.detail));
            if let Some(s) = c.seconds {
                let _ = write!(out, " {s:.3} |");
            }
            out.push('\n');
        }
        out
    }
}

/// A check waiting to run.
pub(crate) struct Check {
    id: String,
    anchor: String,
    run: Box<dyn Fn() -> Outcome + Send + Sync>,
}

impl Check {
    pub(crate) fn new(
        id: impl Into<String>,
        anchor: impl Into<String>,
        run: impl Fn() -> Outcome + Send + Sync + 'static,
    ) -> Check {
        Check { id: id.into(), anchor: anchor.into(), run: Box::new(run) }
    }

    /// A check that is reported but not run.
    pub(crate) fn skipped(id: impl Into<String>, anchor: impl Into<String>, reason: impl Into<String>) -> Check {
        let reason = reason.into();
        Check::new(id, anchor, move || Err(Skipped(reason.clone()).into()))
    }

    fn execute(&self, timed: bool) -> CheckResult {
        let start = Instant::now();
        let (status, detail) = match catch_unwind(AssertUnwindSafe(|| (self.run)())) {
            Ok(Ok((true, d))) => (Status::Pass, d),
            Ok(Ok((false, d))) => (Status::Fail, d),
            Ok(Err(e)) => match e.downcast_ref::<Skipped>() {
                Some(s) => (Status::Skip, s.0.clone()),
                None => (Status::Fail, format!("error: {e}")),
            },
            Err(p) => {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "unknown panic".into());
                (Status::Fail, format!("panic: {msg}"))
            }
        };
        CheckResult {
            id: self.id.clone(),
            anchor: self.anchor.clone(),
            status,
            detail,
            seconds: timed.then(|| start.elapsed().as_secs_f64()),
        }
    }
}

#[derive(Debug)]
struct Skipped(String);

impl std::fmt::Display for Skipped {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Skipped {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("unknown suite `{0}`; known suites: {known}", known = SUITES.join(", "))]
    UnknownSuite(String),
}

/// Options shared by every suite.
#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub seed: u64,
    /// Record wall-clock seconds per check (makes output nondeterministic).
    pub timings: bool,
    /// Number of `V2` samples for the diagram check.
    pub diagram_samples: usize,
}

impl Default for RunOptions {
    fn default() -> RunOptions {
        RunOptions { seed: 0, timings: false, diagram_samples: 100 }
    }
}

pub(crate) fn checks_of(suite: &str, opts: &RunOptions) -> Result<Vec<Check>, VerifyError> {
    let seed = opts.seed;
    Ok(match suite {
        "group-orders" => suites::group_orders(),
        "orbit-census" => suites::orbit_census(),
        "orbit-probe-192" => suites::orbit_probe_192(),
        "quartic-invariants" => suites::quartic_invariants(),
        "quartic-net" => suites::quartic_net(seed),
        "line-intersections" => suites::line_intersections(),
        "fano-enriques-maps" => suites::fano_enriques_maps(seed, opts.diagram_samples),
        "cremona-algebra" => suites::cremona_algebra(seed),
        "sarkisov-words" => suites::sarkisov_words(seed),
        "invariant-curves" => suites::invariant_curves(),
        "properties" => properties::checks(seed),
        other => return Err(VerifyError::UnknownSuite(other.to_string())),
    })
}

fn run(label: &str, checks: Vec<Check>, opts: &RunOptions) -> VerificationReport {
    let mut results: Vec<CheckResult> = checks.par_iter().map(|c| c.execute(opts.timings)).collect();
    results.sort_by(|a, b| a.id.cmp(&b.id));
    VerificationReport { suite: label.to_string(), seed: opts.seed, checks: results }
}

pub fn run_suite(suite: &str, opts: &RunOptions) -> Result<VerificationReport, VerifyError> {
    Ok(run(suite, checks_of(suite, opts)?, opts))
}

/// Every suite in one report.
pub fn run_all(opts: &RunOptions) -> VerificationReport {
    let checks = SUITES.iter().flat_map(|s| checks_of(s, opts).expect("listed suites exist")).collect();
    run("all", checks, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_are_sorted_and_catch_panics() {
        let checks = vec![
            Check::new("b", "second", || Ok((true, "fine".into()))),
            Check::new("a", "first", || panic!("boom")),
            Check::skipped("c", "third", "not applicable"),
        ];
        let r = run("demo", checks, &RunOptions::default());
        let ids: Vec<_> = r.checks.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["a", "b", "c"]);
        assert_eq!(r.checks[0].status, Status::Fail);
        assert!(r.checks[0].detail.contains("boom"));
        assert_eq!(r.checks[2].status, Status::Skip);
        assert!(!r.passed());
        assert!(!r.to_json().contains("seconds"));
        assert!(r.to_markdown().contains("| `b` | pass |"));
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", &RunOptions::default()), Err(VerifyError::UnknownSuite(_))));
    }
}
