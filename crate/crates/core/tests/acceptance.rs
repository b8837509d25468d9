//! One line per acceptance criterion, then a nonzero exit if any failed.
//!
//! Runs without the libtest harness so the lines show up in plain
//! `cargo test` output.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use solidus::catalog::{self, groups, points};
use solidus::exactmath::consts::int;
use solidus::exactmath::ProjPoint;
use solidus::projgroup::ProjMap;
use solidus::verify::{run_suite, RunOptions, Status, VerificationReport};

struct Line {
    ok: bool,
    text: String,
}

fn suite(name: &str, seed: u64) -> VerificationReport {
    run_suite(name, &RunOptions { seed, ..RunOptions::default() }).expect("known suite")
}

fn summary(r: &VerificationReport) -> String {
    let failed: Vec<&str> = r.failures().iter().map(|c| c.id.as_str()).collect();
    if failed.is_empty() {
        format!("{}/{} checks", r.count(Status::Pass), r.checks.len())
    } else {
        format!("{}/{} checks, failing {failed:?}", r.count(Status::Pass), r.checks.len())
    }
}

/// Orbit by breadth-first search over generator images, independent of the
/// group enumeration.
fn naive_orbit_length(gens: &[ProjMap], p: &ProjPoint) -> usize {
    let mut seen = HashSet::from([p.clone()]);
    let mut frontier = vec![p.clone()];
    while let Some(q) = frontier.pop() {
        for g in gens {
            let r = g.apply(&q).expect("invertible");
            if seen.insert(r.clone()) {
                frontier.push(r);
            }
        }
    }
    seen.len()
}

/// Group order by breadth-first search on words in the generators.
fn naive_order(gens: &[ProjMap]) -> usize {
    let id = ProjMap::identity(4);
    let mut seen = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

fn criterion(n: u32, title: &str, budget: Duration, body: impl FnOnce() -> (bool, String)) -> Line {
    let start = Instant::now();
    let (ok, detail) = body();
    let elapsed = start.elapsed();
    let in_time = elapsed <= budget;
    let ok = ok && in_time;
    let timing = if in_time {
        format!("{:.1}s", elapsed.as_secs_f64())
    } else {
        format!("{:.1}s, over the {}s budget", elapsed.as_secs_f64(), budget.as_secs())
    };
    let text = format!("criterion {n:>2} {}: {title} ({detail}; {timing})", if ok { "PASS" } else { "FAIL" });
    println!("{text}");
    Line { ok, text }
}

fn from_suite(name: &str) -> (bool, String) {
    let r = suite(name, 0);
    (r.passed(), summary(&r))
}

fn main() {
    let secs = Duration::from_secs;
    let mut lines = Vec::new();

    lines.push(criterion(1, "group orders", secs(10), || {
        let r = suite("group-orders", 0);
        let oracle = [
            ("G_48_50", 48),
            ("G_96_227", 96),
            ("G_192_185", 192),
            ("G_324_160prime", 324),
            ("G_648_704", 648),
            ("G_576_8654", 576),
        ];
        let oracle_ok = oracle.iter().all(|(n, o)| naive_order(&groups::generators(n).unwrap()) == *o);
        (r.passed() && r.checks.len() == 15 && oracle_ok, format!("{}, breadth-first oracle agrees: {oracle_ok}", summary(&r)))
    }));

    lines.push(criterion(2, "orbit census under G_48_50", secs(5), || {
        let r = suite("orbit-census", 0);
        let gens = groups::generators("G_48_50").unwrap();
        let want = [4, 4, 4, 12, 12, 12, 12, 16, 16];
        let mut oracle_ok = points::POINT_NAMES
            .iter()
            .zip(want)
            .all(|(n, w)| naive_orbit_length(&gens, &points::seed(n).unwrap()) == w);
        for t in [2, 3, -2] {
            oracle_ok &= naive_orbit_length(&gens, &points::sigma16_t(&int(t))) == 16;
        }
        (r.passed() && oracle_ok, format!("{}, breadth-first oracle agrees: {oracle_ok}", summary(&r)))
    }));

    lines.push(criterion(3, "orbit probe under G_192_185", secs(30), || {
        let r = suite("orbit-probe-192", 0);
        let gens = groups::generators("G_192_185").unwrap();
        let sigma4 = naive_orbit_length(&gens, &catalog::point("Sigma4").unwrap());
        let probes = r.with_prefix("orbit-probe-192/").count() - 1;
        (r.passed() && sigma4 == 4 && probes == 12, format!("{}, {probes} probes, oracle Sigma4 length {sigma4}", summary(&r)))
    }));

    lines.push(criterion(4, "invariant quartics and their characters", secs(60), || from_suite("quartic-invariants")));
    lines.push(criterion(5, "quartic net discriminant and singular members", secs(60), || from_suite("quartic-net")));
    lines.push(criterion(6, "intersections of the line configurations", secs(30), || {
        let r = suite("line-intersections", 0);
        (r.passed() && r.checks.len() >= 6, summary(&r))
    }));
    lines.push(criterion(7, "maps to the Fano-Enriques threefold", secs(60), || from_suite("fano-enriques-maps")));
    lines.push(criterion(8, "cubic involutions, conjugation and the degree law", secs(180), || from_suite("cremona-algebra")));
    lines.push(criterion(9, "reduced words decompose back to themselves", secs(600), || {
        let r = suite("sarkisov-words", 0);
        let counts = [1, 2, 3].map(|l| r.with_prefix(&format!("sarkisov-words/len{l}/")).count());
        (r.passed() && counts == [3, 6, 6], format!("{}, words per length {counts:?}", summary(&r)))
    }));
    lines.push(criterion(10, "invariant curves and pencils", secs(60), || from_suite("invariant-curves")));
    lines.push(criterion(11, "property suites under seeds 0, 1, 2", secs(300), || {
        let reports: Vec<VerificationReport> = (0..3).map(|s| suite("properties", s)).collect();
        let ok = reports.iter().all(|r| r.passed());
        let parts: Vec<String> = reports.iter().map(|r| format!("seed {}: {}", r.seed, summary(r))).collect();
        (ok, parts.join(", "))
    }));

    let failed: Vec<&Line> = lines.iter().filter(|l| !l.ok).collect();
    if failed.is_empty() {
        println!("all {} criteria pass", lines.len());
    } else {
        for l in &failed {
            eprintln!("{}", l.text);
        }
        std::process::exit(1);
    }
}
