//! `solidus`: batch front end for the verification workbench.
//!
//! Exit codes: 0 when everything requested passed, 1 when a check failed,
//! 2 for usage errors and unreadable input.

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use solidus::birational::{sarkisov_decompose, RationalMap, DEFAULT_MAX_STEPS};
use solidus::catalog::{self, CatalogKey, CatalogKind};
use solidus::exactmath::{CycNum, Form, ProjPoint, DEFAULT_CONDUCTOR};
use solidus::invariants::{invariant_basis, semi_invariant_split, LiftedGroup};
use solidus::netlab::{self, NetPoint};
use solidus::projgroup::{fingerprint, GroupDescriptor, MatrixGroup, DEFAULT_CAP};
use solidus::verify::{self, RunOptions, VerificationReport};

#[derive(Parser)]
#[command(name = "solidus", version, about = "Exact checks for monomial group actions and cubic Cremona involutions on P^3")]
struct Cli {
    /// Seed for every pseudo-random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// List, dump or self-check catalog entries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Order, fingerprint and catalog identification of a group.
    Group {
        /// Catalog key (`G_48_50` or `group:G_48_50`) or a JSON descriptor file.
        group: String,
    },
    /// Orbit of a point, or the census of the catalog seeds.
    Orbits {
        #[arg(long)]
        group: String,
        /// Comma-separated coordinates, e.g. `0,0,1,1` or `1,1,1,2*z^6`.
        #[arg(long)]
        point: Option<String>,
    },
    /// Basis of invariant forms of one degree.
    Invariants {
        /// Lifted group (`H_hat`, `G_hat`, ...), catalog group or descriptor file.
        #[arg(long)]
        group: String,
        #[arg(long)]
        degree: u32,
        /// Split into one-dimensional characters instead.
        #[arg(long)]
        characters: bool,
    },
    /// Members of the net of invariant quartics.
    Net {
        /// Parameter `a,b,c`.
        #[arg(long)]
        abc: Option<String>,
        /// Check every row of the singular-member table.
        #[arg(long)]
        table1: bool,
    },
    /// Decompose a birational self-map of P^3 into iota, iota', iota''.
    Decompose {
        /// JSON file `{ "degree": d, "components": [form, ...] }`.
        #[arg(long)]
        map: String,
        /// Points used for the round-trip comparison.
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Run verification suites.
    Verify {
        /// A suite id, or `diagram` for the quotient-diagram suite.
        target: Option<String>,
        /// Suite to run; repeatable.
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Run every suite.
        #[arg(long)]
        all: bool,
        /// Samples for the quotient-diagram check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Record wall-clock seconds per check.
        #[arg(long)]
        timings: bool,
        /// List suite ids and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Every key, optionally of one kind.
    List {
        #[arg(long)]
        kind: Option<String>,
    },
    /// One entry as JSON.
    Dump { key: String },
    /// Internal consistency of the tables.
    Selfcheck {
        #[arg(long)]
        kind: Option<String>,
    },
}

/// Outcome of a command: a value to print and whether its checks passed.
struct Output {
    value: Value,
    markdown: Option<String>,
    ok: bool,
}

impl Output {
    fn plain(value: Value) -> Output {
        Output { value, markdown: None, ok: true }
    }
}

type Failure = String;

/// The conductor used to read number literals; `SOLIDUS_CONDUCTOR` overrides it.
fn conductor() -> Result<u32, Failure> {
    match std::env::var("SOLIDUS_CONDUCTOR") {
        Ok(s) => {
            let c: u32 = s.trim().parse().map_err(|_| format!("SOLIDUS_CONDUCTOR must be a positive integer, got `{s}`"))?;
            if c == 0 || DEFAULT_CONDUCTOR % c != 0 {
                return Err(format!("SOLIDUS_CONDUCTOR={c} does not divide the working conductor {DEFAULT_CONDUCTOR}"));
            }
            Ok(c)
        }
        Err(_) => Ok(DEFAULT_CONDUCTOR),
    }
}

fn number(s: &str) -> Result<CycNum, Failure> {
    let c = conductor()?;
    CycNum::parse_with_default(s.trim(), c)
        .and_then(|x| x.promote(DEFAULT_CONDUCTOR))
        .map_err(|e| format!("bad number `{s}`: {e}"))
}

fn numbers(s: &str) -> Result<Vec<CycNum>, Failure> {
    s.split(',').map(number).collect()
}

fn read_json(path: &str) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    serde_json::from_str(&text).map_err(|e| format!("{path} is not valid JSON: {e}"))
}

fn strip_kind<'a>(key: &'a str, kind: &str) -> &'a str {
    key.strip_prefix(kind).and_then(|k| k.strip_prefix(':')).unwrap_or(key)
}

/// A catalog group by key, or a group closed from a descriptor file.
fn load_group(spec: &str) -> Result<Arc<MatrixGroup>, Failure> {
    if Path::new(spec).is_file() {
        let mut d: GroupDescriptor =
            serde_json::from_value(read_json(spec)?).map_err(|e| format!("bad group descriptor: {e}"))?;
        if d.conductor == DEFAULT_CONDUCTOR {
            d.conductor = conductor()?;
        }
        return d.closure(DEFAULT_CAP).map(Arc::new).map_err(|e| e.to_string());
    }
    catalog::group(strip_kind(spec, "group")).map_err(|e| e.to_string())
}

fn load_lifted(spec: &str) -> Result<LiftedGroup, Failure> {
    if Path::new(spec).is_file() {
        let g = load_group(spec)?;
        return LiftedGroup::from_projective(spec, g.generators()).map_err(|e| e.to_string());
    }
    LiftedGroup::named(strip_kind(spec, "group")).map_err(|e| e.to_string())
}

fn parse_kind(kind: Option<&str>) -> Result<Option<CatalogKind>, Failure> {
    kind.map(|k| k.parse::<CatalogKind>().map_err(|e| e.to_string())).transpose()
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn cmd_catalog(action: &CatalogAction) -> Result<Output, Failure> {
    match action {
        CatalogAction::List { kind } => {
            let keys = match parse_kind(kind.as_deref())? {
                Some(k) => CatalogKey::of_kind(k),
                None => CatalogKey::all(),
            };
            Ok(Output::plain(json!(keys.iter().map(|k| k.to_string()).collect::<Vec<_>>())))
        }
        CatalogAction::Dump { key } => {
            let key: CatalogKey = key.parse().map_err(|e: catalog::CatalogError| e.to_string())?;
            Ok(Output::plain(to_value(&catalog::load(&key).map_err(|e| e.to_string())?)))
        }
        CatalogAction::Selfcheck { kind } => {
            let report = catalog::catalog_selfcheck(parse_kind(kind.as_deref())?);
            Ok(Output { value: to_value(&report), markdown: None, ok: report.passed() })
        }
    }
}

fn cmd_group(spec: &str) -> Result<Output, Failure> {
    let g = load_group(spec)?;
    let fp = fingerprint(&g);
    let matches: Vec<&str> = catalog::groups::GROUP_ORDERS
        .iter()
        .filter(|(_, order)| *order == g.order())
        .filter(|(name, _)| catalog::group(name).map(|c| fingerprint(&c) == fp).unwrap_or(false))
        .map(|(name, _)| *name)
        .collect();
    let base = catalog::points::coordinate_points();
    let action = g.sigma4_action(&base).ok().map(|(image, kernel)| json!({ "image_size": image, "kernel_order": kernel.order() }));
    Ok(Output::plain(json!({
        "order": g.order(),
        "fingerprint": fp,
        "fingerprint_matches": matches,
        "coordinate_points_action": action,
    })))
}

fn cmd_orbits(group: &str, point: Option<&str>) -> Result<Output, Failure> {
    let g = load_group(group)?;
    let orbit_json = |p: &ProjPoint| -> Result<Value, Failure> {
        let o = g.orbit(p).map_err(|e| e.to_string())?;
        Ok(json!({
            "representative": o.representative,
            "length": o.length,
            "stabilizer_order": o.stabilizer_order,
            "points": o.points,
        }))
    };
    match point {
        Some(text) => {
            let p = ProjPoint::new(numbers(text)?).map_err(|e| e.to_string())?;
            Ok(Output::plain(orbit_json(&p)?))
        }
        None => {
            let mut census = serde_json::Map::new();
            for name in catalog::points::POINT_NAMES {
                let o = g.orbit(&catalog::point(name).expect("catalog seed")).map_err(|e| e.to_string())?;
                census.insert(name.to_string(), json!({ "length": o.length, "stabilizer_order": o.stabilizer_order }));
            }
            Ok(Output::plain(Value::Object(census)))
        }
    }
}

fn cmd_invariants(group: &str, degree: u32, characters: bool) -> Result<Output, Failure> {
    let g = load_lifted(group)?;
    if characters {
        let split = semi_invariant_split(&g, degree).map_err(|e| e.to_string())?;
        return Ok(Output::plain(to_value(&split)));
    }
    let basis = invariant_basis(&g, degree).map_err(|e| e.to_string())?;
    Ok(Output::plain(json!({ "group_order": g.order(), "degree": degree, "dimension": basis.len(), "basis": basis })))
}

fn cmd_net(abc: Option<&str>, table1: bool) -> Result<Output, Failure> {
    let mut out = serde_json::Map::new();
    let mut ok = true;
    if let Some(text) = abc {
        let v = numbers(text)?;
        if v.len() != 3 {
            return Err(format!("expected a,b,c, got `{text}`"));
        }
        let p = NetPoint::new(v[0].clone(), v[1].clone(), v[2].clone()).map_err(|e| e.to_string())?;
        let f = netlab::net_member(&p);
        let mut candidates = Vec::new();
        for (_, pts) in netlab::candidate_orbits().map_err(|e| e.to_string())? {
            candidates.extend(pts);
        }
        let singular = netlab::singular_points_among(&f, &candidates).map_err(|e| e.to_string())?;
        out.insert(
            "member".into(),
            json!({
                "parameter": p.to_string(),
                "form": f,
                "discriminant": netlab::net_discriminant(&p),
                "singular_candidates": singular,
            }),
        );
    }
    if table1 {
        let rows = netlab::verify_table1().map_err(|e| e.to_string())?;
        ok &= rows.iter().all(|r| r.pass);
        out.insert("table".into(), to_value(&rows));
    }
    if out.is_empty() {
        return Err("give --abc a,b,c and/or --table1".into());
    }
    Ok(Output { value: Value::Object(out), markdown: None, ok })
}

fn read_map(path: &str) -> Result<RationalMap, Failure> {
    let v = read_json(path)?;
    let comps = v["components"].as_array().ok_or("the map file needs a `components` array")?;
    let forms = comps
        .iter()
        .map(|c| {
            let text = c.as_str().ok_or("components must be strings")?;
            Form::parse(text, 4).map_err(|e| format!("bad component `{text}`: {e}"))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    if forms.len() != 4 {
        return Err(format!("a self-map of P^3 needs 4 components, got {}", forms.len()));
    }
    if let Some(d) = v.get("degree").and_then(Value::as_u64) {
        if forms.iter().any(|f| !f.is_zero() && f.degree() as u64 != d) {
            return Err(format!("components are not all of degree {d}"));
        }
    }
    RationalMap::new(forms).map_err(|e| e.to_string())
}

fn cmd_decompose(path: &str, samples: usize, seed: u64) -> Result<Output, Failure> {
    let m = read_map(path)?;
    match sarkisov_decompose(&m, DEFAULT_MAX_STEPS) {
        Ok(d) => {
            let round_trip = d.round_trip(&m, samples, seed).map_err(|e| e.to_string())?;
            Ok(Output {
                value: json!({
                    "degree": m.degree(),
                    "word": d.word.letters,
                    "tail": d.word.tail,
                    "ledgers": d.ledgers,
                    "round_trip": round_trip,
                }),
                markdown: None,
                ok: round_trip,
            })
        }
        Err(e) => Ok(Output { value: json!({ "degree": m.degree(), "error": e.to_string() }), markdown: None, ok: false }),
    }
}

fn report_output(r: VerificationReport) -> Output {
    Output { value: to_value(&r), markdown: Some(r.to_markdown()), ok: r.passed() }
}

fn cmd_verify(
    target: Option<&str>,
    suites: &[String],
    all: bool,
    opts: RunOptions,
    list: bool,
) -> Result<Output, Failure> {
    if list {
        return Ok(Output::plain(json!(verify::SUITES)));
    }
    if all {
        return Ok(report_output(verify::run_all(&opts)));
    }
    let mut wanted: Vec<String> = suites.to_vec();
    if let Some(t) = target {
        wanted.push(if t == "diagram" { "fano-enriques-maps".into() } else { t.to_string() });
    }
    match wanted.as_slice() {
        [] => Err("give a suite id, --suite <id> or --all".into()),
        [one] => verify::run_suite(one, &opts).map(report_output).map_err(|e| e.to_string()),
        many => {
            let mut checks = Vec::new();
            for s in many {
                checks.extend(verify::run_suite(s, &opts).map_err(|e| e.to_string())?.checks);
            }
            checks.sort_by(|a, b| a.id.cmp(&b.id));
            Ok(report_output(VerificationReport { suite: many.join(","), seed: opts.seed, checks }))
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    conductor()?;
    match &cli.command {
        Command::Catalog { action } => cmd_catalog(action),
        Command::Group { group } => cmd_group(group),
        Command::Orbits { group, point } => cmd_orbits(group, point.as_deref()),
        Command::Invariants { group, degree, characters } => cmd_invariants(group, *degree, *characters),
        Command::Net { abc, table1 } => cmd_net(abc.as_deref(), *table1),
        Command::Decompose { map, samples } => cmd_decompose(map, *samples, cli.seed),
        Command::Verify { target, suites, all, samples, timings, list } => cmd_verify(
            target.as_deref(),
            suites,
            *all,
            RunOptions { seed: cli.seed, timings: *timings, diagram_samples: *samples },
            *list,
        ),
    }
}

/// Nested bullet lists for values without a dedicated markdown view.
fn markdown(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}- **{k}**\n"));
                        markdown(x, depth + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- **{k}**: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match x {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        markdown(x, depth + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar(x))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => format!("`{s}`"),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.value).expect("serializable") + "\n",
                Format::Md => out.markdown.clone().unwrap_or_else(|| {
                    let mut s = String::new();
                    markdown(&out.value, 0, &mut s);
                    s
                }),
            };
            // A closed pipe (`solidus ... | head`) is not an error worth a panic.
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
