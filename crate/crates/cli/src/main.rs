use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use descent_core::descent::{artin_functor, artin_inverse, cartesian_iso, descend, trace_axioms, weak_projection};
use descent_core::io::{self, Problem};
use descent_core::matcat::{validate_setting, DescentSetting, Side};
use descent_core::report::{CheckItem, Report};
use descent_core::settings::find_isomorphism;
use descent_core::tannaka::exact_sequence_check;
use descent_core::{selftest, Error};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_DATUM: u8 = 3;

#[derive(Parser)]
#[command(name = "galdesc", version, about = "Exact Galois descent checks on matrix models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Where to write the report (or, for `descend`, the descended object).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 10)]
    cases: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the setting of a problem file: triangle identities, cartesianity, traces,
    /// weak projection, and the datum if one is given.
    Verify { path: PathBuf },
    /// Descend the datum of a problem file.
    Descend { path: PathBuf },
    /// Apply the Artin functor or its inverse to the object or representation in a file.
    Artin { path: PathBuf },
    /// Check the exact sequence `1 -> H -> G -> Γ -> 1` for a group file or catalogue name.
    Exactseq { groups: String },
    /// Run the seeded property suite.
    Selftest,
}

/// An exit code with an optional report to print.
struct Outcome {
    report: Option<Report>,
    code: u8,
    side_output: Option<Value>,
}

fn input_error(msg: impl std::fmt::Display) -> Outcome {
    eprintln!("galdesc: input error: {msg}");
    Outcome { report: None, code: EXIT_INPUT, side_output: None }
}

fn finish(report: Report) -> Outcome {
    let code = if report.passed() { 0 } else { EXIT_FAIL };
    Outcome { report: Some(report), code, side_output: None }
}

fn load_problem(path: &Path) -> Result<Problem, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    io::problem_from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn error_witness(s: &dyn DescentSetting, e: &Error) -> Value {
    match e {
        Error::CocycleViolation { g, h } => {
            let gamma = s.gamma();
            json!({"error": e.to_string(), "g": gamma.name(*g), "h": gamma.name(*h)})
        }
        other => json!({"error": other.to_string()}),
    }
}

fn run_check(name: &str, s: &dyn DescentSetting, report: &mut Report) {
    let mut items = Vec::new();
    match name {
        "setting" => {
            let v = validate_setting(s, 3);
            items.push(CheckItem::from_bool("setting", v.passed(), || json!({"failures": v.failures})));
        }
        "cartesian" => {
            for c in s.sample_objects_upper(3) {
                let r = cartesian_iso(s, &c).map(|u| (&s.counit_map(&c) * &u.section).is_identity());
                let label = format!("cartesian at upper object of dim {}", c.dim);
                items.push(match r {
                    Ok(ok) => CheckItem::from_bool(label, ok, || json!("ε ∘ σ is not the identity")),
                    Err(e) => CheckItem::fail(label, error_witness(s, &e)),
                });
            }
        }
        "trace" => {
            for a in s.sample_objects(3) {
                let label = format!("trace axioms at base object of dim {}", a.dim);
                items.push(match trace_axioms(s, &a) {
                    Ok(t) => CheckItem::from_bool(label, t.multiplication && t.sum_map && t.projection_identity, || {
                        json!({"multiplication": t.multiplication, "sum_map": t.sum_map, "projection": t.projection_identity})
                    }),
                    Err(e) => CheckItem::fail(label, error_witness(s, &e)),
                });
            }
        }
        "weak_projection" => {
            for a in s.sample_objects(3) {
                let label = format!("weak projection at base object of dim {}", a.dim);
                items.push(match weak_projection(s, &a) {
                    Ok(_) => CheckItem::pass(label),
                    Err(e) => CheckItem::fail(label, error_witness(s, &e)),
                });
            }
        }
        other => items.push(CheckItem::fail(format!("unknown check {other:?}"), json!("not a check name"))),
    }
    report.extend(items);
}

fn cmd_verify(path: &Path) -> Outcome {
    let problem = match load_problem(path) {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    let s = problem.setting.as_dyn();
    let mut report = Report::new("verify", None);
    let checks = problem.checks.clone().unwrap_or_else(|| {
        let mut c: Vec<String> =
            ["setting", "cartesian", "trace", "weak_projection"].iter().map(|s| s.to_string()).collect();
        if problem.b.is_some() {
            c.push("datum".into());
        }
        c
    });
    for name in &checks {
        if name == "datum" {
            let item = match problem.datum() {
                Ok(d) => match d.validate(s) {
                    Ok(()) => CheckItem::pass("datum"),
                    Err(e) => CheckItem::fail("datum", error_witness(s, &e)),
                },
                Err(e) => CheckItem::fail("datum", json!({"error": e.to_string()})),
            };
            report.push(item);
        } else {
            run_check(name, s, &mut report);
        }
    }
    finish(report)
}

fn cmd_descend(path: &Path) -> Outcome {
    let problem = match load_problem(path) {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    let s = problem.setting.as_dyn();
    let datum = match problem.datum() {
        Ok(d) => d,
        Err(e) => return input_error(e),
    };
    let mut report = Report::new("descend", None);
    if let Err(e) = datum.validate(s) {
        report.push(CheckItem::fail("datum", error_witness(s, &e)));
        return Outcome { report: Some(report), code: EXIT_DATUM, side_output: None };
    }
    report.push(CheckItem::pass("datum"));
    let r = match descend(s, &datum) {
        Ok(r) => r,
        Err(e) => {
            report.push(CheckItem::fail("descend", error_witness(s, &e)));
            return finish(report);
        }
    };
    let round_trip = (&r.inverse * &r.iso).is_identity()
        && (&r.iso * &r.inverse).is_identity()
        && r.idempotent.is_idempotent()
        && s.gamma().elements().all(|g| &r.iso * &s.comparison(g, &r.object) == &datum.b[g] * &s.twist_mor(g, &r.iso));
    report.push(CheckItem::from_bool("round trip", round_trip, || json!("f*B -> C is not an isomorphism of data")));
    if let Some(a) = &problem.base_object {
        let iso = find_isomorphism(s, Side::Base, &r.object, a);
        report.push(CheckItem::from_bool(
            "isomorphic to the given base object",
            iso.is_some(),
            || json!({"descended_dim": r.object.dim, "given_dim": a.dim}),
        ));
    }
    let output = json!({
        "setting": problem.setting.kind(),
        "object": io::setting_object_to_json(&problem.setting, &r.object, false),
        "iso": io::matrix_to_json(&r.iso),
        "inverse": io::matrix_to_json(&r.inverse),
        "idempotent": io::matrix_to_json(&r.idempotent),
        "inclusion": io::matrix_to_json(&r.inclusion),
        "projection": io::matrix_to_json(&r.projection),
    });
    report.outputs.insert("dim".into(), json!(r.object.dim));
    report.outputs.insert("iso".into(), io::matrix_to_json(&r.iso));
    let code = if report.passed() { 0 } else { EXIT_FAIL };
    Outcome { report: Some(report), code, side_output: Some(output) }
}

fn cmd_artin(path: &Path) -> Outcome {
    let problem = match load_problem(path) {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    let s = problem.setting.as_dyn();
    let gamma = s.gamma().clone();
    let mut report = Report::new("artin", None);
    if let Some(rep) = &problem.representation {
        match artin_inverse(s, rep) {
            Ok(r) => {
                let back = artin_functor(s, &r.object, Some(&r.iso));
                let ok = matches!(&back, Ok(b) if b == rep);
                report.push(CheckItem::from_bool("artin functor after its inverse", ok, || {
                    json!("representation changed")
                }));
                report.outputs.insert("object".into(), io::setting_object_to_json(&problem.setting, &r.object, false));
                report.outputs.insert("witness".into(), io::matrix_to_json(&r.iso));
            }
            Err(e) => {
                let code = if matches!(e, Error::CocycleViolation { .. } | Error::InvalidDatum(_)) {
                    EXIT_DATUM
                } else {
                    EXIT_FAIL
                };
                report.push(CheckItem::fail("artin inverse", error_witness(s, &e)));
                return Outcome { report: Some(report), code, side_output: None };
            }
        }
    }
    if let Some(a) = &problem.base_object {
        match artin_functor(s, a, None) {
            Ok(rep) => {
                let back = artin_inverse(s, &rep);
                let ok = matches!(&back, Ok(r) if find_isomorphism(s, Side::Base, &r.object, a).is_some());
                report.push(CheckItem::from_bool("artin inverse after the functor", ok, || json!("object changed")));
                report.outputs.insert("representation".into(), io::representation_to_json(&gamma, &rep));
            }
            Err(e) => report.push(CheckItem::fail("artin functor", error_witness(s, &e))),
        }
    }
    if problem.representation.is_none() && problem.base_object.is_none() {
        return input_error("artin needs a \"representation\" or a \"base_object\"");
    }
    finish(report)
}

fn cmd_exactseq(groups: &str) -> Outcome {
    let value = if Path::new(groups).exists() {
        let text = match fs::read_to_string(groups) {
            Ok(t) => t,
            Err(e) => return input_error(format!("{groups}: {e}")),
        };
        match serde_json::from_str::<Value>(&text) {
            Ok(v) => v.get("groups").cloned().unwrap_or(v),
            Err(e) => return input_error(format!("{groups}: {e}")),
        }
    } else {
        Value::String(groups.to_string())
    };
    let setting = match io::groups_from_json(&value) {
        Ok(s) => s,
        Err(e) => return input_error(e),
    };
    let mut report = Report::new("exactseq", None);
    match exact_sequence_check(&setting) {
        Ok(r) => {
            report.outputs.insert("artin".into(), json!(r.artin));
            report.outputs.insert("factoring".into(), json!(r.factoring));
            report.extend(r.items);
        }
        Err(e) => report.push(CheckItem::fail("exact sequence", json!({"error": e.to_string()}))),
    }
    finish(report)
}

fn write_json(path: &Path, v: &Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(v).expect("values serialize");
    fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut outcome = match &cli.command {
        Command::Verify { path } => cmd_verify(path),
        Command::Descend { path } => cmd_descend(path),
        Command::Artin { path } => cmd_artin(path),
        Command::Exactseq { groups } => cmd_exactseq(groups),
        Command::Selftest => finish(selftest::selftest(cli.seed, cli.cases)),
    };
    let Some(report) = outcome.report.as_mut() else {
        return ExitCode::from(outcome.code);
    };
    if !matches!(cli.command, Command::Selftest) {
        report.timings_ms = BTreeMap::from([("total".to_string(), start.elapsed().as_millis() as u64)]);
    }
    match cli.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    if let Some(out) = &cli.out {
        let payload = match &outcome.side_output {
            Some(v) => v.clone(),
            None => serde_json::to_value(&*report).expect("reports serialize"),
        };
        if let Err(e) = write_json(out, &payload) {
            eprintln!("galdesc: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    ExitCode::from(outcome.code)
}
