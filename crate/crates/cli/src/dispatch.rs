//! Subcommand dispatch. All mathematical check logic lives in the engine;
//! this layer loads inputs, routes to the matching operation, caches, and
//! formats reports.

use std::collections::VecDeque;
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use serde_json::{json, Value};

use augcoh_core::algebra::{Algebra, ArcAlgebra};
use augcoh_core::cache::Cache;
use augcoh_core::cohomology::{ext_ring, hh_ring};
use augcoh_core::constructions::{chinese_remainder_suite, coproduct, product};
use augcoh_core::error::Error;
use augcoh_core::field::FieldSpec;
use augcoh_core::product_cohomology::{
    additive_decomposition, ext_coproduct_check, gr_centre_check, hoch_coproduct_check,
    hoch_prod_check, les_exact_report, les_product, main_theo_check, nilp_check,
    omega_coproduct_check, phi_k_centre_report, ss_nilpotence_report,
};
use augcoh_core::registry;
use augcoh_core::report::CheckReport;

use crate::{Cli, Command, EXIT_AXIOMS, EXIT_BAD_INPUT, EXIT_CHECK_FAILED, EXIT_CUTOFF, EXIT_UNKNOWN_CHECK};

pub fn exit_code_for(e: &anyhow::Error) -> u8 {
    if let Some(code) = e.downcast_ref::<ExitWith>() {
        return code.0;
    }
    if let Some(err) = e.downcast_ref::<Error>() {
        return match err {
            Error::CutoffTooSmall { .. } => EXIT_CUTOFF,
            Error::AxiomFailure(_) => EXIT_AXIOMS,
            Error::Parse(_) | Error::BadField(_) | Error::FieldMismatch(..) => EXIT_BAD_INPUT,
            _ => EXIT_BAD_INPUT,
        };
    }
    EXIT_BAD_INPUT
}

#[derive(Debug)]
struct ExitWith(u8);

impl std::fmt::Display for ExitWith {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "exit code {}", self.0)
    }
}

impl std::error::Error for ExitWith {}

fn field_of(cli_field: Option<u64>) -> Result<FieldSpec> {
    match cli_field {
        None | Some(0) => Ok(FieldSpec::rationals()),
        Some(p) => Ok(FieldSpec::prime(p).map_err(anyhow::Error::from)?),
    }
}

/// `--algebra <file|registry spec>`: a path (or `file:` prefix) loads the
/// algebra JSON document and validates the axioms; anything else goes to
/// the registry grammar.
fn load_algebra(spec: &str, field: FieldSpec) -> Result<ArcAlgebra> {
    let path = spec.strip_prefix("file:").map(str::to_string).or_else(|| {
        if spec.ends_with(".json") || spec.contains('/') {
            Some(spec.to_string())
        } else {
            None
        }
    });
    if let Some(p) = path {
        let bytes = std::fs::read(&p)
            .with_context(|| format!("reading algebra file {p}"))
            .map_err(|e| e.context(ExitWith(EXIT_BAD_INPUT)))?;
        let doc: Value = serde_json::from_slice(&bytes)
            .map_err(|e| anyhow!(ExitWith(EXIT_BAD_INPUT)).context(format!("malformed JSON: {e}")))?;
        let a = Algebra::from_json(&doc)
            .map_err(|e| anyhow!(ExitWith(EXIT_BAD_INPUT)).context(format!("bad algebra document: {e}")))?;
        let axioms = a.check_axioms();
        if !axioms.pass {
            return Err(anyhow!(ExitWith(EXIT_AXIOMS)).context("algebra file fails the axioms"));
        }
        return Ok(std::sync::Arc::new(a));
    }
    let spec = spec.strip_prefix("registry:").unwrap_or(spec);
    registry::build(spec, field).map_err(|e| match e {
        Error::AxiomFailure(_) => anyhow!(ExitWith(EXIT_AXIOMS)).context(e.to_string()),
        other => anyhow!(ExitWith(EXIT_BAD_INPUT)).context(other.to_string()),
    })
}

fn emit(cli_out: &Option<std::path::PathBuf>, value: &Value) -> Result<()> {
    let pretty = serde_json::to_string_pretty(value)?;
    match cli_out {
        Some(path) => std::fs::write(path, pretty + "\n")?,
        None => println!("{pretty}"),
    }
    Ok(())
}

pub fn run(cli: Cli) -> Result<u8> {
    let field = field_of(cli.field)?;
    let cache = if cli.no_cache { Cache::disabled() } else { Cache::from_env() };
    match &cli.command {
        Command::Ext { algebra, nmax } => {
            let a = load_algebra(algebra, field)?;
            let material = json!({
                "op": "ext", "algebra": a.to_json(), "nmax": nmax,
            });
            let started = Instant::now();
            let outcome = cache.get_or_compute(&material, || {
                let e = ext_ring(&a, *nmax)?;
                Ok(json!({
                    "op": "ext",
                    "dims": e.table.dims,
                    "table": e.table.to_json(),
                }))
            })?;
            let mut v = outcome.value;
            attach_meta(&mut v, started, outcome.hit);
            emit(&cli.out, &v)?;
            Ok(0)
        }
        Command::Hh { algebra, nmax } => {
            let a = load_algebra(algebra, field)?;
            let material = json!({ "op": "hh", "algebra": a.to_json(), "nmax": nmax });
            let started = Instant::now();
            let outcome = cache.get_or_compute(&material, || {
                let h = hh_ring(&a, *nmax)?;
                Ok(json!({
                    "op": "hh",
                    "dims": h.dims(),
                    "graded_commutative": h.table.check_graded_commutative(),
                    "table": h.table.to_json(),
                }))
            })?;
            let mut v = outcome.value;
            attach_meta(&mut v, started, outcome.hit);
            emit(&cli.out, &v)?;
            Ok(0)
        }
        Command::Product { left, right } => {
            let a = load_algebra(left, field)?;
            let b = load_algebra(right, field)?;
            let p = product(&a, &b).map_err(anyhow::Error::from)?;
            emit(&cli.out, &p.algebra.to_json())?;
            Ok(0)
        }
        Command::Coproduct { left, right, cutoff } => {
            let a = load_algebra(left, field)?;
            let b = load_algebra(right, field)?;
            let c = cutoff.unwrap_or(9);
            let cop = coproduct(&a, &b, c).map_err(anyhow::Error::from)?;
            emit(&cli.out, &cop.algebra.to_json())?;
            Ok(0)
        }
        Command::Check { name, algebra, left, right, nmax, cutoff } => {
            let ctx = CheckContext {
                field,
                algebra: algebra.clone(),
                left: left.clone(),
                right: right.clone(),
                nmax: nmax.unwrap_or(4),
                cutoff: *cutoff,
            };
            let started = Instant::now();
            let material = json!({
                "op": "check", "name": name, "field": field.characteristic(),
                "algebra": algebra, "left": left, "right": right,
                "nmax": ctx.nmax, "cutoff": cutoff,
            });
            if !CHECK_NAMES.contains(&name.as_str()) {
                return Err(anyhow!(ExitWith(EXIT_UNKNOWN_CHECK)).context(format!(
                    "unknown check {name:?}; expected one of: {}",
                    CHECK_NAMES.join(", ")
                )));
            }
            let (mut v, hit) = match cache.lookup(&material) {
                Some(v) => (v, true),
                None => {
                    let rep = run_check(name, &ctx)?;
                    let v = rep.to_json_comparable();
                    cache.store(&material, &v).map_err(anyhow::Error::from)?;
                    (v, false)
                }
            };
            attach_meta(&mut v, started, hit);
            emit(&cli.out, &v)?;
            let pass = v.get("pass").and_then(Value::as_bool).unwrap_or(false);
            Ok(if pass { 0 } else { EXIT_CHECK_FAILED })
        }
        Command::Examples => {
            let listing: Vec<Value> = registry::catalog()
                .into_iter()
                .map(|(name, what)| json!({ "name": name, "describes": what }))
                .collect();
            emit(&cli.out, &json!({ "registry": listing }))?;
            Ok(0)
        }
        Command::ReportAll { nmax, jobs } => report_all(&cli, field, &cache, *nmax, *jobs),
    }
}

fn attach_meta(v: &mut Value, started: Instant, hit: bool) {
    if let Value::Object(map) = v {
        map.insert("timing_ms".into(), json!(started.elapsed().as_millis() as u64));
        map.insert("cache".into(), json!(if hit { "hit" } else { "miss" }));
    }
}

struct CheckContext {
    field: FieldSpec,
    algebra: Option<String>,
    left: Option<String>,
    right: Option<String>,
    nmax: usize,
    cutoff: Option<usize>,
}

impl CheckContext {
    fn algebra(&self) -> Result<ArcAlgebra> {
        let spec = self.algebra.as_deref().unwrap_or("trunc-poly:2");
        load_algebra(spec, self.field)
    }

    fn pair(&self) -> Result<(ArcAlgebra, ArcAlgebra)> {
        let l = self.left.as_deref().unwrap_or("trunc-poly:2");
        let r = self.right.as_deref().unwrap_or("trunc-poly:2");
        Ok((load_algebra(l, self.field)?, load_algebra(r, self.field)?))
    }
}

pub const CHECK_NAMES: &[&str] = &[
    "axioms",
    "ordinary-coprod",
    "omega-lem",
    "main-theo",
    "les-exact",
    "additive-decomp",
    "hoch-prod",
    "nilp-hh",
    "gr-centre",
    "phi-k-centre",
    "ss-nilpotence",
    "chinese-remainder",
    "hoch-coprod-heuristic",
];

fn run_check(name: &str, ctx: &CheckContext) -> Result<CheckReport> {
    // checks referencing a characteristic hypothesis refuse GF(2)
    let char_two_sensitive =
        ["hoch-coprod-heuristic", "gr-centre", "phi-k-centre", "hoch-prod", "additive-decomp"];
    if ctx.field.characteristic() == 2 && char_two_sensitive.contains(&name) {
        return Err(anyhow!(ExitWith(EXIT_BAD_INPUT))
            .context(format!("check {name} requires characteristic not two")));
    }
    let rep = match name {
        "axioms" => ctx.algebra()?.check_axioms(),
        "ordinary-coprod" => {
            let (a, b) = ctx.pair()?;
            ext_coproduct_check(&a, &b, ctx.nmax, ctx.cutoff).map_err(anyhow::Error::from)?
        }
        "omega-lem" => {
            let (a, b) = ctx.pair()?;
            omega_coproduct_check(&a, &b, ctx.cutoff.unwrap_or(4)).map_err(anyhow::Error::from)?
        }
        "main-theo" => {
            let (a, b) = ctx.pair()?;
            main_theo_check(&a, &b, ctx.nmax).map_err(anyhow::Error::from)?
        }
        "les-exact" => {
            let (a, b) = ctx.pair()?;
            les_exact_report(&a, &b, ctx.nmax).map_err(anyhow::Error::from)?
        }
        "additive-decomp" => {
            let (a, b) = ctx.pair()?;
            let pc = les_product(&a, &b, ctx.nmax).map_err(anyhow::Error::from)?;
            additive_decomposition(&pc, ctx.nmax).map_err(anyhow::Error::from)?.report
        }
        "hoch-prod" => {
            let (a, b) = ctx.pair()?;
            let pc = les_product(&a, &b, ctx.nmax).map_err(anyhow::Error::from)?;
            hoch_prod_check(&pc, ctx.nmax).map_err(anyhow::Error::from)?
        }
        "nilp-hh" => {
            let (a, b) = ctx.pair()?;
            nilp_check(&a, &b, ctx.nmax).map_err(anyhow::Error::from)?
        }
        "gr-centre" => {
            let (a, b) = ctx.pair()?;
            let ta = ext_ring(&a, ctx.nmax).map_err(anyhow::Error::from)?.table;
            let tb = ext_ring(&b, ctx.nmax).map_err(anyhow::Error::from)?.table;
            gr_centre_check(&ta, &tb, ctx.cutoff.unwrap_or(2 * ctx.nmax))
                .map_err(anyhow::Error::from)?
        }
        "phi-k-centre" => {
            phi_k_centre_report(&ctx.algebra()?, ctx.nmax).map_err(anyhow::Error::from)?
        }
        "ss-nilpotence" => {
            let spec = ctx.algebra.as_deref().unwrap_or("trunc-poly:3");
            let a = load_algebra(spec, ctx.field)?;
            ss_nilpotence_report(&a, ctx.nmax).map_err(anyhow::Error::from)?
        }
        "chinese-remainder" => chinese_remainder_suite(ctx.field).map_err(anyhow::Error::from)?,
        "hoch-coprod-heuristic" => {
            let (a, b) = ctx.pair()?;
            hoch_coproduct_check(&a, &b, ctx.cutoff.unwrap_or(5), ctx.nmax.min(2))
                .map_err(anyhow::Error::from)?
        }
        _ => unreachable!("check names validated before dispatch"),
    };
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx_pair(left: &str, right: &str, nmax: usize) -> CheckContext {
        CheckContext {
            field: FieldSpec::rationals(),
            algebra: None,
            left: Some(left.into()),
            right: Some(right.into()),
            nmax,
            cutoff: None,
        }
    }

    #[test]
    fn registry_specs_load() {
        let a = load_algebra("trunc-poly:3", FieldSpec::rationals()).unwrap();
        assert_eq!(a.dim(), 3);
        let b = load_algebra("registry:gf3-triple", FieldSpec::rationals()).unwrap();
        assert_eq!(b.dim(), 5);
    }

    #[test]
    fn algebra_files_round_trip_through_the_loader() {
        let a = load_algebra("trunc-poly:2", FieldSpec::rationals()).unwrap();
        let dir = std::env::temp_dir().join(format!("augcoh-cli-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("algebra.json");
        std::fs::write(&path, serde_json::to_string(&a.to_json()).unwrap()).unwrap();
        let b = load_algebra(path.to_str().unwrap(), FieldSpec::rationals()).unwrap();
        assert_eq!(b.to_json(), a.to_json());
        let _ = std::fs::remove_dir_all(dir);
    }

    #[test]
    fn malformed_files_report_bad_input() {
        let dir = std::env::temp_dir().join(format!("augcoh-cli-bad-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.json");
        std::fs::write(&path, b"{").unwrap();
        let err = load_algebra(path.to_str().unwrap(), FieldSpec::rationals()).unwrap_err();
        assert_eq!(exit_code_for(&err), EXIT_BAD_INPUT);
        let _ = std::fs::remove_dir_all(dir);
    }

    #[test]
    fn every_named_check_dispatches() {
        // the cheap ones run outright; the heavier ones are covered by the
        // acceptance suite, so a small nmax keeps this fast
        for name in CHECK_NAMES {
            let ctx = match *name {
                "hoch-coprod-heuristic" => CheckContext {
                    cutoff: Some(3),
                    nmax: 1,
                    ..ctx_pair("trunc-poly:2", "trunc-poly:2", 1)
                },
                "ordinary-coprod" => CheckContext {
                    cutoff: Some(4),
                    ..ctx_pair("trunc-poly:2", "trunc-poly:2", 2)
                },
                _ => ctx_pair("trunc-poly:2", "trunc-poly:2", 2),
            };
            let rep = run_check(name, &ctx).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(rep.pass, "{name}: {:?}", rep.witnesses);
        }
    }

    #[test]
    fn characteristic_two_is_refused_where_the_hypotheses_need_it() {
        let ctx = CheckContext {
            field: FieldSpec::prime(2).unwrap(),
            algebra: None,
            left: Some("trunc-poly:2".into()),
            right: Some("trunc-poly:2".into()),
            nmax: 2,
            cutoff: None,
        };
        let err = run_check("hoch-prod", &ctx).unwrap_err();
        assert_eq!(exit_code_for(&err), EXIT_BAD_INPUT);
    }
}

/// The default battery: every check over the built-in registry, dispatched
/// to a small worker pool. Deterministic output order.
fn report_all(cli: &Cli, field: FieldSpec, cache: &Cache, nmax: usize, jobs: Option<usize>) -> Result<u8> {
    let n3 = nmax.min(3);
    let battery: Vec<(String, CheckContext)> = vec![
        ("axioms", None, Some("trunc-poly:2"), None, nmax, None),
        ("axioms", None, Some("trunc-poly:3"), None, nmax, None),
        ("axioms", None, Some("rad-square-zero:2"), None, nmax, None),
        ("axioms", None, Some("gf3-triple"), None, nmax, None),
        ("chinese-remainder", None, None, None, nmax, None),
        ("main-theo", Some(("trunc-poly:2", "trunc-poly:2")), None, None, nmax, None),
        ("main-theo", Some(("trunc-poly:3", "trunc-poly:2")), None, None, nmax, None),
        ("les-exact", Some(("trunc-poly:2", "trunc-poly:2")), None, None, n3, None),
        ("additive-decomp", Some(("trunc-poly:2", "trunc-poly:2")), None, None, nmax, None),
        ("additive-decomp", Some(("trunc-poly:3", "trunc-poly:2")), None, None, n3, None),
        ("additive-decomp", Some(("trunc-poly:3", "trunc-poly:3")), None, None, n3, None),
        ("hoch-prod", Some(("trunc-poly:2", "trunc-poly:2")), None, None, nmax, None),
        ("nilp-hh", Some(("trunc-poly:2", "trunc-poly:2")), None, None, nmax, None),
        ("nilp-hh", Some(("trunc-poly:3", "trunc-poly:2")), None, None, n3, None),
        ("gr-centre", Some(("trunc-poly:2", "trunc-poly:2")), None, None, nmax, None),
        ("phi-k-centre", None, Some("trunc-poly:2"), None, nmax, None),
        ("phi-k-centre", None, Some("trunc-poly:3"), None, nmax, None),
        ("ss-nilpotence", None, Some("trunc-poly:3"), None, nmax, None),
        ("ordinary-coprod", Some(("trunc-poly:2", "trunc-poly:2")), None, None, nmax, None),
        ("ordinary-coprod", Some(("trunc-poly:3", "trunc-poly:2")), None, None, n3, Some(6)),
        ("omega-lem", Some(("trunc-poly:2", "trunc-poly:2")), None, None, nmax, Some(4)),
        ("omega-lem", Some(("trunc-poly:3", "trunc-poly:2")), None, None, nmax, Some(4)),
        ("hoch-coprod-heuristic", Some(("trunc-poly:2", "trunc-poly:2")), None, None, 2, Some(5)),
    ]
    .into_iter()
    .map(|(name, pair, algebra, _unused, n, cutoff): (&str, Option<(&str, &str)>, Option<&str>, Option<()>, usize, Option<usize>)| {
        (
            name.to_string(),
            CheckContext {
                field,
                algebra: algebra.map(str::to_string),
                left: pair.map(|p| p.0.to_string()),
                right: pair.map(|p| p.1.to_string()),
                nmax: n,
                cutoff,
            },
        )
    })
    .collect();

    let total = battery.len();
    let queue: Mutex<VecDeque<(usize, (String, CheckContext))>> =
        Mutex::new(battery.into_iter().enumerate().collect());
    let results: Mutex<Vec<Option<(String, Value, u128)>>> = Mutex::new(vec![None; total]);
    let workers = jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
        .clamp(1, 8);

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let job = queue.lock().unwrap().pop_front();
                let Some((idx, (name, ctx))) = job else { break };
                let started = Instant::now();
                let material = json!({
                    "op": "check", "name": name, "field": ctx.field.characteristic(),
                    "algebra": ctx.algebra, "left": ctx.left, "right": ctx.right,
                    "nmax": ctx.nmax, "cutoff": ctx.cutoff,
                });
                let value = match cache.lookup(&material) {
                    Some(v) => v,
                    None => match run_check(&name, &ctx) {
                        Ok(rep) => {
                            let v = rep.to_json_comparable();
                            let _ = cache.store(&material, &v);
                            v
                        }
                        Err(e) => json!({ "check": name, "pass": false, "error": e.to_string() }),
                    },
                };
                let label = format!(
                    "{name} {}",
                    ctx.left
                        .as_deref()
                        .map(|l| format!("({l}, {})", ctx.right.as_deref().unwrap_or("")))
                        .or(ctx.algebra.clone())
                        .unwrap_or_default()
                );
                results.lock().unwrap()[idx] =
                    Some((label, value, started.elapsed().as_millis()));
            });
        }
    });

    let results = results.into_inner().unwrap();
    let mut all_pass = true;
    let mut bundle = Vec::new();
    for entry in results.into_iter().flatten() {
        let (label, value, ms) = entry;
        let pass = value.get("pass").and_then(Value::as_bool).unwrap_or(false);
        all_pass &= pass;
        println!("{} {label} [{ms} ms]", if pass { "PASS" } else { "FAIL" });
        bundle.push(value);
    }
    if let Some(path) = &cli.out {
        std::fs::write(path, serde_json::to_string_pretty(&json!({ "reports": bundle }))?)?;
    }
    Ok(if all_pass { 0 } else { EXIT_CHECK_FAILED })
}
