//! Command-line front end. Every command wraps its payload in an
//! [`OutputEnvelope`]; JSON is the machine contract, the default text
//! rendering is for humans, and CSV is available where the payload is
//! tabular (sweep tallies, bounds constants).
//!
//! Exit codes: 0 success, 1 a sweep recorded a predicate failure, 2 input
//! error, 3 resource budget exhausted.

use crate::arith::{
    decimal_str, factorize, parse_natural, rational_str, ArithError, Budget, Natural,
};
use crate::eulerian::{decompose, descartes_spoof, parse_form_spec, EulerianForm};
use crate::harness::{
    find_l7_violation, sigma_sieve, sigma_sieve_parallel, sweep_pairs, write_sigma_table,
    HarnessError, PairFilter, SweepConfig,
};
use crate::predicates::{constants, eval_all, eval_l10_case, EvalMode, Instance};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::time::Instant;

pub const SCHEMA_VERSION: &str = "1";

/// Environment variable capping worker threads for sweeps and sieves.
pub const THREADS_ENV: &str = "OPNLAB_THREADS";

#[derive(Parser)]
#[command(
    name = "opnlab",
    version,
    about = "Exact-arithmetic laboratory for odd perfect number claims"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit the output envelope as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Emit tabular results as CSV (sweep, bounds).
    #[arg(long, global = true, conflicts_with = "json")]
    pub csv: bool,
    /// Include wall-clock timing in the envelope. Off by default so repeated
    /// runs of the same command produce byte-identical output.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand)]
pub enum Command {
    /// Factor N, compute sigma and the abundancy index, attempt an Eulerian
    /// decomposition, and evaluate every predicate on it.
    Analyze {
        /// Positive integer, decimal.
        n: String,
        /// Evaluate conditional predicates without their perfection premises.
        #[arg(long)]
        raw: bool,
    },
    /// Build a (possibly spoof) Eulerian form and evaluate every predicate.
    Spoof {
        /// "descartes" or a spec like "22021^1*3003^2 assert 22021".
        spec: String,
        /// Evaluate conditional predicates without their perfection premises.
        #[arg(long)]
        raw: bool,
    },
    /// Exhaustive pair sweep of the universally quantified predicates.
    Sweep {
        /// Pairs (a, b) range over 2..=bound.
        #[arg(long)]
        bound: u64,
        /// Comma-separated: coprime, abundancy-ordered, euler-power, odd.
        #[arg(long, default_value = "")]
        filter: String,
        /// Comma-separated predicate IDs: T2a, R10, T1-generic, R5.
        #[arg(long)]
        predicates: String,
        #[arg(long, default_value_t = 1)]
        parallelism: usize,
        /// Cap on recorded counterexamples.
        #[arg(long, default_value_t = 100)]
        cap: usize,
    },
    /// Certified intervals and exact orderings for the named constants,
    /// plus the exact prime-by-prime bound scan.
    Bounds {
        /// Decimal digits of certified enclosure.
        precision: u32,
        /// Also exact-check the sqrt(2q/(q+1)) bound for primes q = 1 mod 4
        /// up to this limit.
        #[arg(long)]
        scan_limit: Option<u64>,
    },
    /// Bulk sigma table; optionally persisted as a flat binary file.
    Sieve {
        limit: u64,
        /// Write the table to this path ("SIGTAB01" header, little-endian).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Use the segmented parallel sieve.
        #[arg(long)]
        parallel: bool,
    },
}

/// Stable wrapper around every command's machine-readable output.
#[derive(Serialize)]
pub struct OutputEnvelope {
    pub schema_version: &'static str,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Debug)]
pub struct CmdError {
    pub message: String,
    pub exit: i32,
}

impl CmdError {
    fn input(msg: impl Into<String>) -> Self {
        CmdError {
            message: msg.into(),
            exit: 2,
        }
    }
}

impl From<HarnessError> for CmdError {
    fn from(e: HarnessError) -> Self {
        let exit = match e {
            HarnessError::MemoryBudget { .. } => 3,
            _ => 2,
        };
        CmdError {
            message: e.to_string(),
            exit,
        }
    }
}

fn env_thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.parse().ok()
}

fn capped_threads(requested: usize) -> usize {
    match env_thread_cap() {
        Some(cap) => requested.clamp(1, cap.max(1)),
        None => requested.max(1),
    }
}

/// Parses the process arguments, runs the selected command, prints the
/// rendered envelope, and returns the process exit code.
pub fn run_from_args() -> i32 {
    run(Cli::parse())
}

pub fn run(cli: Cli) -> i32 {
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Analyze { n, raw } => cmd_analyze(n, mode_of(*raw)),
        Command::Spoof { spec, raw } => cmd_spoof(spec, mode_of(*raw)),
        Command::Sweep {
            bound,
            filter,
            predicates,
            parallelism,
            cap,
        } => cmd_sweep(*bound, filter, predicates, *parallelism, *cap),
        Command::Bounds {
            precision,
            scan_limit,
        } => cmd_bounds(*precision, *scan_limit),
        Command::Sieve {
            limit,
            out,
            parallel,
        } => cmd_sieve(*limit, out.as_deref(), *parallel),
    };
    match outcome {
        Ok((inputs, results, exit)) => {
            let envelope = OutputEnvelope {
                schema_version: SCHEMA_VERSION,
                command: command_name(&cli.command).to_string(),
                inputs,
                results,
                timing_ms: cli
                    .timing
                    .then(|| start.elapsed().as_millis() as u64),
            };
            match render(&cli, &envelope) {
                Ok(text) => {
                    println!("{text}");
                    exit
                }
                Err(e) => {
                    eprintln!("error: {}", e.message);
                    e.exit
                }
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.exit
        }
    }
}

fn mode_of(raw: bool) -> EvalMode {
    if raw {
        EvalMode::Raw
    } else {
        EvalMode::Standard
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze { .. } => "analyze",
        Command::Spoof { .. } => "spoof",
        Command::Sweep { .. } => "sweep",
        Command::Bounds { .. } => "bounds",
        Command::Sieve { .. } => "sieve",
    }
}

pub type CmdResult = Result<(Value, Value, i32), CmdError>;

fn form_payload(form: &EulerianForm, mode: EvalMode) -> Value {
    let inst = Instance::new(form.clone());
    json!({
        "form": {
            "display": form.to_string(),
            "q": form.q().to_string(),
            "k": form.k(),
            "n": form.n().to_string(),
            "n_factorization": form.n_factorization(),
            "flavor": form.flavor(),
        },
        "components": inst.comps,
        "l10_case": eval_l10_case(&inst),
        "reports": eval_all(&inst, mode),
    })
}

pub fn cmd_analyze(n_str: &str, mode: EvalMode) -> CmdResult {
    let n = parse_natural(n_str).map_err(|e| CmdError::input(e.to_string()))?;
    if n == Natural::from(0u32) {
        return Err(CmdError::input("N must be positive"));
    }
    let inputs = json!({ "n": n.to_string(), "mode": mode });
    let factorization = match factorize(&n, &Budget::default()) {
        Ok(f) => f,
        Err(ArithError::BudgetExhausted { partial, cofactor }) => {
            let results = json!({
                "budget_exhausted": true,
                "partial_factorization": partial,
                "partial_display": partial.to_string(),
                "unfactored_cofactor": cofactor.to_string(),
            });
            return Ok((inputs, results, 3));
        }
        Err(e) => return Err(CmdError::input(e.to_string())),
    };
    let sigma = factorization.sigma();
    let is_perfect = sigma == Natural::from(2u32) * &n;
    let eulerian = match decompose(&n) {
        Ok(form) => form_payload(&form, mode),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let results = json!({
        "n": n.to_string(),
        "factorization": factorization,
        "factorization_display": factorization.to_string(),
        "sigma": sigma.to_string(),
        "abundancy": rational_str(&factorization.abundancy()),
        "is_perfect": is_perfect,
        "eulerian": eulerian,
    });
    Ok((inputs, results, 0))
}

pub fn cmd_spoof(spec: &str, mode: EvalMode) -> CmdResult {
    let form = if spec == "descartes" {
        descartes_spoof()
    } else {
        parse_form_spec(spec).map_err(|e| CmdError::input(e.to_string()))?
    };
    let inputs = json!({ "spec": spec, "mode": mode });
    Ok((inputs, form_payload(&form, mode), 0))
}

pub fn cmd_sweep(
    bound: u64,
    filter: &str,
    predicates: &str,
    parallelism: usize,
    cap: usize,
) -> CmdResult {
    let filter = PairFilter::parse(filter)?;
    let ids: Vec<String> = predicates
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect();
    let mut cfg = SweepConfig::new(bound, filter, ids);
    cfg.parallelism = capped_threads(parallelism);
    cfg.counterexample_cap = cap;
    let report = sweep_pairs(&cfg)?;
    let exit = if report.any_failures() { 1 } else { 0 };
    let inputs = serde_json::to_value(&cfg).expect("config serializes");
    let results = serde_json::to_value(&report).expect("report serializes");
    Ok((inputs, results, exit))
}

pub fn cmd_bounds(precision: u32, scan_limit: Option<u64>) -> CmdResult {
    if precision < 1 {
        return Err(CmdError::input("precision must be >= 1"));
    }
    let named = constants::all_named();
    let mut rows = Vec::new();
    for (name, expr) in &named {
        let iv = expr.eval(precision);
        rows.push(json!({
            "name": name,
            "interval": iv,
            // Certified decimal endpoints: lo rounded down, hi rounded up,
            // so the printed decimal interval still encloses the value.
            "decimal_lo": decimal_str(&iv.lo, precision, false),
            "decimal_hi": decimal_str(&iv.hi, precision, true),
        }));
    }
    let mut orderings = Vec::new();
    for (left, le) in &named {
        for (right, re) in &named {
            let rel = match le.compare(re) {
                Ok(std::cmp::Ordering::Less) => "lt",
                Ok(std::cmp::Ordering::Equal) => "eq",
                Ok(std::cmp::Ordering::Greater) => "gt",
                Err(e) => return Err(CmdError::input(e.to_string())),
            };
            orderings.push(json!({ "left": left, "right": right, "relation": rel }));
        }
    }
    let scan = match scan_limit {
        Some(limit) => serde_json::to_value(find_l7_violation(limit)?).expect("scan serializes"),
        None => Value::Null,
    };
    let inputs = json!({ "precision": precision, "scan_limit": scan_limit });
    let results = json!({
        "constants": rows,
        "orderings": orderings,
        "bound_scan": scan,
    });
    Ok((inputs, results, 0))
}

pub fn cmd_sieve(limit: u64, out: Option<&std::path::Path>, parallel: bool) -> CmdResult {
    let table = if parallel {
        sigma_sieve_parallel(limit, capped_threads(8))?
    } else {
        sigma_sieve(limit)?
    };
    let mut written: Option<String> = None;
    if let Some(path) = out {
        let file = std::fs::File::create(path)
            .map_err(|e| CmdError::input(format!("cannot write {}: {e}", path.display())))?;
        let mut w = std::io::BufWriter::new(file);
        write_sigma_table(&mut w, &table)
            .map_err(|e| CmdError::input(format!("write failed: {e}")))?;
        written = Some(path.display().to_string());
    }
    let sample = |m: u64| -> Value {
        if m <= limit {
            json!(table[m as usize])
        } else {
            Value::Null
        }
    };
    let inputs = json!({ "limit": limit, "parallel": parallel, "out": written });
    let results = json!({
        "entries": limit,
        "sigma_of_limit": table[limit as usize],
        "samples": { "6": sample(6), "28": sample(28) },
        "file": written,
    });
    Ok((inputs, results, 0))
}

fn render(cli: &Cli, envelope: &OutputEnvelope) -> Result<String, CmdError> {
    if cli.json {
        return Ok(serde_json::to_string_pretty(envelope).expect("envelope serializes"));
    }
    if cli.csv {
        return render_csv(envelope);
    }
    Ok(render_text(envelope))
}

fn render_csv(envelope: &OutputEnvelope) -> Result<String, CmdError> {
    match envelope.command.as_str() {
        "sweep" => {
            let mut out = String::from("predicate_id,holds,fails,vacuous\n");
            for t in envelope.results["tallies"].as_array().into_iter().flatten() {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    t["predicate_id"].as_str().unwrap_or(""),
                    t["holds"],
                    t["fails"],
                    t["vacuous"]
                ));
            }
            Ok(out.trim_end().to_string())
        }
        "bounds" => {
            let mut out = String::from("name,lo,hi,decimal_lo,decimal_hi\n");
            for c in envelope.results["constants"].as_array().into_iter().flatten() {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    c["name"].as_str().unwrap_or(""),
                    c["interval"]["lo"].as_str().unwrap_or(""),
                    c["interval"]["hi"].as_str().unwrap_or(""),
                    c["decimal_lo"].as_str().unwrap_or(""),
                    c["decimal_hi"].as_str().unwrap_or("")
                ));
            }
            Ok(out.trim_end().to_string())
        }
        other => Err(CmdError::input(format!(
            "csv output is not supported for {other}"
        ))),
    }
}

fn render_reports(out: &mut String, reports: &Value) {
    for r in reports.as_array().into_iter().flatten() {
        out.push_str(&format!(
            "  {:12} {}\n",
            r["predicate_id"].as_str().unwrap_or("?"),
            r["verdict"].as_str().unwrap_or("?")
        ));
    }
}

fn render_form(out: &mut String, payload: &Value) {
    out.push_str(&format!(
        "form: {}  ({})\n",
        payload["form"]["display"].as_str().unwrap_or("?"),
        payload["form"]["flavor"].as_str().unwrap_or("?")
    ));
    out.push_str(&format!(
        "perfect: {}\n",
        payload["components"]["is_perfect"]
    ));
    out.push_str(&format!(
        "ordering: {} (case {})\n",
        payload["l10_case"]["chain"].as_str().unwrap_or("?"),
        payload["l10_case"]["case_id"]
    ));
    out.push_str("reports:\n");
    render_reports(out, &payload["reports"]);
}

fn render_text(envelope: &OutputEnvelope) -> String {
    let r = &envelope.results;
    let mut out = String::new();
    match envelope.command.as_str() {
        "analyze" => {
            if r["budget_exhausted"].as_bool() == Some(true) {
                out.push_str(&format!(
                    "factoring budget exhausted; partial: {}, cofactor: {}\n",
                    r["partial_display"].as_str().unwrap_or("?"),
                    r["unfactored_cofactor"].as_str().unwrap_or("?")
                ));
            } else {
                out.push_str(&format!(
                    "N = {} = {}\n",
                    r["n"].as_str().unwrap_or("?"),
                    r["factorization_display"].as_str().unwrap_or("?")
                ));
                out.push_str(&format!(
                    "sigma(N) = {}   I(N) = {}   perfect: {}\n",
                    r["sigma"].as_str().unwrap_or("?"),
                    r["abundancy"].as_str().unwrap_or("?"),
                    r["is_perfect"]
                ));
                if let Some(err) = r["eulerian"]["error"].as_str() {
                    out.push_str(&format!(
                        "no Eulerian form: {err} (try the spoof command for asserted primes)\n"
                    ));
                } else {
                    render_form(&mut out, &r["eulerian"]);
                }
            }
        }
        "spoof" => render_form(&mut out, r),
        "sweep" => {
            out.push_str(&format!("pairs evaluated: {}\n", r["pairs_evaluated"]));
            for t in r["tallies"].as_array().into_iter().flatten() {
                out.push_str(&format!(
                    "  {:12} holds {}  fails {}  vacuous {}\n",
                    t["predicate_id"].as_str().unwrap_or("?"),
                    t["holds"],
                    t["fails"],
                    t["vacuous"]
                ));
            }
            let ces = r["counterexamples"].as_array().map(Vec::len).unwrap_or(0);
            out.push_str(&format!(
                "counterexamples recorded: {ces}{}\n",
                if r["truncated"].as_bool() == Some(true) {
                    " (truncated)"
                } else {
                    ""
                }
            ));
        }
        "bounds" => {
            for c in r["constants"].as_array().into_iter().flatten() {
                out.push_str(&format!(
                    "  {:24} in [{}, {}]\n",
                    c["name"].as_str().unwrap_or("?"),
                    c["decimal_lo"].as_str().unwrap_or("?"),
                    c["decimal_hi"].as_str().unwrap_or("?")
                ));
            }
            if !r["bound_scan"].is_null() {
                out.push_str(&format!(
                    "bound scan: {} primes checked, violation: {}\n",
                    r["bound_scan"]["primes_checked"],
                    if r["bound_scan"]["violation"].is_null() {
                        "none"
                    } else {
                        "FOUND"
                    }
                ));
            }
        }
        "sieve" => {
            out.push_str(&format!(
                "sigma table to {} built; sigma(limit) = {}\n",
                r["entries"], r["sigma_of_limit"]
            ));
            if let Some(path) = r["file"].as_str() {
                out.push_str(&format!("written to {path}\n"));
            }
        }
        _ => {}
    }
    if let Some(ms) = envelope.timing_ms {
        out.push_str(&format!("elapsed: {ms} ms\n"));
    }
    out.trim_end().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_45_decomposes() {
        let (_, results, exit) = cmd_analyze("45", EvalMode::Standard).unwrap();
        assert_eq!(exit, 0);
        assert_eq!(results["eulerian"]["form"]["q"], "5");
        assert_eq!(results["eulerian"]["form"]["k"], 1);
        assert_eq!(results["eulerian"]["form"]["n"], "3");
        assert_eq!(results["is_perfect"], false);
        assert!(results["eulerian"]["reports"].as_array().unwrap().len() >= 18);
    }

    #[test]
    fn analyze_6_is_perfect_but_not_eulerian() {
        let (_, results, exit) = cmd_analyze("6", EvalMode::Standard).unwrap();
        assert_eq!(exit, 0);
        assert_eq!(results["is_perfect"], true);
        assert_eq!(results["abundancy"], "2/1");
        assert!(results["eulerian"]["error"].as_str().unwrap().contains("even"));
    }

    #[test]
    fn analyze_rejects_bad_input() {
        assert_eq!(cmd_analyze("abc", EvalMode::Standard).unwrap_err().exit, 2);
        assert_eq!(cmd_analyze("0", EvalMode::Standard).unwrap_err().exit, 2);
    }

    #[test]
    fn spoof_descartes_equals_explicit_spec() {
        let (_, by_name, _) = cmd_spoof("descartes", EvalMode::Standard).unwrap();
        let (_, by_spec, _) =
            cmd_spoof("22021^1*3003^2 assert 22021", EvalMode::Standard).unwrap();
        assert_eq!(by_name, by_spec);
        assert_eq!(by_name["components"]["is_perfect"], true);
        assert_eq!(by_name["l10_case"]["case_id"], 2);
    }

    #[test]
    fn spoof_rejects_bad_spec() {
        assert_eq!(cmd_spoof("5^2*3^2 assert none", EvalMode::Standard).unwrap_err().exit, 2);
    }

    #[test]
    fn sweep_exit_codes() {
        let (_, _, exit) = cmd_sweep(100, "coprime,abundancy-ordered", "T2a,R10", 1, 100).unwrap();
        assert_eq!(exit, 0);
        let (_, results, exit) = cmd_sweep(100, "coprime", "T1-generic", 1, 100).unwrap();
        assert_eq!(exit, 1);
        assert!(results["counterexamples"]
            .as_array()
            .unwrap()
            .iter()
            .any(|c| c["a"] == 9 && c["b"] == 8));
        assert_eq!(cmd_sweep(100, "coprime", "NOPE", 1, 100).unwrap_err().exit, 2);
    }

    #[test]
    fn bounds_orderings_are_antisymmetric() {
        let (_, results, exit) = cmd_bounds(3, None).unwrap();
        assert_eq!(exit, 0);
        let orderings = results["orderings"].as_array().unwrap();
        for o in orderings {
            let (l, r, rel) = (
                o["left"].as_str().unwrap(),
                o["right"].as_str().unwrap(),
                o["relation"].as_str().unwrap(),
            );
            let flipped = orderings
                .iter()
                .find(|p| p["left"] == r && p["right"] == l)
                .unwrap();
            let expect = match rel {
                "lt" => "gt",
                "gt" => "lt",
                _ => "eq",
            };
            assert_eq!(flipped["relation"], expect, "{l} vs {r}");
            if l == r {
                assert_eq!(rel, "eq");
            }
        }
    }

    #[test]
    fn sieve_memory_budget_maps_to_exit_3() {
        let err = cmd_sieve(u64::MAX, None, false).unwrap_err();
        assert_eq!(err.exit, 3);
    }

    #[test]
    fn envelope_skips_timing_by_default() {
        let e = OutputEnvelope {
            schema_version: SCHEMA_VERSION,
            command: "analyze".into(),
            inputs: json!({}),
            results: json!({}),
            timing_ms: None,
        };
        let s = serde_json::to_string(&e).unwrap();
        assert!(!s.contains("timing_ms"));
        let e2 = OutputEnvelope {
            timing_ms: Some(7),
            ..e
        };
        assert!(serde_json::to_string(&e2).unwrap().contains("\"timing_ms\":7"));
    }
}
