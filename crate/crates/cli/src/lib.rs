//! Command-line surface: evaluate measures, run verification campaigns,
//! emit bound-chain sweeps, and cross-check the quadrature oracle.
//!
//! Exit codes are a stable contract: 0 success / all checks pass, 1 when a
//! verification campaign records violations, 2 on usage or validation
//! errors.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use qent::checks::{
    list_checks, run_campaign, run_check, CampaignConfig, CheckInstance, RangeF,
};
use qent::deformed::{q_log, qlog_quadrature_oracle};
use qent::divergence::DivergenceMeasure;
use qent::entropy::{EntropyMeasure, QuasilinearMode};
use qent::{DivergencePair, ProbabilityDistribution, PsiKernel, QIndex};

#[derive(Parser)]
#[command(
    name = "qent",
    version,
    about = "Deformed-logarithm entropies, divergences, and inequality verification campaigns"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an entropy measure on a distribution file
    Compute(ComputeArgs),
    /// Evaluate a divergence measure on a pair of distribution files
    Divergence(DivergenceArgs),
    /// Run a randomized verification campaign over the check catalog
    Verify(VerifyArgs),
    /// Sweep one scalar of a check and emit its chain terms per point
    Bounds(BoundsArgs),
    /// Compare the closed-form q-logarithm against its quadrature oracle
    Oracle(OracleArgs),
    /// List the check catalog with parameter domains
    List(ListArgs),
}

#[derive(Args)]
struct ComputeArgs {
    /// shannon | tsallis | renyi | quasi-entropy | quasilinear | wada-suyari
    /// | biparam | arimoto | fermi-dirac | bose-einstein
    #[arg(long)]
    measure: String,
    /// Deformation index q
    #[arg(long, allow_negative_numbers = true)]
    q: Option<f64>,
    /// Second deformation index r
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    /// Kernel for quasilinear measures: log | power:<e> | qlog:<q> | bilog:<r>:<q>
    #[arg(long)]
    psi: Option<String>,
    /// Outer deformation for quasilinear measures: plain | tsallis:<q> | biparam:<r>:<q>
    #[arg(long)]
    mode: Option<String>,
    /// Distribution file: JSON {"weights": [...]}
    #[arg(long)]
    input: PathBuf,
    /// Write the JSON result here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DivergenceArgs {
    /// kl | tsallis | renyi | alpha | quasilinear | hat | quasi | biparam
    /// | arimoto | jeffreys | jensen-shannon | lin
    #[arg(long)]
    measure: String,
    /// Deformation index q
    #[arg(long, allow_negative_numbers = true)]
    q: Option<f64>,
    /// Second deformation index (the r-slot of two-index measures)
    #[arg(long, allow_negative_numbers = true)]
    s: Option<f64>,
    /// Alpha parameter of the alpha-divergence
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long)]
    psi: Option<String>,
    #[arg(long)]
    mode: Option<String>,
    /// First distribution file
    #[arg(long)]
    p: PathBuf,
    /// Second distribution file
    #[arg(long)]
    r: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated check ids / family names, or "all"
    #[arg(long, default_value = "all")]
    checks: String,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Distribution length range, "lo..hi"
    #[arg(long, default_value = "2..16")]
    n: String,
    #[arg(long = "q-range", default_value = "0.05..5")]
    q_range: String,
    #[arg(long = "r-range", default_value = "0.05..5")]
    r_range: String,
    #[arg(long = "x-range", default_value = "0.001..1000")]
    x_range: String,
    #[arg(long = "v-range", default_value = "0.001..0.999999")]
    v_range: String,
    /// Half-width of the excluded band around q = 1
    #[arg(long, default_value_t = 1e-3)]
    band: f64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Minimum sampled weight
    #[arg(long, default_value_t = 1e-9)]
    floor: f64,
    /// Write the report JSON here instead of stdout
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Check id or family name
    #[arg(long)]
    check: String,
    /// Scalar x: fixed value or sweep "lo..hi"
    #[arg(long)]
    x: Option<String>,
    /// Scalar q: fixed value or sweep "lo..hi"
    #[arg(long)]
    q: Option<String>,
    /// Scalar r: fixed value or sweep "lo..hi"
    #[arg(long)]
    s: Option<String>,
    /// Scalar v: fixed value or sweep "lo..hi"
    #[arg(long)]
    v: Option<String>,
    /// Number of sweep points
    #[arg(long, default_value_t = 10)]
    steps: usize,
    /// First distribution file, for checks that consume distributions
    #[arg(long)]
    p: Option<PathBuf>,
    /// Second distribution file
    #[arg(long)]
    r: Option<PathBuf>,
    /// csv | json
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, allow_negative_numbers = true)]
    x: f64,
    #[arg(long, allow_negative_numbers = true)]
    q: f64,
    #[arg(long, default_value_t = 64)]
    nodes: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ListArgs {
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Parse and run; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<i32, String> {
    match cmd {
        Cmd::Compute(a) => cmd_compute(a),
        Cmd::Divergence(a) => cmd_divergence(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Bounds(a) => cmd_bounds(a),
        Cmd::Oracle(a) => cmd_oracle(a),
        Cmd::List(a) => cmd_list(a),
    }
}

// ---------------------------------------------------------------------------
// shared parsing helpers
// ---------------------------------------------------------------------------

fn parse_q(value: Option<f64>, flag: &str) -> Result<QIndex, String> {
    let v = value.ok_or_else(|| format!("measure requires --{flag}"))?;
    QIndex::new(v).map_err(|_| format!("{flag} must be > 0 and finite, got {v}"))
}

fn parse_psi(spec: &str) -> Result<PsiKernel, String> {
    spec.parse()
}

fn parse_mode(spec: &str) -> Result<QuasilinearMode, String> {
    spec.parse()
}

fn parse_range(spec: &str, flag: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = spec
        .split_once("..")
        .ok_or_else(|| format!("--{flag} expects `lo..hi`, got `{spec}`"))?;
    let lo: f64 = lo.parse().map_err(|_| format!("bad number `{lo}` in --{flag}"))?;
    let hi: f64 = hi.parse().map_err(|_| format!("bad number `{hi}` in --{flag}"))?;
    Ok((lo, hi))
}

enum ValueOrRange {
    Value(f64),
    Range(f64, f64),
}

fn parse_value_or_range(spec: &str, flag: &str) -> Result<ValueOrRange, String> {
    if spec.contains("..") {
        let (lo, hi) = parse_range(spec, flag)?;
        Ok(ValueOrRange::Range(lo, hi))
    } else {
        spec.parse::<f64>()
            .map(ValueOrRange::Value)
            .map_err(|_| format!("bad number `{spec}` in --{flag}"))
    }
}

fn read_distribution(path: &PathBuf) -> Result<ProbabilityDistribution, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(output: &Option<PathBuf>, body: &str) -> Result<(), String> {
    match output {
        Some(path) => fs::write(path, body)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn params_json(pairs: &[(&str, Option<serde_json::Value>)]) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (name, value) in pairs {
        if let Some(v) = value {
            map.insert((*name).to_string(), v.clone());
        }
    }
    serde_json::Value::Object(map)
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

fn cmd_compute(a: ComputeArgs) -> Result<i32, String> {
    let p = read_distribution(&a.input)?;
    let measure = match a.measure.as_str() {
        "shannon" => EntropyMeasure::Shannon,
        "tsallis" => EntropyMeasure::Tsallis(parse_q(a.q, "q")?),
        "renyi" => EntropyMeasure::Renyi(parse_q(a.q, "q")?),
        "quasi-entropy" => EntropyMeasure::QuasiEntropy(parse_q(a.q, "q")?),
        "wada-suyari" => EntropyMeasure::WadaSuyari {
            r: parse_q(a.r, "r")?,
            q: parse_q(a.q, "q")?,
        },
        "biparam" => EntropyMeasure::Biparam {
            r: parse_q(a.r, "r")?,
            q: parse_q(a.q, "q")?,
        },
        "arimoto" => EntropyMeasure::Arimoto {
            r: parse_q(a.r, "r")?,
            q: parse_q(a.q, "q")?,
        },
        "fermi-dirac" => EntropyMeasure::FermiDirac(parse_q(a.r, "r")?),
        "bose-einstein" => EntropyMeasure::BoseEinstein(parse_q(a.r, "r")?),
        "quasilinear" => {
            let psi = a.psi.as_deref().ok_or("quasilinear requires --psi")?;
            let mode = a.mode.as_deref().ok_or("quasilinear requires --mode")?;
            EntropyMeasure::Quasilinear {
                kernel: parse_psi(psi)?,
                mode: parse_mode(mode)?,
            }
        }
        other => return Err(format!("unknown entropy measure `{other}`")),
    };
    let value = measure.evaluate(&p).map_err(|e| e.to_string())?;
    let body = json!({
        "measure": a.measure,
        "params": params_json(&[
            ("q", a.q.map(|v| json!(v))),
            ("r", a.r.map(|v| json!(v))),
            ("psi", a.psi.as_ref().map(|v| json!(v))),
            ("mode", a.mode.as_ref().map(|v| json!(v))),
        ]),
        "value": value,
    });
    emit(&a.output, &format!("{body}\n"))?;
    Ok(0)
}

fn cmd_divergence(a: DivergenceArgs) -> Result<i32, String> {
    let p = read_distribution(&a.p)?;
    let r = read_distribution(&a.r)?;
    let pair = DivergencePair::new(p, r).map_err(|e| e.to_string())?;
    let measure = match a.measure.as_str() {
        "kl" => DivergenceMeasure::Kl,
        "tsallis" => DivergenceMeasure::Tsallis(parse_q(a.q, "q")?),
        "renyi" => DivergenceMeasure::Renyi(parse_q(a.q, "q")?),
        "alpha" => DivergenceMeasure::Alpha(a.alpha.ok_or("alpha requires --alpha")?),
        "hat" => DivergenceMeasure::Hat {
            q: parse_q(a.q, "q")?,
            r: parse_q(a.s, "s")?,
        },
        "quasi" => DivergenceMeasure::Quasi(parse_q(a.q, "q")?),
        "biparam" => DivergenceMeasure::Biparam {
            r: parse_q(a.s, "s")?,
            q: parse_q(a.q, "q")?,
        },
        "arimoto" => DivergenceMeasure::Arimoto {
            r: parse_q(a.s, "s")?,
            q: parse_q(a.q, "q")?,
        },
        "jeffreys" => DivergenceMeasure::Jeffreys,
        "jensen-shannon" => DivergenceMeasure::JensenShannon,
        "lin" => DivergenceMeasure::Lin,
        "quasilinear" => {
            let psi = a.psi.as_deref().ok_or("quasilinear requires --psi")?;
            let mode = a.mode.as_deref().ok_or("quasilinear requires --mode")?;
            DivergenceMeasure::Quasilinear {
                kernel: parse_psi(psi)?,
                mode: parse_mode(mode)?,
            }
        }
        other => return Err(format!("unknown divergence measure `{other}`")),
    };
    let value = measure.evaluate(&pair).map_err(|e| e.to_string())?;
    let body = json!({
        "measure": a.measure,
        "params": params_json(&[
            ("q", a.q.map(|v| json!(v))),
            ("s", a.s.map(|v| json!(v))),
            ("alpha", a.alpha.map(|v| json!(v))),
            ("psi", a.psi.as_ref().map(|v| json!(v))),
            ("mode", a.mode.as_ref().map(|v| json!(v))),
        ]),
        "value": value,
    });
    emit(&a.output, &format!("{body}\n"))?;
    Ok(0)
}

fn cmd_verify(a: VerifyArgs) -> Result<i32, String> {
    let (n_lo, n_hi) = {
        let (lo, hi) = a
            .n
            .split_once("..")
            .ok_or_else(|| format!("--n expects `lo..hi`, got `{}`", a.n))?;
        let lo: usize = lo.parse().map_err(|_| format!("bad integer `{lo}` in --n"))?;
        let hi: usize = hi.parse().map_err(|_| format!("bad integer `{hi}` in --n"))?;
        (lo, hi)
    };
    let (q_lo, q_hi) = parse_range(&a.q_range, "q-range")?;
    let (r_lo, r_hi) = parse_range(&a.r_range, "r-range")?;
    let (x_lo, x_hi) = parse_range(&a.x_range, "x-range")?;
    let (v_lo, v_hi) = parse_range(&a.v_range, "v-range")?;
    let cfg = CampaignConfig {
        checks: a.checks.split(',').map(|s| s.trim().to_string()).collect(),
        trials: a.trials,
        seed: a.seed,
        n_range: (n_lo, n_hi),
        q_range: RangeF::new(q_lo, q_hi),
        r_range: RangeF::new(r_lo, r_hi),
        band: a.band,
        v_range: RangeF::new(v_lo, v_hi),
        x_range: RangeF::new(x_lo, x_hi),
        tol: a.tol,
        floor: a.floor,
    };
    let report = run_campaign(&cfg).map_err(|e| e.to_string())?;
    for check in &report.checks {
        eprintln!(
            "{:32} trials {:>8}  violations {:>6}  min slack {:>13.3e}  {:.1?}",
            check.id, check.trials, check.violations, check.min_slack, check.runtime
        );
    }
    let body = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
    emit(&a.report, &format!("{body}\n"))?;
    Ok(if report.pass { 0 } else { 1 })
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_bounds(a: BoundsArgs) -> Result<i32, String> {
    if a.steps == 0 {
        return Err("--steps must be >= 1".into());
    }
    // exactly one scalar flag carries a sweep range; the rest are fixed
    let mut sweep: Option<(&'static str, f64, f64)> = None;
    let mut fixed: Vec<(&'static str, f64)> = Vec::new();
    for (name, flag, raw) in [
        ("x", "x", &a.x),
        ("q", "q", &a.q),
        ("r", "s", &a.s),
        ("v", "v", &a.v),
    ] {
        if let Some(raw) = raw {
            match parse_value_or_range(raw, flag)? {
                ValueOrRange::Value(v) => fixed.push((name, v)),
                ValueOrRange::Range(lo, hi) => {
                    if sweep.is_some() {
                        return Err("only one scalar may carry a sweep range".into());
                    }
                    sweep = Some((name, lo, hi));
                }
            }
        }
    }
    let (sweep_name, lo, hi) =
        sweep.ok_or("the check needs one scalar sweep range (x, q, s, or v as `lo..hi`)")?;

    let mut dists = Vec::new();
    if let Some(path) = &a.p {
        dists.push(read_distribution(path)?);
    }
    if let Some(path) = &a.r {
        dists.push(read_distribution(path)?);
    }

    let mut labels: Option<Vec<String>> = None;
    let mut rows: Vec<(f64, Vec<f64>)> = Vec::new();
    for i in 0..a.steps {
        let value = if a.steps == 1 {
            lo
        } else {
            lo + (hi - lo) * i as f64 / (a.steps - 1) as f64
        };
        // the sandwich chains degenerate to all-zero terms at x = 1
        if sweep_name == "x" && value == 1.0 {
            continue;
        }
        let mut inst = CheckInstance::new(a.check.clone());
        for d in &dists {
            inst = inst.with_distribution(d.weights());
        }
        for &(name, v) in &fixed {
            inst = inst.with_scalar(name, v);
        }
        inst = inst.with_scalar(sweep_name, value);
        let out = run_check(&inst, 1e-9).map_err(|e| e.to_string())?;
        match &labels {
            None => labels = Some(out.chain.labels.clone()),
            Some(l) if *l != out.chain.labels => {
                return Err(format!(
                    "sweep crosses check regimes at {sweep_name} = {value}; restrict the range"
                ));
            }
            _ => {}
        }
        rows.push((value, out.chain.values));
    }
    let labels = labels.ok_or("sweep produced no evaluable points")?;

    let body = match a.format.as_str() {
        "csv" => {
            let mut out = String::new();
            let header: Vec<String> = std::iter::once(sweep_name.to_string())
                .chain(labels.iter().cloned())
                .map(|s| csv_field(&s))
                .collect();
            out.push_str(&header.join(","));
            out.push('\n');
            for (value, terms) in &rows {
                let mut cells = vec![format!("{value}")];
                cells.extend(terms.iter().map(|t| format!("{t}")));
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
        "json" => {
            let body = json!({
                "check": a.check,
                "sweep": sweep_name,
                "labels": labels,
                "rows": rows.iter().map(|(v, t)| {
                    let mut row = vec![*v];
                    row.extend_from_slice(t);
                    row
                }).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&body).map_err(|e| e.to_string())?)
        }
        other => return Err(format!("unknown format `{other}` (expected csv or json)")),
    };
    emit(&a.output, &body)?;
    Ok(0)
}

fn cmd_oracle(a: OracleArgs) -> Result<i32, String> {
    let q = QIndex::new(a.q).map_err(|_| format!("q must be > 0 and finite, got {}", a.q))?;
    let closed = q_log(a.x, q).map_err(|e| e.to_string())?;
    let quadrature = qlog_quadrature_oracle(a.x, q, a.nodes).map_err(|e| e.to_string())?;
    let body = json!({
        "closed_form": closed,
        "quadrature": quadrature,
        "abs_diff": (closed - quadrature).abs(),
    });
    emit(&a.output, &format!("{body}\n"))?;
    Ok(0)
}

fn cmd_list(a: ListArgs) -> Result<i32, String> {
    let body = serde_json::to_string_pretty(&list_checks()).map_err(|e| e.to_string())?;
    emit(&a.output, &format!("{body}\n"))?;
    Ok(0)
}
