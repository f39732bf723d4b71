//! Command-line front end: inspect complexes, enumerate and apply
//! bistellar moves, run seeded walks and sphere recognition, derive the
//! unique move-invariant local formula, and check the whole pipeline.
//!
//! Exit codes: 0 on success, 1 when a verification fails (a witness is
//! found, recognition stays unknown, proportionality breaks, a replay
//! diverges), 2 on usage errors.

use anyhow::{Context, Result};
use bistellar::calculus::{
    c_matrix, derive_psi, euler_psi, globalize, h_values, move_count_forms, proportionality,
    LocalFormula, Proportionality,
};
use bistellar::gadget::{a_vector, gadget_2, gadget_3, verify_gadget, GadgetCell};
use bistellar::harness::{balance_check, evaluate_invariant, invariance_report, Verdict};
use bistellar::io::{parse_complex_text, parse_move_log, render_complex_text, ComplexJson, MoveLine};
use bistellar::manifold::{verify_closed_manifold, ManifoldStatus, VerifyPolicy};
use bistellar::moves::{apply_move, enumerate_moves, BistellarMove};
use bistellar::rat::{rat_str, Rat};
use bistellar::simplex::Simplex;
use bistellar::walk::{
    random_walk, sphere_recognize, AnnealSchedule, Recognition, RecognizeBudget, WalkConfig,
};
use bistellar::{builtin_complex, SimplicialComplex};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::fmt;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(anyhow::Error::new(UsageError(msg.into())))
}

#[derive(Parser)]
#[command(
    name = "bistellar",
    about = "Bistellar moves on simplicial complexes and the f-vector calculus of local invariants",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// A complex given as a builtin name (`torus7`, `boundary_simplex:4`) or
/// as a path to a facet-list text file or a `.json` complex file.
#[derive(Args)]
struct ComplexArg {
    #[arg(value_name = "COMPLEX")]
    complex: String,
}

impl ComplexArg {
    fn resolve(&self) -> Result<(SimplicialComplex, String)> {
        let path = Path::new(&self.complex);
        if path.is_file() {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| self.complex.clone());
            let c = if path.extension().is_some_and(|e| e == "json") {
                let wrapped: ComplexJson =
                    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
                wrapped.to_complex()?
            } else {
                parse_complex_text(&text)
                    .with_context(|| format!("parsing {}", path.display()))?
            };
            return Ok((c, name));
        }
        let (name, param) = match self.complex.split_once(':') {
            Some((n, p)) => {
                let v: u32 = match p.parse() {
                    Ok(v) => v,
                    Err(_) => return usage(format!("'{p}' is not a dimension parameter")),
                };
                (n, Some(v))
            }
            None => (self.complex.as_str(), None),
        };
        match builtin_complex(name, param) {
            Ok(c) => Ok((c, self.complex.clone())),
            Err(e) => usage(format!("{e} (and no file named '{}' exists)", self.complex)),
        }
    }
}

/// Comma-separated vertex labels, e.g. `--sigma 1,2,3`.
#[derive(Clone)]
struct Labels(Vec<u32>);

fn parse_labels(s: &str) -> std::result::Result<Labels, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("'{t}' is not a vertex label"))
        })
        .collect::<std::result::Result<Vec<u32>, String>>()
        .map(Labels)
}

/// Comma-separated move-index weights, e.g. `--weights 1,0,2.5`.
#[derive(Clone)]
struct Weights(Vec<f64>);

fn parse_weights(s: &str) -> std::result::Result<Weights, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("'{t}' is not a weight"))
        })
        .collect::<std::result::Result<Vec<f64>, String>>()
        .map(Weights)
}

#[derive(Subcommand)]
enum Command {
    /// Show the f-vector, Euler characteristic, and manifold status.
    Info {
        #[command(flatten)]
        complex: ComplexArg,
        /// Attempted flips granted to each high-dimensional link check.
        #[arg(long, default_value_t = 10_000)]
        flip_budget: usize,
    },
    /// Enumerate valid moves, optionally for a single index.
    Moves {
        #[command(flatten)]
        complex: ComplexArg,
        /// Move index; all indices when omitted.
        #[arg(long)]
        i: Option<usize>,
    },
    /// Apply one move and print the resulting facet list.
    Apply {
        #[command(flatten)]
        complex: ComplexArg,
        /// Move index.
        #[arg(long)]
        i: usize,
        /// Vertices of sigma, comma separated.
        #[arg(long, value_parser = parse_labels)]
        sigma: Labels,
        /// Vertices of tau, comma separated; omitted for 0-moves (a fresh
        /// label is picked).
        #[arg(long, value_parser = parse_labels)]
        tau: Option<Labels>,
        /// Write the result here instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Run a seeded random walk of bistellar moves.
    Walk {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        seed: u64,
        /// Relative weight per move index, comma separated.
        #[arg(long, value_parser = parse_weights)]
        weights: Option<Weights>,
        /// Filter proposals through the annealing acceptance rule.
        #[arg(long)]
        anneal: bool,
        /// Write the end complex (facet-list text) here.
        #[arg(long)]
        out_complex: Option<String>,
        /// Write the move log (JSON lines) here.
        #[arg(long)]
        out_log: Option<String>,
    },
    /// Re-apply a move log to a complex and print the result.
    Replay {
        #[command(flatten)]
        complex: ComplexArg,
        /// Move log file (JSON lines).
        #[arg(long)]
        log: String,
        /// Write the result here instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Search for a flip sequence onto a simplex boundary.
    RecognizeSphere {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        seed: u64,
        /// Attempted proposals before giving up.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        /// Write the certificate move log (JSON lines) here.
        #[arg(long)]
        out_log: Option<String>,
    },
    /// Derive the unique move-invariant local formula for one dimension.
    Derive {
        #[arg(long)]
        n: usize,
    },
    /// Check derived-versus-Euler proportionality over a dimension range.
    VerifyTheorem {
        /// A dimension `N` or inclusive range `A..B`.
        #[arg(long)]
        n: String,
    },
    /// Build a gadget cell and report its verification and a-vector.
    Gadget {
        /// Cell dimension (2 or 3).
        #[arg(long)]
        n: usize,
        /// Write the cell (facets plus metadata, JSON) here.
        #[arg(long)]
        emit: Option<String>,
    },
    /// Re-evaluate a formula along a walk and report the verdict.
    Invariance {
        #[command(flatten)]
        complex: ComplexArg,
        /// Formula name: euler, euler-reduced, derived, or f0.
        #[arg(long)]
        psi: String,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Evaluate the balance identity of one move under a formula.
    Balance {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        i: usize,
        #[arg(long, value_parser = parse_labels)]
        sigma: Labels,
        #[arg(long, value_parser = parse_labels)]
        tau: Option<Labels>,
        /// Formula name: euler, euler-reduced, derived, or f0.
        #[arg(long)]
        psi: String,
    },
}

fn rat_json(r: &Rat) -> Value {
    Value::String(rat_str(r))
}

fn rats_json(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(rat_json).collect())
}

fn f_json(c: &SimplicialComplex) -> Value {
    json!(c.f_vector().entries())
}

fn move_json(mv: &BistellarMove) -> Value {
    serde_json::to_value(MoveLine::from_move(mv)).expect("plain data")
}

fn formula_json(psi: &LocalFormula) -> Value {
    json!({
        "coeffs_from_minus_one": rats_json(psi.coeffs_from_minus_one()),
        "rendered": psi.render(),
    })
}

fn named_formula(name: &str, n: usize) -> Result<LocalFormula> {
    match name {
        "euler" => Ok(euler_psi(n, false)),
        "euler-reduced" => Ok(euler_psi(n, true)),
        "derived" => Ok(derive_psi(n)),
        "f0" => {
            let mut coeffs = vec![Rat::from_integer(0); n + 1];
            coeffs[1] = Rat::from_integer(1);
            Ok(LocalFormula::new(n, coeffs))
        }
        other => usage(format!(
            "unknown formula '{other}' (expected euler, euler-reduced, derived, or f0)"
        )),
    }
}

fn build_move(
    m: &SimplicialComplex,
    i: usize,
    sigma: &[u32],
    tau: Option<&[u32]>,
) -> Result<BistellarMove> {
    let n = m.dim();
    if n < 2 {
        return usage(format!("complex has dimension {n}; moves need at least 2"));
    }
    let tau = match (tau, i) {
        (Some(t), _) => Simplex::from_labels(t),
        (None, 0) => Simplex::vertex(m.fresh_label()),
        (None, _) => return usage("--tau is required for moves of index above 0"),
    };
    Ok(BistellarMove {
        n: n as usize,
        i,
        sigma: Simplex::from_labels(sigma),
        tau,
    })
}

fn write_or_print(out: &Option<String>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {path}"))?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn emit(report: &Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(report).expect("valid json");
    // A closed pipe (e.g. piping into `head`) is not an error worth a panic.
    let _ = writeln!(std::io::stdout(), "{text}");
}

/// Exit 1 (verification failure) when false.
type CmdResult = Result<bool>;

fn cmd_info(arg: &ComplexArg, flip_budget: usize) -> CmdResult {
    let (c, name) = arg.resolve()?;
    let policy = VerifyPolicy {
        flip_budget,
        ..VerifyPolicy::default()
    };
    let status = verify_closed_manifold(&c, &policy);
    let (verdict, witness) = match &status {
        ManifoldStatus::Verified => ("verified", Value::Null),
        ManifoldStatus::No(s) => ("no", json!(s.labels())),
        ManifoldStatus::Unknown => ("unknown", Value::Null),
    };
    emit(&json!({
        "schema": 1,
        "name": name,
        "dim": c.dim(),
        "f_vector": f_json(&c),
        "euler_characteristic": c.euler_characteristic(),
        "connected": c.is_connected(),
        "closed": c.boundary_complex().is_none(),
        "closed_manifold": verdict,
        "witness_vertex": witness,
    }));
    Ok(true)
}

fn cmd_moves(arg: &ComplexArg, i: Option<usize>) -> CmdResult {
    let (c, name) = arg.resolve()?;
    let n = c.dim();
    if n < 2 {
        return usage(format!("complex has dimension {n}; moves need at least 2"));
    }
    let indices: Vec<usize> = match i {
        Some(i) => vec![i],
        None => (0..=n as usize).collect(),
    };
    let mut moves = Vec::new();
    for i in indices {
        for mv in enumerate_moves(&c, i)? {
            moves.push(move_json(&mv));
        }
    }
    emit(&json!({
        "schema": 1,
        "name": name,
        "dim": n,
        "count": moves.len(),
        "moves": moves,
    }));
    Ok(true)
}

fn cmd_apply(
    arg: &ComplexArg,
    i: usize,
    sigma: &[u32],
    tau: Option<&[u32]>,
    out: &Option<String>,
) -> CmdResult {
    let (c, _) = arg.resolve()?;
    let mv = build_move(&c, i, sigma, tau)?;
    let next = apply_move(&c, &mv)?;
    write_or_print(out, &render_complex_text(&next))?;
    Ok(true)
}

fn cmd_walk(
    arg: &ComplexArg,
    steps: usize,
    seed: u64,
    weights: Option<Vec<f64>>,
    anneal: bool,
    out_complex: &Option<String>,
    out_log: &Option<String>,
) -> CmdResult {
    let (c, name) = arg.resolve()?;
    let n = c.dim();
    if n < 2 {
        return usage(format!("complex has dimension {n}; walks need at least 2"));
    }
    let cfg = WalkConfig {
        steps,
        seed,
        weights: weights.unwrap_or_else(|| vec![1.0; n as usize + 1]),
        anneal: anneal.then(AnnealSchedule::default),
    };
    let (end, log) = random_walk(&c, &cfg)?;
    if let Some(path) = out_complex {
        fs::write(path, render_complex_text(&end)).with_context(|| format!("writing {path}"))?;
    }
    if let Some(path) = out_log {
        fs::write(path, bistellar::io::render_move_log(&log))
            .with_context(|| format!("writing {path}"))?;
    }
    emit(&json!({
        "schema": 1,
        "name": name,
        "seed": seed,
        "steps_requested": steps,
        "steps_applied": log.len(),
        "start_f": f_json(&c),
        "end_f": json!(end.f_vector().entries()),
    }));
    Ok(true)
}

fn cmd_replay(arg: &ComplexArg, log_path: &str, out: &Option<String>) -> CmdResult {
    let (c, _) = arg.resolve()?;
    let text = fs::read_to_string(log_path).with_context(|| format!("reading {log_path}"))?;
    let moves = parse_move_log(&text)?;
    let mut cur = c;
    for (idx, mv) in moves.iter().enumerate() {
        cur = apply_move(&cur, mv).with_context(|| format!("log line {}", idx + 1))?;
    }
    write_or_print(out, &render_complex_text(&cur))?;
    Ok(true)
}

fn cmd_recognize(
    arg: &ComplexArg,
    seed: u64,
    max_attempts: usize,
    out_log: &Option<String>,
) -> CmdResult {
    let (c, name) = arg.resolve()?;
    let budget = RecognizeBudget {
        max_attempts,
        seed,
        schedule: AnnealSchedule::default(),
    };
    let recognition = sphere_recognize(&c, &budget);
    let ok = match &recognition {
        Recognition::Sphere(log) => {
            if let Some(path) = out_log {
                fs::write(path, bistellar::io::render_move_log(log))
                    .with_context(|| format!("writing {path}"))?;
            }
            emit(&json!({
                "schema": 1,
                "name": name,
                "result": "sphere",
                "moves": log.len(),
                "seed": seed,
            }));
            true
        }
        Recognition::Unknown => {
            emit(&json!({
                "schema": 1,
                "name": name,
                "result": "unknown",
                "seed": seed,
            }));
            false
        }
    };
    Ok(ok)
}

fn proportionality_json(n: usize) -> Result<(Value, bool)> {
    match proportionality(n) {
        Ok(Proportionality::Lambda(l)) => Ok((
            json!({"kind": "lambda", "lambda": rat_str(&l)}),
            true,
        )),
        Ok(Proportionality::BothZero) => Ok((json!({"kind": "both_zero"}), true)),
        Err(_) => Ok((json!({"kind": "not_proportional"}), false)),
    }
}

fn cmd_derive(n: usize) -> CmdResult {
    if n < 2 {
        return usage("--n must be at least 2");
    }
    let spectrum = h_values(n);
    let psi = derive_psi(n);
    let euler_red = euler_psi(n, true);
    let forms: Vec<Value> = move_count_forms(n)
        .iter()
        .enumerate()
        .map(|(i, form)| {
            let lhs = format!("m_{i} - m_{}", n - 1 - i);
            json!({
                "lhs": lhs,
                "constant": rat_str(&form.constant),
                "coeffs": rats_json(&form.coeffs),
                "rendered": form.render(&lhs),
            })
        })
        .collect();
    let (prop, ok) = proportionality_json(n)?;
    emit(&json!({
        "schema": 1,
        "n": n,
        "h_values_from_minus_one": rats_json(spectrum.values()),
        "degenerate": spectrum.degenerate,
        "c_matrix": json!(c_matrix(n)),
        "move_count_forms": forms,
        "psi": formula_json(&psi),
        "euler_psi_full": formula_json(&euler_psi(n, false)),
        "euler_psi_reduced": formula_json(&euler_red),
        "proportionality": prop,
        "global": rats_json(&globalize(n, &psi).coeffs),
    }));
    Ok(ok)
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    if let Some((a, b)) = s.split_once("..") {
        let lo: usize = a.parse().map_err(|_| anyhow::Error::new(UsageError(format!("bad range start '{a}'"))))?;
        let hi: usize = b.parse().map_err(|_| anyhow::Error::new(UsageError(format!("bad range end '{b}'"))))?;
        if lo < 2 || hi < lo {
            return usage(format!("'{s}' is not a valid dimension range"));
        }
        Ok((lo, hi))
    } else {
        let n: usize = s.parse().map_err(|_| anyhow::Error::new(UsageError(format!("bad dimension '{s}'"))))?;
        if n < 2 {
            return usage("dimensions start at 2");
        }
        Ok((n, n))
    }
}

fn cmd_verify_theorem(range: &str) -> CmdResult {
    let (lo, hi) = parse_range(range)?;
    let mut rows = Vec::new();
    let mut all_ok = true;
    for n in lo..=hi {
        let (prop, ok) = proportionality_json(n)?;
        all_ok &= ok;
        rows.push(json!({"n": n, "proportionality": prop}));
    }
    emit(&json!({
        "schema": 1,
        "range": [lo, hi],
        "pass": all_ok,
        "results": rows,
    }));
    Ok(all_ok)
}

fn gadget_json(k: &GadgetCell) -> Value {
    json!({
        "schema": 1,
        "name": format!("gadget_{}", k.n()),
        "dim": k.cell.dim(),
        "facets": k.cell.facets().map(|f| f.labels()).collect::<Vec<_>>(),
        "base": k.base.0,
        "boundary": k.boundary.iter().map(|v| v.0).collect::<Vec<_>>(),
        "moves": k.moves.iter().map(move_json).collect::<Vec<_>>(),
    })
}

fn cmd_gadget(n: usize, emit_path: &Option<String>) -> CmdResult {
    let k = match n {
        2 => gadget_2(),
        3 => gadget_3(),
        other => return usage(format!("no gadget cell is built for dimension {other}")),
    };
    let report = verify_gadget(&k);
    let a = a_vector(&k);
    if let Some(path) = emit_path {
        let file = gadget_json(&k);
        fs::write(path, serde_json::to_string_pretty(&file).expect("valid json"))
            .with_context(|| format!("writing {path}"))?;
    }
    emit(&json!({
        "schema": 1,
        "n": n,
        "f_vector": f_json(&k.cell),
        "base": k.base.0,
        "boundary": k.boundary.iter().map(|v| v.0).collect::<Vec<_>>(),
        "a_vector": a.entries,
        "moves": k.moves.iter().map(move_json).collect::<Vec<_>>(),
        "verified": report.pass(),
        "failures": report.failures,
    }));
    Ok(report.pass())
}

fn cmd_invariance(arg: &ComplexArg, psi_name: &str, steps: usize, seed: u64) -> CmdResult {
    let (c, name) = arg.resolve()?;
    let n = c.dim();
    if n < 2 {
        return usage(format!("complex has dimension {n}; walks need at least 2"));
    }
    let psi = named_formula(psi_name, n as usize)?;
    let cfg = WalkConfig::uniform(steps, seed, n as usize);
    let report = invariance_report(&c, &psi, &cfg)?;
    let (verdict, ok) = match &report.verdict {
        Verdict::Invariant(v) => (json!({"kind": "invariant", "value": rat_str(v)}), true),
        Verdict::Witness {
            step,
            mv,
            before,
            after,
        } => (
            json!({
                "kind": "witness",
                "step": step,
                "move": move_json(mv),
                "before": rat_str(before),
                "after": rat_str(after),
            }),
            false,
        ),
    };
    emit(&json!({
        "schema": 1,
        "name": name,
        "psi": psi_name,
        "seed": seed,
        "steps_requested": report.steps_requested,
        "steps_applied": report.steps_applied,
        "start_value": rat_str(&report.start_value),
        "verdict": verdict,
    }));
    Ok(ok)
}

fn cmd_balance(
    arg: &ComplexArg,
    i: usize,
    sigma: &[u32],
    tau: Option<&[u32]>,
    psi_name: &str,
) -> CmdResult {
    let (c, name) = arg.resolve()?;
    let mv = build_move(&c, i, sigma, tau)?;
    let psi = named_formula(psi_name, c.dim() as usize)?;
    let value = balance_check(&c, &mv, |f| psi.eval(f))?;
    let total = evaluate_invariant(&c, &psi)?;
    emit(&json!({
        "schema": 1,
        "name": name,
        "psi": psi_name,
        "move": move_json(&mv),
        "balance": rat_str(&value),
        "zero": value == Rat::from_integer(0),
        "sum_before": rat_str(&total),
    }));
    Ok(true)
}

fn run(cli: Cli) -> CmdResult {
    match &cli.command {
        Command::Info {
            complex,
            flip_budget,
        } => cmd_info(complex, *flip_budget),
        Command::Moves { complex, i } => cmd_moves(complex, *i),
        Command::Apply {
            complex,
            i,
            sigma,
            tau,
            out,
        } => cmd_apply(complex, *i, &sigma.0, tau.as_ref().map(|t| t.0.as_slice()), out),
        Command::Walk {
            complex,
            steps,
            seed,
            weights,
            anneal,
            out_complex,
            out_log,
        } => cmd_walk(
            complex,
            *steps,
            *seed,
            weights.clone().map(|w| w.0),
            *anneal,
            out_complex,
            out_log,
        ),
        Command::Replay { complex, log, out } => cmd_replay(complex, log, out),
        Command::RecognizeSphere {
            complex,
            seed,
            budget,
            out_log,
        } => cmd_recognize(complex, *seed, *budget, out_log),
        Command::Derive { n } => cmd_derive(*n),
        Command::VerifyTheorem { n } => cmd_verify_theorem(n),
        Command::Gadget { n, emit } => cmd_gadget(*n, emit),
        Command::Invariance {
            complex,
            psi,
            steps,
            seed,
        } => cmd_invariance(complex, psi, *steps, *seed),
        Command::Balance {
            complex,
            i,
            sigma,
            tau,
            psi,
        } => cmd_balance(complex, *i, &sigma.0, tau.as_ref().map(|t| t.0.as_slice()), psi),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            if e.downcast_ref::<UsageError>().is_some() {
                eprintln!("usage error: {e}");
                ExitCode::from(2)
            } else {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        }
    }
}
