//! Command-line front end. Exit codes: 0 all checks passed, 1 a check failed
//! (a witness file is written), 2 usage or input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{TranspositionWeights, WeightsJson};
use crate::error::{Error, Result};
use crate::kazhdan::{KazhdanConfig, DEFAULT_RESTARTS};
use crate::reptheory::defining_rep;
use crate::spectral::{gamma_member, gap_min, gap_rep, interlacing_check};
use crate::symgroup::Partition;
use crate::verify::{self, Check, ExperimentReport, Params, SubsetLaw, TrialRecord};

/// Seed used when neither `--seed` nor `OCTOPUS_LAB_SEED` is given.
pub const DEFAULT_SEED: u64 = 20_130_901;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "octopus-lab",
    version,
    about = "Spectral gaps, the octopus inequality and Kazhdan constants on the symmetric group"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Debug, Args, Serialize)]
struct Common {
    /// RNG seed; falls back to OCTOPUS_LAB_SEED, then to a fixed default
    #[arg(long, env = "OCTOPUS_LAB_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Numerical tolerance for eigenvalue comparisons
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
    /// Include a generation timestamp in the report
    #[arg(long)]
    timestamp: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Recompute the character tables behind X^a ≤ I(X) for a ⊢ 4 and
    /// Y^a ≤ I(Y) for a ⊢ 5, exactly and from irrep matrices
    Tables {
        #[command(flatten)]
        common: Common,
    },
    /// Check that the spectral gap of random weighted transposition graphs is
    /// attained on the defining representation (gap_min = defining gap, argmin ∋ (n-1,1))
    Aldous {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Probability of keeping each edge before the connectivity resample
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Check that w − θ(w) has a positive semidefinite Laplacian in every irrep
    Octopus {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Check this weight file instead of random weights
        #[arg(long)]
        weights: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Spectral gaps of a class sum J^a in every irrep (Schur scalars and
    /// matrices), or of a weight file; reports whether gap_min equals the defining gap
    Gap {
        #[arg(long)]
        n: Option<usize>,
        /// Cycle type, e.g. 4,1
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Kazhdan constant of the transpositions on the standard representation:
    /// optimizer estimate, sandwich bounds, direct-sum construction, saturation
    /// and the attempted strict-inequality certificate
    Kazhdan {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Compare gap_min with the defining gap for random nonnegative
    /// combinations of subset shuffle sums J_{n,A} (open conjecture, exploratory)
    Caputo {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Subset law: uniform (sizes 2..n), pairs, full, sizeK or uniformA-B
        #[arg(long, default_value = "uniform")]
        law: String,
        #[command(flatten)]
        common: Common,
    },
    /// Exact check of the quartic expansion of ŵ² on random rational weights
    #[command(name = "lemma-w2")]
    LemmaW2 {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Eigenvalue interlacing of Δ(w, D_n) and Δ(θ(w), D_n), the rank-1 PSD
    /// difference, and ψ(w, D_n) ≤ ψ(θw, D_{n-1})
    Interlace {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

/// Fully resolved configuration, embedded in every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub subcommand: String,
    pub n: Option<usize>,
    pub trials: Option<usize>,
    pub seed: u64,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub restarts: Option<usize>,
    pub class: Option<String>,
    pub weights: Option<PathBuf>,
    pub density: Option<f64>,
    pub law: Option<String>,
}

/// Reads and validates a weight file (`{"n", "edges": [{"i","j","num","den"}]}`).
pub fn load_weights(path: &Path) -> Result<TranspositionWeights> {
    let text = std::fs::read_to_string(path)?;
    let repr: WeightsJson = serde_json::from_str(&text)?;
    TranspositionWeights::from_json_repr(&repr)
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn config(sub: &str, common: &Common, default_tol: f64) -> RunConfig {
    RunConfig {
        subcommand: sub.into(),
        n: None,
        trials: None,
        seed: common.seed,
        tol: common.tol.unwrap_or(default_tol),
        format: common.format,
        out: common.out.clone(),
        threads: common.threads,
        restarts: None,
        class: None,
        weights: None,
        density: None,
        law: None,
    }
}

fn common_of(cmd: &Command) -> &Common {
    match cmd {
        Command::Tables { common }
        | Command::Aldous { common, .. }
        | Command::Octopus { common, .. }
        | Command::Gap { common, .. }
        | Command::Kazhdan { common, .. }
        | Command::Caputo { common, .. }
        | Command::LemmaW2 { common, .. }
        | Command::Interlace { common, .. } => common,
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let common = common_of(&cli.command).clone();
    if let Some(t) = common.tol {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::Precondition(format!("--tol must be a finite nonnegative number, got {t}")));
        }
    }
    if common.threads == Some(0) {
        return Err(Error::Precondition("--threads must be positive".into()));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = common.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let (cfg, reports) = pool.install(|| dispatch(cli.command))?;
    emit(&cfg, &common, &reports)
}

fn dispatch(cmd: Command) -> Result<(RunConfig, Vec<ExperimentReport>)> {
    match cmd {
        Command::Tables { common } => {
            let cfg = config("tables", &common, 1e-9);
            Ok((cfg, vec![verify::table1(), verify::table2()]))
        }
        Command::Aldous { n, trials, density, common } => {
            let mut cfg = config("aldous", &common, 1e-8);
            cfg.n = Some(n);
            cfg.trials = Some(trials);
            cfg.density = Some(density);
            let r = verify::verify_aldous(n, trials, cfg.seed, density, cfg.tol)?;
            Ok((cfg, vec![r]))
        }
        Command::Octopus { n, trials, weights, common } => {
            let mut cfg = config("octopus", &common, 1e-8);
            let r = if let Some(path) = &weights {
                let w = load_weights(path)?;
                cfg.n = Some(w.degree());
                cfg.weights = Some(path.clone());
                single_octopus(&w, cfg.tol)?
            } else {
                cfg.n = Some(n);
                cfg.trials = Some(trials);
                verify::verify_octopus(n, trials, cfg.seed, cfg.tol)?
            };
            Ok((cfg, vec![r]))
        }
        Command::Gap { n, class, weights, common } => {
            let mut cfg = config("gap", &common, 1e-9);
            let r = match (&class, &weights) {
                (Some(c), None) => {
                    let alpha: Partition = c.parse()?;
                    if let Some(n) = n {
                        if n != alpha.size() {
                            return Err(Error::Precondition(format!("--class {alpha} is not a partition of --n {n}")));
                        }
                    }
                    cfg.n = Some(alpha.size());
                    cfg.class = Some(alpha.to_string());
                    verify::classsum_report(&alpha, cfg.tol)?
                }
                (None, Some(path)) => {
                    let w = load_weights(path)?;
                    if n.is_some_and(|n| n != w.degree()) {
                        return Err(Error::Precondition("--n does not match the weight file".into()));
                    }
                    cfg.n = Some(w.degree());
                    cfg.weights = Some(path.clone());
                    single_gap(&w, cfg.tol)?
                }
                _ => return Err(Error::Precondition("gap needs exactly one of --class or --weights".into())),
            };
            Ok((cfg, vec![r]))
        }
        Command::Kazhdan { n, restarts, common } => {
            let mut cfg = config("kazhdan", &common, 1e-9);
            if restarts == 0 {
                return Err(Error::Precondition("--restarts must be positive".into()));
            }
            cfg.n = Some(n);
            cfg.restarts = Some(restarts);
            let kc = KazhdanConfig {
                restarts,
                seed: cfg.seed,
                ..KazhdanConfig::default()
            };
            let r = verify::verify_kazhdan(n, &kc, cfg.tol)?;
            Ok((cfg, vec![r]))
        }
        Command::Caputo { n, trials, law, common } => {
            let mut cfg = config("caputo", &common, 1e-8);
            let parsed = if law == "uniform" { SubsetLaw::uniform(n) } else { law.parse()? };
            cfg.n = Some(n);
            cfg.trials = Some(trials);
            cfg.law = Some(parsed.to_string());
            let r = verify::caputo_trial(n, trials, cfg.seed, parsed, cfg.tol)?;
            Ok((cfg, vec![r]))
        }
        Command::LemmaW2 { n, trials, common } => {
            let mut cfg = config("lemma-w2", &common, 0.0);
            cfg.n = Some(n);
            cfg.trials = Some(trials);
            let r = verify::verify_lemma_w2(n, trials, cfg.seed)?;
            Ok((cfg, vec![r]))
        }
        Command::Interlace { n, trials, weights, common } => {
            let mut cfg = config("interlace", &common, 1e-9);
            let r = if let Some(path) = &weights {
                let w = load_weights(path)?;
                cfg.n = Some(w.degree());
                cfg.weights = Some(path.clone());
                single_interlace(&w, cfg.tol)?
            } else {
                cfg.n = Some(n);
                cfg.trials = Some(trials);
                verify::verify_interlacing(n, trials, cfg.seed, cfg.tol)?
            };
            Ok((cfg, vec![r]))
        }
    }
}

fn weights_value(w: &TranspositionWeights) -> Value {
    serde_json::to_value(w.to_json_repr()).unwrap_or(Value::Null)
}

fn single_octopus(w: &TranspositionWeights, tol: f64) -> Result<ExperimentReport> {
    let n = w.degree();
    let diff = w.to_element().try_sub(&w.theta()?.to_element().embed(n))?;
    let m = gamma_member(&diff, tol)?;
    let text = format!(
        "octopus (weight file) n={n}: minimum eigenvalue {:.6e} at irrep {}; in Gamma: {}\n",
        m.min_eigenvalue, m.worst, m.member
    );
    let rec = TrialRecord::new(
        0,
        m.min_eigenvalue + tol,
        vec![Check::at_least("min_eigenvalue", m.min_eigenvalue, 0.0, tol)],
        json!({ "weights": weights_value(w), "worst_irrep": m.worst }),
    );
    Ok(ExperimentReport::new("octopus", Params::new(Some(n), 1, None, Some(tol)), vec![rec], json!(m), text))
}

fn single_gap(w: &TranspositionWeights, tol: f64) -> Result<ExperimentReport> {
    let n = w.degree();
    let a = w.to_element();
    let gm = gap_min(&a, tol)?;
    let gd = gap_rep(&a, &defining_rep(n)?)?;
    let mut text = format!("gaps of the weight file element in S_{n}\n");
    for g in &gm.per_irrep {
        let _ = writeln!(text, "  {:<16} {}", g.irrep.to_string(), verify::num(g.gap));
    }
    let _ = writeln!(
        text,
        "gap_min = {} at {}; defining gap = {}",
        gm.gap,
        gm.argmin.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "),
        gd
    );
    let rec = TrialRecord::new(
        0,
        tol * gd.abs().max(1.0) - (gm.gap - gd).abs(),
        vec![Check::close("gap_min_vs_defining", gm.gap, gd, tol)],
        json!({ "weights": weights_value(w) }),
    );
    Ok(ExperimentReport::new(
        "gap",
        Params::new(Some(n), 1, None, Some(tol)),
        vec![rec],
        json!({ "gap_min": gm, "defining_gap": verify::num(gd) }),
        text,
    ))
}

fn single_interlace(w: &TranspositionWeights, tol: f64) -> Result<ExperimentReport> {
    let n = w.degree();
    let r = interlacing_check(w, tol)?;
    let text = format!(
        "interlace (weight file) n={n}: spectrum {:?}, theta spectrum {:?}, pass {}\n",
        r.laplacian,
        r.theta_laplacian,
        r.pass()
    );
    let rec = TrialRecord::new(
        0,
        tol - r.rank_one_deviation,
        vec![
            Check::flag("interlaces", r.interlaces),
            Check::flag("rank_one_psd", r.rank_one_psd),
            Check::flag("theta_block_zero", r.theta_block_zero),
            Check::flag("gap_monotone", r.gap_monotone),
        ],
        json!({ "weights": weights_value(w) }),
    );
    Ok(ExperimentReport::new("interlace", Params::new(Some(n), 1, None, Some(tol)), vec![rec], json!(r), text))
}

fn tables_csv(reports: &[ExperimentReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let rows = r.summary["rows"].as_array().cloned().unwrap_or_default();
        let Some(first) = rows.first().and_then(Value::as_object) else {
            continue;
        };
        let keys: Vec<&String> = first.keys().collect();
        let _ = writeln!(out, "# {}", r.experiment);
        let _ = writeln!(out, "{}", keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(","));
        for row in &rows {
            let cells: Vec<String> = keys
                .iter()
                .map(|k| match &row[k.as_str()] {
                    Value::String(s) => s.clone(),
                    Value::Array(a) => format!(
                        "\"({})\"",
                        a.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
                    ),
                    v => v.to_string(),
                })
                .collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
    }
    out
}

fn emit(cfg: &RunConfig, common: &Common, reports: &[ExperimentReport]) -> Result<i32> {
    let pass = reports.iter().all(|r| r.pass);
    let body = match cfg.format {
        Format::Json => {
            let mut doc = json!({ "config": cfg, "pass": pass, "reports": reports });
            if common.timestamp {
                doc["generated_at_unix"] = json!(unix_now());
            }
            let mut s = serde_json::to_string_pretty(&doc)?;
            s.push('\n');
            s
        }
        Format::Csv => {
            if cfg.subcommand != "tables" {
                return Err(Error::Precondition("--format csv is only available for tables".into()));
            }
            tables_csv(reports)
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "config: {}", serde_json::to_string(cfg)?);
            if common.timestamp {
                let _ = writeln!(s, "generated_at_unix: {}", unix_now());
            }
            for r in reports {
                s.push_str(&r.text);
            }
            let _ = writeln!(s, "{}", if pass { "PASS" } else { "FAIL" });
            s
        }
    };
    match &cfg.out {
        Some(p) => std::fs::write(p, &body)?,
        None => print!("{body}"),
    }
    if pass {
        return Ok(EXIT_PASS);
    }
    let witness_path = match &cfg.out {
        Some(p) => {
            let mut s = p.clone().into_os_string();
            s.push(".witness.json");
            PathBuf::from(s)
        }
        None => PathBuf::from(format!("{}-witness.json", cfg.subcommand)),
    };
    let failing: Vec<Value> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| {
            json!({
                "experiment": r.experiment,
                "params": r.params,
                "failures": r.records.iter().filter(|t| !t.pass).collect::<Vec<_>>(),
            })
        })
        .collect();
    let doc = json!({ "config": cfg, "failed": failing });
    std::fs::write(&witness_path, serde_json::to_string_pretty(&doc)? + "\n")?;
    eprintln!("check failed; witness written to {}", witness_path.display());
    Ok(EXIT_FAIL)
}

fn unix_now() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}
