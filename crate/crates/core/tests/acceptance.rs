//! Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned below.
//!
//! Run with `cargo test --test acceptance`. The process fails if any
//! criterion fails, except those listed in `UNATTAINABLE`, which are still
//! computed with their pinned tolerance and reported as FAIL.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use octopus_lab::algebra::{AlgebraElement, Rational, TranspositionWeights};
use octopus_lab::kazhdan::{
    conjclass_kazhdan_value, cube_root_vector, defining_gap_minimizer, displacement_profile, kazhdan_rep_estimate,
    rem2_direct_sum_witness, strict_inequality_certificate, transpositions, KazhdanConfig, KazhdanEstimate,
};
use octopus_lab::reptheory::{character_table, defining_rep, dimension, irrep, mn_character, transposition_ratio};
use octopus_lab::spectral::{gap_min, gap_rep, symmetric_spectrum};
use octopus_lab::symgroup::{factorial, partitions_of, Partition, Permutation};
use octopus_lab::verify;

const SEED: u64 = 20_130_901;

const TABLES_RUNTIME: Duration = Duration::from_secs(1);
const TABLES_MATRIX_TOL: f64 = 1e-9;

const LEMMA_TRIALS: usize = 25;
const LEMMA_DEGREES: [usize; 4] = [3, 4, 5, 6];
const LEMMA_RUNTIME: Duration = Duration::from_secs(120);

const OCTOPUS_TRIALS: usize = 50;
const OCTOPUS_TOL: f64 = 1e-8;
const OCTOPUS_RUNTIME: Duration = Duration::from_secs(300);

const ALDOUS_TRIALS: usize = 100;
const ALDOUS_TOL: f64 = 1e-8;
const ALDOUS_DENSITY: f64 = 0.5;
const ALDOUS_RUNTIME: Duration = Duration::from_secs(600);

const PSI_TOL: f64 = 1e-9;
const CLASS_TOL: f64 = 1e-9;

const INTERLACE_TRIALS: usize = 50;
const INTERLACE_TOL: f64 = 1e-9;

const REMARK_TOL: f64 = 1e-10;
const OPTIMIZER_TOL: f64 = 1e-4;
const DIRECT_SUM_SPREAD: f64 = 1e-9;
const DIRECT_SUM_TOL: f64 = 1e-6;
const STRICT_MARGIN: f64 = 0.01;
const KAZHDAN_RUNTIME: Duration = Duration::from_secs(180);
const SANDWICH_TOL: f64 = 1e-6;

const TRACE_TOL: f64 = 1e-9;
const BRANCH_TOL: f64 = 1e-9;

const CAPUTO_TOL: &str = "1e-8";

/// Criteria that cannot hold: for every unit `u ⊥ (1,…,1)`,
/// `Σ_{t∈T_n} ‖D(t)u − u‖² = 2n`, hence `max_t ‖D(t)u − u‖² ≥ 4/(n−1)` and no
/// vector beats `2/√(n−1)`, let alone by a margin.
const UNATTAINABLE: [&str; 1] = ["8c"];

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn outcome(id: &'static str, pass: bool, detail: String) -> Outcome {
    Outcome { id, pass, detail }
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_octopus-lab")
}

fn run_cli(dir: &Path, args: &[&str]) -> (i32, String) {
    let out = Command::new(bin())
        .args(args)
        .current_dir(dir)
        .env_remove("OCTOPUS_LAB_SEED")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn class_representative(alpha: &Partition) -> Permutation {
    let n = alpha.size();
    let mut cycles = Vec::new();
    let mut next = 1;
    for &part in alpha.parts() {
        cycles.push((next..next + part).collect::<Vec<usize>>());
        next += part;
    }
    Permutation::from_cycles(n, &cycles).unwrap()
}

fn criterion_1() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let (code, stdout) = run_cli(dir.path(), &["tables", "--format", "json"]);
    let elapsed = start.elapsed();
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap_or_default();
    let t1 = verify::table1();
    let t2 = verify::table2();
    let matrix_ok = t1
        .records
        .iter()
        .chain(&t2.records)
        .flat_map(|r| &r.checks)
        .filter(|c| c.name.starts_with("lambda_star"))
        .all(|c| c.pass && c.tol <= TABLES_MATRIX_TOL);
    let pass = code == 0 && doc["pass"] == true && t1.pass && t2.pass && matrix_ok && elapsed < TABLES_RUNTIME;
    outcome(
        "1",
        pass,
        format!("tables exit {code}, table1 {}, table2 {}, {elapsed:.2?}", t1.pass, t2.pass),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut counts = Vec::new();
    for n in LEMMA_DEGREES {
        let r = verify::verify_lemma_w2(n, LEMMA_TRIALS, SEED).unwrap();
        ok &= r.pass && r.records.len() == LEMMA_TRIALS;
        counts.push(format!("n={n}: {}/{}", LEMMA_TRIALS - r.failures(), LEMMA_TRIALS));
    }
    let elapsed = start.elapsed();
    outcome("2", ok && elapsed < LEMMA_RUNTIME, format!("{} exact, {elapsed:.2?}", counts.join(", ")))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut worst = f64::INFINITY;
    for n in 3..=7 {
        let r = verify::verify_octopus(n, OCTOPUS_TRIALS, SEED, OCTOPUS_TOL).unwrap();
        ok &= r.pass && r.records.len() == OCTOPUS_TRIALS;
        worst = worst.min(r.summary["worst_min_eigenvalue"].as_f64().unwrap_or(f64::NEG_INFINITY));
    }
    let elapsed = start.elapsed();
    outcome(
        "3",
        ok && elapsed < OCTOPUS_RUNTIME,
        format!("worst minimum eigenvalue {worst:.3e} >= -{OCTOPUS_TOL:e}, {elapsed:.2?}"),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    for n in 3..=7 {
        let r = verify::verify_aldous(n, ALDOUS_TRIALS, SEED, ALDOUS_DENSITY, ALDOUS_TOL).unwrap();
        ok &= r.pass && r.records.len() == ALDOUS_TRIALS;
    }
    let elapsed = start.elapsed();
    outcome(
        "4",
        ok && elapsed < ALDOUS_RUNTIME,
        format!("gap_min = defining gap and (n-1,1) in argmin on 5x{ALDOUS_TRIALS} graphs, {elapsed:.2?}"),
    )
}

fn criterion_5() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for n in 2..=8 {
        let tn = Rational::from_integer(BigInt::from(n * (n - 1) / 2));
        let trivial = Partition::hook(n, n);
        let ct = character_table(n);
        let t_class = Partition::hook(n, 2);
        let exact = partitions_of(n)
            .into_iter()
            .filter(|b| *b != trivial)
            .map(|b| {
                let frob = &tn - transposition_ratio(&b);
                let f = Rational::from_integer(BigInt::from(dimension(&b)));
                let mn = &tn - &tn * Rational::from_integer(ct.value(&b, &t_class).into()) / f;
                assert_eq!(frob, mn, "Frobenius ratio disagrees with characters at {b}");
                frob
            })
            .min()
            .unwrap();
        let numeric = gap_min(&AlgebraElement::class_sum(&t_class), PSI_TOL).unwrap().gap;
        let target = n as f64;
        ok &= exact == Rational::from_integer(BigInt::from(n)) && (numeric - target).abs() <= PSI_TOL;
        detail.push(format!("{n}:{exact}/{numeric:.12}"));
    }
    outcome("5", ok, format!("psi(T_n) exact/float: {}", detail.join(" ")))
}

fn criterion_6() -> Outcome {
    let r = verify::classsum_report(&"4,1".parse().unwrap(), CLASS_TOL).unwrap();
    let gm = r.summary["gap_min_value"].as_f64().unwrap();
    let gd = r.summary["defining_gap_value"].as_f64().unwrap();
    let argmin_ok = r.summary["argmin"] == serde_json::json!([[2, 2, 1]]);
    let j = AlgebraElement::class_sum(&"4,1".parse().unwrap());
    let numeric_min = gap_min(&j, CLASS_TOL).unwrap();
    let numeric_def = gap_rep(&j, &defining_rep(5).unwrap()).unwrap();
    let mut ok = r.pass
        && argmin_ok
        && (gm - 24.0).abs() <= CLASS_TOL
        && (gd - 30.0).abs() <= CLASS_TOL
        && (numeric_min.gap - 24.0).abs() <= CLASS_TOL
        && numeric_min.argmin == vec!["2,2,1".parse::<Partition>().unwrap()]
        && (numeric_def - 30.0).abs() <= CLASS_TOL;
    let mut even_classes = 0;
    for n in 2..=7 {
        let sign = Partition::new(vec![1; n]).unwrap();
        for alpha in partitions_of(n).into_iter().filter(Partition::is_even_class) {
            let rep = verify::classsum_report(&alpha, CLASS_TOL).unwrap();
            let at_sign = rep
                .records
                .iter()
                .find(|t| t.input["beta"] == serde_json::json!(sign))
                .map(|t| t.input["gap"].clone());
            ok &= rep.summary["gap_min"] == "0" && at_sign == Some(serde_json::json!("0"));
            even_classes += 1;
        }
    }
    outcome(
        "6",
        ok,
        format!("J^(4,1): gap_min {gm} at (2,2,1), defining {gd}; {even_classes} even classes with gap 0 at sign"),
    )
}

fn criterion_7() -> Outcome {
    let mut ok = true;
    for n in 3..=7 {
        let r = verify::verify_interlacing(n, INTERLACE_TRIALS, SEED, INTERLACE_TOL).unwrap();
        ok &= r.pass && r.records.len() == INTERLACE_TRIALS;
    }
    outcome("7", ok, format!("interlacing, rank-1 PSD and gap monotonicity on 5x{INTERLACE_TRIALS} instances"))
}

fn kazhdan_config() -> KazhdanConfig {
    KazhdanConfig {
        seed: SEED,
        ..KazhdanConfig::default()
    }
}

fn criterion_8(estimates: &mut Vec<KazhdanEstimate>) -> Vec<Outcome> {
    let start = Instant::now();
    let cfg = kazhdan_config();
    let d3 = defining_rep(3).unwrap();
    let t3 = transpositions(3);
    let remark = displacement_profile(&d3, &t3, &cube_root_vector()).unwrap();
    let remark_ok = remark.iter().all(|x| (x - 2f64.sqrt()).abs() <= REMARK_TOL);
    let est3 = kazhdan_rep_estimate(&d3, &t3, &cfg).unwrap();
    let opt_ok = (est3.kappa - conjclass_kazhdan_value(3)).abs() <= OPTIMIZER_TOL;
    let a = outcome(
        "8a",
        remark_ok && opt_ok,
        format!("remark vector profile {remark:?}, optimizer {:.10} vs sqrt(2)", est3.kappa),
    );
    estimates.push(est3);

    let mut b_ok = true;
    let mut b_detail = Vec::new();
    for n in 3..=5 {
        let u = if n == 3 { cube_root_vector() } else { defining_gap_minimizer(n).unwrap() };
        let p = rem2_direct_sum_witness(n, &u, 1e-9).unwrap();
        b_ok &= p.spread < DIRECT_SUM_SPREAD && (p.value - conjclass_kazhdan_value(n)).abs() <= DIRECT_SUM_TOL;
        b_detail.push(format!("n={n}: value {:.10} spread {:.1e}", p.value, p.spread));
    }
    let b = outcome("8b", b_ok, b_detail.join("; "));

    let mut c_ok = true;
    let mut c_detail = Vec::new();
    for n in 4..=5 {
        let cert = strict_inequality_certificate(n, &cfg).unwrap();
        c_ok &= cert.max_displacement <= conjclass_kazhdan_value(n) - STRICT_MARGIN;
        c_detail.push(format!(
            "n={n}: best max displacement {:.10} vs threshold {:.10} - {STRICT_MARGIN} ({:?})",
            cert.max_displacement, cert.threshold, cert.status
        ));
        estimates.push(cert.estimate);
    }
    let elapsed = start.elapsed();
    let c = outcome("8c", c_ok && elapsed < KAZHDAN_RUNTIME, format!("{}, {elapsed:.2?}", c_detail.join("; ")));
    vec![a, b, c]
}

fn criterion_9(estimates: &[KazhdanEstimate]) -> Outcome {
    let mut ok = !estimates.is_empty();
    let mut detail = Vec::new();
    for e in estimates {
        let q = e.profile.len() as f64;
        let k2 = e.kappa * e.kappa;
        ok &= k2 >= 2.0 * e.gap / q - SANDWICH_TOL && k2 <= 2.0 * e.gap + SANDWICH_TOL;
        detail.push(format!("{:.6} <= {:.6} <= {:.6}", 2.0 * e.gap / q, k2, 2.0 * e.gap));
    }
    outcome("9", ok, detail.join("; "))
}

fn criterion_10() -> Outcome {
    let mut ok = true;
    for n in 1..=8 {
        let ct = character_table(n);
        let nf = BigInt::from(factorial(n));
        for b in ct.partitions() {
            for g in ct.partitions() {
                let expect = if b == g { nf.clone() } else { BigInt::zero() };
                ok &= ct.inner_product(b, g) == expect;
            }
        }
    }
    let orth = ok;
    for n in 1..=10 {
        let s: BigUint = partitions_of(n).iter().map(|b| dimension(b).pow(2)).sum();
        ok &= s == factorial(n);
    }
    let dims = ok;
    let mut traces = 0;
    for n in 1..=6 {
        for beta in partitions_of(n) {
            let rep = irrep(&beta);
            for alpha in partitions_of(n) {
                let tr = rep.matrix_of(&class_representative(&alpha)).trace();
                ok &= (tr - mn_character(&beta, &alpha).unwrap() as f64).abs() <= TRACE_TOL;
                traces += 1;
            }
        }
    }
    let trace_ok = ok;
    for n in 3..=6 {
        let mut w = TranspositionWeights::new(n - 1);
        for i in 1..n {
            for j in i + 1..n {
                w.set(i, j, Rational::new(BigInt::from(i + 2 * j), BigInt::from(7))).unwrap();
            }
        }
        let a = w.to_element();
        for alpha in partitions_of(n) {
            let big = symmetric_spectrum(&irrep(&alpha).evaluate(&a.embed(n)).unwrap()).unwrap();
            let mut parts: Vec<f64> = alpha
                .branch_down()
                .iter()
                .flat_map(|b| symmetric_spectrum(&irrep(b).evaluate(&a).unwrap()).unwrap())
                .collect();
            parts.sort_by(f64::total_cmp);
            ok &= big.len() == parts.len() && big.iter().zip(&parts).all(|(x, y)| (x - y).abs() <= BRANCH_TOL);
        }
    }
    outcome(
        "10",
        ok,
        format!(
            "orthogonality {orth}, sum f^2 = n! {dims}, {traces} traces match {trace_ok}, branching {}",
            ok
        ),
    )
}

fn criterion_11() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let (code, stdout) = run_cli(
        dir.path(),
        &["caputo", "--n", "5", "--trials", "20", "--tol", CAPUTO_TOL, "--format", "json"],
    );
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap_or_default();
    let disagreements = doc["reports"][0]["summary"]["disagreements"].as_u64();
    let witness = dir.path().join("caputo-witness.json").exists();
    let pass = code == 0 && disagreements == Some(0) && !witness;
    outcome(
        "11",
        pass,
        format!("caputo exit {code}, disagreements {disagreements:?}, witness file {witness}"),
    )
}

fn main() {
    let mut estimates = Vec::new();
    let mut outcomes = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
    ];
    outcomes.extend(criterion_8(&mut estimates));
    outcomes.push(criterion_9(&estimates));
    outcomes.push(criterion_10());
    outcomes.push(criterion_11());

    let mut blocking = 0;
    for o in &outcomes {
        let known = UNATTAINABLE.contains(&o.id);
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let note = if !o.pass && known { " [unattainable: max_t |D(t)u-u|^2 >= 4/(n-1)]" } else { "" };
        println!("[{tag}] criterion {:>3}: {}{note}", o.id, o.detail);
        if !o.pass && !known {
            blocking += 1;
        }
    }
    if blocking > 0 {
        eprintln!("{blocking} acceptance criteria failed");
        std::process::exit(1);
    }
}
