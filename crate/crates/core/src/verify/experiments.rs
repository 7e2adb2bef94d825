use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{
    nonnegative_rational, num, positive_rational, rational_json, render_table, to_f64, trial_rng, Check,
    ExperimentReport, Params, TrialRecord,
};
use crate::algebra::{octopus_hat, quartic_rhs, AlgebraElement, Rational, TranspositionWeights};
use crate::error::{Error, Result};
use crate::kazhdan::{
    conjclass_kazhdan_value, cube_root_vector, defining_gap_minimizer, displacement_profile, kazhdan_rep_estimate,
    rem2_direct_sum_witness, saturation_profile_check, strict_inequality_certificate, transpositions, KazhdanConfig,
};
use crate::reptheory::{character_table, defining_rep, dimension, irrep, regular_rep, REGULAR_REP_MAX_N};
use crate::spectral::{gamma_member, gap_min, gap_rep, interlacing_check};
use crate::symgroup::{generates_symmetric_group, Partition, Permutation};

fn check_range(what: &str, n: usize, lo: usize, hi: usize) -> Result<()> {
    if n < lo || n > hi {
        return Err(Error::Precondition(format!("{what} needs {lo} <= n <= {hi}, got n = {n}")));
    }
    Ok(())
}

fn run_trials<F>(trials: usize, seed: u64, f: F) -> Result<Vec<TrialRecord>>
where
    F: Fn(usize, &mut ChaCha8Rng) -> Result<TrialRecord> + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|t| f(t, &mut trial_rng(seed, t)))
        .collect()
}

fn weights_json(w: &TranspositionWeights) -> Value {
    serde_json::to_value(w.to_json_repr()).unwrap_or(Value::Null)
}

/// Random weights on all pairs; each edge is zero with probability `p_zero`.
/// Resampled until some weight touches the last point.
fn random_theta_weights(rng: &mut ChaCha8Rng, n: usize, p_zero: f64, star_only: bool) -> TranspositionWeights {
    loop {
        let mut w = TranspositionWeights::new(n);
        for i in 1..=n {
            for j in i + 1..=n {
                if star_only && j != n {
                    continue;
                }
                w.set(i, j, nonnegative_rational(rng, p_zero)).expect("valid edge");
            }
        }
        if !w.star_weights().iter().all(Zero::is_zero) {
            return w;
        }
    }
}

/// Exact check of the quartic expansion of `ŵ²` on random nonnegative weights.
pub fn verify_lemma_w2(n: usize, trials: usize, seed: u64) -> Result<ExperimentReport> {
    check_range("lemma-w2", n, 3, 6)?;
    let records = run_trials(trials, seed, |t, rng| {
        // every third trial forces a zero star weight
        let mut w = random_theta_weights(rng, n, 0.2, false);
        if t % 3 == 2 && n > 3 {
            let i = rng.gen_range(1..n);
            w.set(i, n, Rational::zero())?;
            if w.star_weights().iter().all(Zero::is_zero) {
                w.set(if i == 1 { 2 } else { 1 }, n, Rational::from_integer(1.into()))?;
            }
        }
        let x = w.star_weights();
        let hat = octopus_hat(&w)?;
        let lhs = hat.convolve(&hat)?;
        let rhs = quartic_rhs(&x, n)?;
        let checks = vec![
            Check::exact("identity_coefficient", &lhs.coefficient(&Permutation::identity(n)).to_string(), &rhs.coefficient(&Permutation::identity(n)).to_string()),
            Check::exact("support_size", &lhs.len(), &rhs.len()),
            Check::flag("square_equals_expansion", lhs == rhs),
        ];
        Ok(TrialRecord::new(
            t,
            0.0,
            checks,
            json!({ "x": x.iter().map(rational_json).collect::<Vec<_>>(), "weights": weights_json(&w) }),
        ))
    })?;
    let passed = records.iter().filter(|r| r.pass).count();
    let text = format!("lemma-w2 n={n}: {passed}/{trials} trials with exact equality\n");
    Ok(ExperimentReport::new(
        "lemma-w2",
        Params::new(Some(n), trials, Some(seed), Some(0.0)),
        records,
        json!({ "exact_matches": passed }),
        text,
    ))
}

/// `w − θ(w) ∈ Γ(S_n)` on random nonnegative transposition weights.
pub fn verify_octopus(n: usize, trials: usize, seed: u64, tol: f64) -> Result<ExperimentReport> {
    check_range("octopus", n, 3, 7)?;
    let records = run_trials(trials, seed, |t, rng| {
        let w = random_theta_weights(rng, n, 0.3, t % 4 == 3);
        let diff = w.to_element().try_sub(&w.theta()?.to_element().embed(n))?;
        let m = gamma_member(&diff, tol)?;
        Ok(TrialRecord::new(
            t,
            m.min_eigenvalue + tol,
            vec![Check::at_least("min_eigenvalue", m.min_eigenvalue, 0.0, tol)],
            json!({ "weights": weights_json(&w), "worst_irrep": m.worst }),
        ))
    })?;
    let worst = records.iter().map(|r| r.slack - tol).fold(f64::INFINITY, f64::min);
    let text = format!(
        "octopus n={n}: {}/{trials} trials in Gamma(S_n), worst minimum eigenvalue {worst:.3e} (tol {tol:e})\n",
        records.iter().filter(|r| r.pass).count()
    );
    Ok(ExperimentReport::new(
        "octopus",
        Params::new(Some(n), trials, Some(seed), Some(tol)),
        records,
        json!({ "worst_min_eigenvalue": num(worst) }),
        text,
    ))
}

/// Random connected weighted graph: each edge kept with probability `density`.
fn random_connected_weights(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Result<TranspositionWeights> {
    for _ in 0..100_000 {
        let mut w = TranspositionWeights::new(n);
        for i in 1..=n {
            for j in i + 1..=n {
                if rng.gen_bool(density) {
                    w.set(i, j, positive_rational(rng))?;
                }
            }
        }
        if w.is_connected() {
            return Ok(w);
        }
    }
    Err(Error::Precondition(format!("density {density} too low to sample a connected graph")))
}

/// `ψ(w) = ψ(w, D_n)` on random connected transposition weights.
pub fn verify_aldous(n: usize, trials: usize, seed: u64, density: f64, tol: f64) -> Result<ExperimentReport> {
    check_range("aldous", n, 3, 7)?;
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::Precondition(format!("density must lie in (0, 1], got {density}")));
    }
    let standard = Partition::hook(n, n - 1);
    let d = defining_rep(n)?;
    let records = run_trials(trials, seed, |t, rng| {
        let w = random_connected_weights(rng, n, density)?;
        let a = w.to_element();
        let gm = gap_min(&a, tol)?;
        let gd = gap_rep(&a, &d)?;
        let slack = tol * gd.abs().max(1.0) - (gm.gap - gd).abs();
        Ok(TrialRecord::new(
            t,
            slack,
            vec![
                Check::close("gap_min_vs_defining", gm.gap, gd, tol),
                Check::flag("argmin_contains_standard", gm.argmin.contains(&standard)),
            ],
            json!({ "weights": weights_json(&w), "argmin": gm.argmin }),
        ))
    })?;
    let text = format!(
        "aldous n={n}: {}/{trials} trials with gap_min = defining gap (tol {tol:e})\n",
        records.iter().filter(|r| r.pass).count()
    );
    Ok(ExperimentReport::new(
        "aldous",
        Params::new(Some(n), trials, Some(seed), Some(tol)).with("density", json!(density)),
        records,
        json!({}),
        text,
    ))
}

/// Eigenvalue interlacing of `Δ(w, D_n)` and `Δ(θ(w), D_n)` on random weights.
pub fn verify_interlacing(n: usize, trials: usize, seed: u64, tol: f64) -> Result<ExperimentReport> {
    check_range("interlace", n, 3, 9)?;
    let records = run_trials(trials, seed, |t, rng| {
        let w = random_theta_weights(rng, n, 0.3, false);
        let r = interlacing_check(&w, tol)?;
        Ok(TrialRecord::new(
            t,
            tol - r.rank_one_deviation,
            vec![
                Check::flag("interlaces", r.interlaces),
                Check::at_most("rank_one_deviation", r.rank_one_deviation, 0.0, tol),
                Check::flag("rank_one_psd", r.rank_one_psd),
                Check::flag("theta_block_zero", r.theta_block_zero),
                Check::at_most("gap_vs_theta_gap", r.gap, r.theta_gap, tol * r.theta_gap.abs().max(1.0)),
            ],
            json!({ "weights": weights_json(&w), "laplacian": r.laplacian, "theta_laplacian": r.theta_laplacian }),
        ))
    })?;
    let text = format!(
        "interlace n={n}: {}/{trials} trials interlace with rank-1 PSD difference (tol {tol:e})\n",
        records.iter().filter(|r| r.pass).count()
    );
    Ok(ExperimentReport::new(
        "interlace",
        Params::new(Some(n), trials, Some(seed), Some(tol)),
        records,
        json!({}),
        text,
    ))
}

/// Gaps of the class sum `J^α` in every irrep, from the Schur scalar
/// `𝕀 − |C^α|χ^β(α)/f_β` and (for `n ≤ 6`) from explicit irrep matrices.
pub fn classsum_report(alpha: &Partition, tol: f64) -> Result<ExperimentReport> {
    let n = alpha.size();
    check_range("class-sum report", n, 2, 7)?;
    let ct = character_table(n);
    let j = AlgebraElement::class_sum(alpha);
    let class_size = Rational::from_integer(alpha.class_size().into());
    let trivial = Partition::hook(n, n);
    let mut gaps: Vec<(Partition, Option<Rational>)> = Vec::new();
    let mut records = Vec::new();
    for (k, beta) in ct.partitions().iter().enumerate() {
        let exact = if *beta == trivial {
            None
        } else {
            let f = Rational::from_integer(dimension(beta).into());
            let chi = Rational::from_integer(ct.value(beta, alpha).into());
            Some(&class_size - &class_size * chi / f)
        };
        let as_f64 = exact.as_ref().map_or(f64::INFINITY, to_f64);
        let mut checks = Vec::new();
        let mut slack = f64::INFINITY;
        if n <= 6 {
            let numeric = gap_rep(&j, &irrep(beta))?;
            checks.push(Check::close("schur_vs_matrix", numeric, as_f64, tol));
            if as_f64.is_finite() {
                slack = tol * as_f64.abs().max(1.0) - (numeric - as_f64).abs();
            }
        }
        records.push(TrialRecord::new(
            k,
            slack,
            checks,
            json!({ "beta": beta, "gap": exact.as_ref().map_or(json!("inf"), rational_json) }),
        ));
        gaps.push((beta.clone(), exact));
    }
    let min = gaps
        .iter()
        .filter_map(|g| g.1.clone())
        .min()
        .expect("n >= 2 has a nontrivial irrep");
    let argmin: Vec<Partition> = gaps
        .iter()
        .filter(|g| g.1.as_ref() == Some(&min))
        .map(|g| g.0.clone())
        .collect();
    let standard = Partition::hook(n, n - 1);
    let defining = gaps
        .iter()
        .find(|g| g.0 == standard)
        .and_then(|g| g.1.clone())
        .expect("standard irrep is nontrivial");
    let numeric_defining = gap_rep(&j, &defining_rep(n)?)?;
    let k = records.len();
    records.push(TrialRecord::new(
        k,
        tol * to_f64(&defining).abs().max(1.0) - (numeric_defining - to_f64(&defining)).abs(),
        vec![Check::close("defining_gap_matrix", numeric_defining, to_f64(&defining), tol)],
        json!({ "rep": "defining" }),
    ));
    let identity_holds = min == defining;

    let rows: Vec<Vec<String>> = gaps
        .iter()
        .map(|(b, g)| {
            vec![
                b.to_string(),
                g.as_ref().map_or("inf".into(), |r| r.to_string()),
                if argmin.contains(b) { "*".into() } else { String::new() },
            ]
        })
        .collect();
    let mut text = format!("gaps of J^{alpha} in S_{n}\n");
    text.push_str(&render_table(&["irrep", "gap", "min"], &rows));
    text.push_str(&format!(
        "gap_min = {min} at {}; defining gap = {defining}; gap_min = defining gap: {identity_holds}\n",
        argmin.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
    ));

    Ok(ExperimentReport::new(
        "classsum",
        Params::new(Some(n), 0, None, Some(tol)).with("class", json!(alpha)),
        records,
        json!({
            "class": alpha,
            "gap_min": min.to_string(),
            "gap_min_value": to_f64(&min),
            "argmin": argmin,
            "defining_gap": defining.to_string(),
            "defining_gap_value": to_f64(&defining),
            "identity_holds": identity_holds,
        }),
        text,
    ))
}

/// Distribution of subset families `{A}` for the shuffle-sum experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetLaw {
    /// Subset sizes uniform on `min..=max`, family size uniform on `1..=n`.
    Uniform { min: usize, max: usize },
    /// The single subset `{1..n}`.
    Full,
}

impl SubsetLaw {
    pub fn uniform(n: usize) -> Self {
        Self::Uniform { min: 2, max: n }
    }

    pub fn pairs() -> Self {
        Self::Uniform { min: 2, max: 2 }
    }
}

impl fmt::Display for SubsetLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Uniform { min, max } if min == max => write!(f, "size{min}"),
            Self::Uniform { min, max } => write!(f, "uniform{min}-{max}"),
            Self::Full => write!(f, "full"),
        }
    }
}

impl FromStr for SubsetLaw {
    type Err = Error;

    /// `pairs`, `full`, `sizeK` or `uniformA-B`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("unknown subset law '{s}'"));
        match s {
            "pairs" => Ok(Self::pairs()),
            "full" => Ok(Self::Full),
            _ => {
                if let Some(k) = s.strip_prefix("size") {
                    let k = k.parse().map_err(|_| bad())?;
                    Ok(Self::Uniform { min: k, max: k })
                } else if let Some(r) = s.strip_prefix("uniform") {
                    let (a, b) = r.split_once('-').ok_or_else(bad)?;
                    Ok(Self::Uniform {
                        min: a.parse().map_err(|_| bad())?,
                        max: b.parse().map_err(|_| bad())?,
                    })
                } else {
                    Err(bad())
                }
            }
        }
    }
}

struct Family {
    subsets: Vec<Vec<usize>>,
    coefficients: Vec<Rational>,
}

impl Family {
    fn to_json(&self) -> Value {
        Value::Array(
            self.subsets
                .iter()
                .zip(&self.coefficients)
                .map(|(a, c)| json!({ "subset": a, "coefficient": rational_json(c) }))
                .collect(),
        )
    }

    fn element(&self, n: usize) -> Result<AlgebraElement> {
        let mut w = AlgebraElement::zero(n);
        for (a, c) in self.subsets.iter().zip(&self.coefficients) {
            w = w.try_add(&AlgebraElement::shuffle_sum(n, a)?.scale(c))?;
        }
        Ok(w)
    }

    /// Orbit check on the transpositions inside each subset, plus an odd
    /// permutation in the support.
    fn generates(&self, n: usize) -> bool {
        let mut gens = Vec::new();
        for a in &self.subsets {
            for (x, &i) in a.iter().enumerate() {
                for &j in &a[x + 1..] {
                    gens.push(Permutation::transposition(n, i, j).expect("distinct"));
                }
            }
        }
        let has_odd = !gens.is_empty();
        has_odd && generates_symmetric_group(n, &gens)
    }
}

fn random_family(rng: &mut ChaCha8Rng, n: usize, law: SubsetLaw) -> Result<Family> {
    let (lo, hi) = match law {
        SubsetLaw::Full => {
            return Ok(Family {
                subsets: vec![(1..=n).collect()],
                coefficients: vec![Rational::from_integer(1.into())],
            })
        }
        SubsetLaw::Uniform { min, max } => (min, max),
    };
    if lo < 2 || hi > n || lo > hi {
        return Err(Error::Precondition(format!("subset sizes {lo}..={hi} must lie in 2..={n}")));
    }
    let points: Vec<usize> = (1..=n).collect();
    for _ in 0..100_000 {
        let m = rng.gen_range(1..=n.max(2) * 2);
        let mut subsets = Vec::with_capacity(m);
        let mut coefficients = Vec::with_capacity(m);
        for _ in 0..m {
            let k = rng.gen_range(lo..=hi);
            let mut a: Vec<usize> = points.choose_multiple(rng, k).copied().collect();
            a.sort_unstable();
            subsets.push(a);
            coefficients.push(positive_rational(rng));
        }
        let fam = Family { subsets, coefficients };
        if fam.generates(n) {
            return Ok(fam);
        }
    }
    Err(Error::Precondition("could not sample a generating subset family".into()))
}

/// Compares `ψ(w)` with `ψ(w, D_n)` for `w = Σ α_A J_{n,A}` over random subset
/// families. Disagreements are re-checked at a tighter tolerance and, when
/// `n ≤ 5`, against the regular representation.
pub fn caputo_trial(n: usize, trials: usize, seed: u64, law: SubsetLaw, tol: f64) -> Result<ExperimentReport> {
    check_range("caputo", n, 3, 6)?;
    let d = defining_rep(n)?;
    let records = run_trials(trials, seed, |t, rng| {
        let fam = random_family(rng, n, law)?;
        let w = fam.element(n)?;
        let gm = gap_min(&w, tol)?;
        let gd = gap_rep(&w, &d)?;
        let agree = (gm.gap - gd).abs() <= tol * gd.abs().max(1.0);
        let mut checks = vec![Check::close("gap_min_vs_defining", gm.gap, gd, tol)];
        let mut input = json!({ "family": fam.to_json(), "argmin": gm.argmin });
        if !agree {
            let tight = tol * 1e-3;
            checks.push(Check::close("gap_min_vs_defining_tight", gm.gap, gd, tight));
            if n <= REGULAR_REP_MAX_N.min(5) {
                let reg = gap_rep(&w, &regular_rep(n)?)?;
                checks.push(Check::close("regular_vs_defining", reg, gd, tol));
                input["regular_gap"] = num(reg);
            }
            input["counterexample_candidate"] = json!(true);
        }
        Ok(TrialRecord::new(t, tol * gd.abs().max(1.0) - (gm.gap - gd).abs(), checks, input))
    })?;
    let disagreements = records.iter().filter(|r| !r.pass).count();
    let mut text = format!(
        "caputo n={n} law={law}: {}/{trials} families with gap_min = defining gap (tol {tol:e})\n",
        trials - disagreements
    );
    if disagreements > 0 {
        text.push_str(&format!(
            "!!! {disagreements} DISAGREEMENT(S): candidate counterexamples, inspect the witness file\n"
        ));
    }
    Ok(ExperimentReport::new(
        "caputo",
        Params::new(Some(n), trials, Some(seed), Some(tol)).with("law", json!(law.to_string())),
        records,
        json!({ "disagreements": disagreements }),
        text,
    ))
}

/// Kazhdan estimate for the transpositions on `D′`, with the class value,
/// the direct-sum construction, the saturation check and (for `n ≥ 4`) an
/// attempted strict-inequality certificate.
pub fn verify_kazhdan(n: usize, config: &KazhdanConfig, tol: f64) -> Result<ExperimentReport> {
    check_range("kazhdan", n, 3, 7)?;
    let d = defining_rep(n)?;
    let tn = transpositions(n);
    let est = kazhdan_rep_estimate(&d, &tn, config)?;
    let class_value = conjclass_kazhdan_value(n);
    let mut checks = vec![
        Check::at_least("kappa_sq_vs_2gap_over_q", est.kappa.powi(2), 2.0 * est.gap / tn.len() as f64, 1e-6),
        Check::at_most("kappa_sq_vs_2gap", est.kappa.powi(2), 2.0 * est.gap, 1e-6),
    ];
    let minimizer = if n == 3 {
        let remark = cube_root_vector();
        for (q, disp) in tn.iter().zip(displacement_profile(&d, &tn, &remark)?) {
            checks.push(Check::close(&format!("remark_vector_{q}"), disp, class_value, 1e-10));
        }
        checks.push(Check::close("estimate_vs_class_value", est.kappa, class_value, 1e-4));
        remark
    } else {
        defining_gap_minimizer(n)?
    };
    let rem2 = rem2_direct_sum_witness(n, &minimizer, 1e-9)?;
    checks.push(Check::at_most("direct_sum_spread", rem2.spread, 0.0, 1e-9));
    checks.push(Check::close("direct_sum_value", rem2.value, class_value, 1e-6));
    let sat = saturation_profile_check(&est, 1e-6);
    checks.push(Check::flag("saturation_forces_constant_profile", sat.consistent));
    let certificate = if n >= 4 {
        Some(strict_inequality_certificate(n, config)?)
    } else {
        None
    };

    let mut text = format!(
        "kazhdan n={n}: estimate {:.10} on D' with T_n (class value 2/sqrt(n-1) = {class_value:.10})\n",
        est.kappa
    );
    text.push_str(&format!(
        "  sandwich 2psi/|Q| = {:.10} <= kappa^2 = {:.10} <= 2psi = {:.10}\n",
        2.0 * est.gap / tn.len() as f64,
        est.kappa.powi(2),
        2.0 * est.gap
    ));
    text.push_str(&format!(
        "  direct sum: value {:.10}, spread {:.2e}\n  saturated: {}, profile constant: {} (spread {:.3e})\n",
        rem2.value, rem2.spread, sat.saturated, sat.profile_constant, sat.spread
    ));
    if let Some(c) = &certificate {
        text.push_str(&format!(
            "  strict certificate: {:?}, max displacement {:.10}, threshold {:.10}, margin {:.3e}\n",
            c.status, c.max_displacement, c.threshold, c.margin
        ));
    }
    let record = TrialRecord::new(0, 0.0, checks, json!({ "witness": est.witness }));
    Ok(ExperimentReport::new(
        "kazhdan",
        Params::new(Some(n), config.restarts, Some(config.seed), Some(tol)).with("betas", json!(config.betas)),
        vec![record],
        json!({
            "class_value": class_value,
            "estimate": est,
            "direct_sum": rem2,
            "saturation": sat,
            "certificate": certificate,
        }),
        text,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn lemma_small() {
        for n in 3..=5 {
            let r = verify_lemma_w2(n, 4, 1).unwrap();
            assert!(r.pass, "{}", serde_json::to_string(&r).unwrap());
        }
        assert!(verify_lemma_w2(7, 1, 1).is_err());
    }

    #[test]
    fn octopus_and_aldous_small() {
        assert!(verify_octopus(4, 6, 3, 1e-9).unwrap().pass);
        assert!(verify_aldous(4, 6, 3, 0.5, 1e-9).unwrap().pass);
        assert!(verify_interlacing(4, 6, 3, 1e-9).unwrap().pass);
    }

    #[test]
    fn counterexample_class() {
        let r = classsum_report(&p("4,1"), 1e-9).unwrap();
        assert!(r.pass);
        assert_eq!(r.summary["gap_min"], "24");
        assert_eq!(r.summary["defining_gap"], "30");
        assert_eq!(r.summary["argmin"], json!([[2, 2, 1]]));
        assert_eq!(r.summary["identity_holds"], false);
        let even = classsum_report(&p("3,1,1"), 1e-9).unwrap();
        assert_eq!(even.summary["gap_min"], "0");
        assert!(even.summary["argmin"].as_array().unwrap().contains(&json!([1, 1, 1, 1, 1])));
        let tr = classsum_report(&Partition::hook(6, 2), 1e-9).unwrap();
        assert_eq!(tr.summary["gap_min"], "6");
        assert_eq!(tr.summary["identity_holds"], true);
    }

    #[test]
    fn caputo_laws() {
        let full = caputo_trial(4, 1, 0, SubsetLaw::Full, 1e-9).unwrap();
        assert!(full.pass);
        let pairs = caputo_trial(4, 5, 2, SubsetLaw::pairs(), 1e-9).unwrap();
        assert!(pairs.pass);
        let mixed = caputo_trial(4, 5, 2, SubsetLaw::uniform(4), 1e-9).unwrap();
        assert!(mixed.pass);
        assert_eq!("uniform2-5".parse::<SubsetLaw>().unwrap(), SubsetLaw::uniform(5));
        assert_eq!("size3".parse::<SubsetLaw>().unwrap(), SubsetLaw::Uniform { min: 3, max: 3 });
        assert!("bogus".parse::<SubsetLaw>().is_err());
    }

    #[test]
    fn full_shuffle_gap_is_factorial() {
        let w = AlgebraElement::shuffle_sum(4, &[1, 2, 3, 4]).unwrap();
        let gm = gap_min(&w, 1e-9).unwrap();
        assert!((gm.gap - 24.0).abs() < 1e-9);
        assert_eq!(gm.argmin.len(), 4);
        assert!((gap_rep(&w, &defining_rep(4).unwrap()).unwrap() - 24.0).abs() < 1e-9);
    }

    #[test]
    fn reports_replay_bit_for_bit() {
        let a = serde_json::to_string(&verify_aldous(5, 4, 9, 0.4, 1e-9).unwrap()).unwrap();
        let b = serde_json::to_string(&verify_aldous(5, 4, 9, 0.4, 1e-9).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn kazhdan_report() {
        let cfg = KazhdanConfig {
            restarts: 8,
            seed: 3,
            ..KazhdanConfig::default()
        };
        let r = verify_kazhdan(3, &cfg, 1e-9).unwrap();
        assert!(r.pass, "{}", r.text);
        let r4 = verify_kazhdan(4, &cfg, 1e-9).unwrap();
        assert!(r4.pass, "{}", r4.text);
        assert_eq!(r4.summary["certificate"]["status"], "inconclusive");
    }
}
