//! Kazhdan constants `κ(Q, R) = inf_{‖v‖=1, v ⊥ V^G} max_{q∈Q} ‖R(q)v − v‖`.
//!
//! Estimates are upper bounds: the displacement of the best unit vector the
//! optimizer finds. Complex vectors are realified, `v = B(a + ib)` with `B`
//! an orthonormal basis of `(V^G)^⊥`, so the search runs over the unit sphere
//! of `ℝ^k × ℝ^k` and never leaves the complement.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{rat, AlgebraElement};
use crate::error::{Error, Result};
use crate::reptheory::{defining_rep, RepLabel, UnitaryRep};
use crate::spectral::{gap_rep, symmetric_eigen};
use crate::symgroup::{all_permutations, generates_symmetric_group, Permutation};

/// A complex coordinate stored as `[re, im]`.
pub type Complex = [f64; 2];

pub const DEFAULT_RESTARTS: usize = 32;

/// Tolerance on `‖v‖ = 1` for caller-supplied vectors.
pub const UNIT_TOL: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
pub struct KazhdanConfig {
    pub restarts: usize,
    pub seed: u64,
    /// Inverse temperatures of the log-sum-exp smoothing, applied in order.
    pub betas: Vec<f64>,
    pub iters_per_stage: usize,
}

impl Default for KazhdanConfig {
    fn default() -> Self {
        Self {
            restarts: DEFAULT_RESTARTS,
            seed: 0,
            betas: vec![1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7],
            iters_per_stage: 400,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KazhdanEstimate {
    pub rep: String,
    /// Generators in cycle notation.
    pub generators: Vec<String>,
    /// Upper bound on `κ(Q, R)`: the maximum of `profile`.
    pub kappa: f64,
    /// Unit witness in the coordinates of the representation space.
    pub witness: Vec<Complex>,
    /// `‖R(q)v − v‖` for each generator, in input order.
    pub profile: Vec<f64>,
    /// `ψ(Q̂, R)` for the symmetrized generator sum.
    pub gap: f64,
    pub restarts: usize,
    pub seed: u64,
}

impl KazhdanEstimate {
    /// `2ψ/|Q| ≤ κ² ≤ 2ψ`, each side with slack `tol`.
    pub fn sandwich_holds(&self, tol: f64) -> bool {
        let q = self.profile.len() as f64;
        let k2 = self.kappa * self.kappa;
        k2 >= 2.0 * self.gap / q - tol && k2 <= 2.0 * self.gap + tol
    }
}

/// All transpositions of `{1..n}`, ordered by `(i, j)`.
pub fn transpositions(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(Permutation::transposition(n, i, j).expect("valid indices"));
        }
    }
    out
}

fn norm(v: &[Complex]) -> f64 {
    v.iter().map(|z| z[0] * z[0] + z[1] * z[1]).sum::<f64>().sqrt()
}

fn split(v: &[Complex]) -> (DVector<f64>, DVector<f64>) {
    (
        DVector::from_iterator(v.len(), v.iter().map(|z| z[0])),
        DVector::from_iterator(v.len(), v.iter().map(|z| z[1])),
    )
}

fn check_unit(v: &[Complex]) -> Result<()> {
    let r = norm(v);
    if (r - 1.0).abs() > UNIT_TOL {
        return Err(Error::NonUnitVector(r));
    }
    Ok(())
}

/// `‖R(q)v − v‖` for each `q ∈ Q`.
pub fn displacement_profile(rep: &UnitaryRep, q: &[Permutation], v: &[Complex]) -> Result<Vec<f64>> {
    if v.len() != rep.dim() {
        return Err(Error::SizeMismatch {
            expected: rep.dim(),
            got: v.len(),
        });
    }
    check_unit(v)?;
    let (re, im) = split(v);
    Ok(q
        .iter()
        .map(|g| {
            let m = rep.matrix_of(g);
            ((&m * &re - &re).norm_squared() + (&m * &im - &im).norm_squared()).sqrt()
        })
        .collect())
}

/// `max_{q∈Q} ‖R(q)v − v‖` for a unit vector `v`.
pub fn displacement_max(rep: &UnitaryRep, q: &[Permutation], v: &[Complex]) -> Result<f64> {
    Ok(displacement_profile(rep, q, v)?.into_iter().fold(0.0, f64::max))
}

/// `(Q̂ + Q̂*)/2` with `Q̂ = Σ_{q∈Q} q`.
fn symmetrized_sum(n: usize, q: &[Permutation]) -> AlgebraElement {
    let mut a = AlgebraElement::zero(n);
    for g in q {
        a = &a + &AlgebraElement::from_perm(g.clone());
    }
    (&a + &a.star()).scale(&rat(1, 2))
}

/// Squared displacements `f_q(Y) = tr(Yᵀ M_q Y)` on the realified sphere.
struct Objective {
    forms: Vec<DMatrix<f64>>,
}

impl Objective {
    fn values(&self, y: &DMatrix<f64>) -> Vec<f64> {
        self.forms.iter().map(|m| (y.transpose() * m * y).trace()).collect()
    }

    fn max(&self, y: &DMatrix<f64>) -> f64 {
        self.values(y).into_iter().fold(f64::NEG_INFINITY, f64::max)
    }

    fn smoothed(&self, y: &DMatrix<f64>, beta: f64) -> (f64, DMatrix<f64>) {
        let f = self.values(y);
        let top = f.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let w: Vec<f64> = f.iter().map(|v| (beta * (v - top)).exp()).collect();
        let z: f64 = w.iter().sum();
        let mut grad = DMatrix::zeros(y.nrows(), y.ncols());
        for (m, wq) in self.forms.iter().zip(&w) {
            grad += (m * y) * (2.0 * wq / z);
        }
        (top + z.ln() / beta, grad)
    }
}

fn tangent(y: &DMatrix<f64>, g: &DMatrix<f64>) -> DMatrix<f64> {
    g - y * y.dot(g)
}

fn retract(y: DMatrix<f64>) -> DMatrix<f64> {
    let r = y.norm();
    y / r
}

/// Riemannian gradient descent with Armijo backtracking on one smoothing stage.
fn descend(obj: &Objective, mut y: DMatrix<f64>, beta: f64, iters: usize) -> DMatrix<f64> {
    let mut step = 1.0 / beta.max(1.0).sqrt();
    let (mut fy, mut gy) = obj.smoothed(&y, beta);
    for _ in 0..iters {
        let d = tangent(&y, &gy);
        let gn2 = d.norm_squared();
        if gn2 < 1e-28 {
            break;
        }
        let mut accepted = false;
        while step > 1e-18 {
            let cand = retract(&y - &d * step);
            let (fc, gc) = obj.smoothed(&cand, beta);
            if fc <= fy - 1e-4 * step * gn2 {
                y = cand;
                fy = fc;
                gy = gc;
                step *= 2.0;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    y
}

/// Minimum-norm point of the convex hull of `gs`, by projected gradient on the simplex.
fn min_norm_hull(gs: &[DMatrix<f64>]) -> DMatrix<f64> {
    let m = gs.len();
    let gram = DMatrix::from_fn(m, m, |i, j| gs[i].dot(&gs[j]));
    let lip = gram.diagonal().sum().max(1e-300);
    let mut lam = DVector::from_element(m, 1.0 / m as f64);
    for _ in 0..2000 {
        let grad = &gram * &lam;
        let next = project_simplex(&(&lam - grad / lip));
        if (&next - &lam).amax() < 1e-15 {
            lam = next;
            break;
        }
        lam = next;
    }
    let mut out = gs[0].clone() * lam[0];
    for (g, l) in gs.iter().zip(lam.iter()).skip(1) {
        out += g * *l;
    }
    out
}

fn project_simplex(v: &DVector<f64>) -> DVector<f64> {
    let mut u: Vec<f64> = v.iter().copied().collect();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut shift = 0.0;
    for (k, x) in u.iter().enumerate() {
        cum += x;
        let t = (cum - 1.0) / (k + 1) as f64;
        if x - t > 0.0 {
            shift = t;
        }
    }
    v.map(|x| (x - shift).max(0.0))
}

/// Exact-max polishing: descend along the negated minimum-norm element of the
/// hull of near-active gradients, shrinking the activity window when stuck.
fn polish(obj: &Objective, mut y: DMatrix<f64>) -> DMatrix<f64> {
    let mut fy = obj.max(&y);
    let mut window = 1e-3;
    let mut budget = 2000;
    while window > 1e-14 && budget > 0 {
        budget -= 1;
        let f = obj.values(&y);
        let active: Vec<DMatrix<f64>> = obj
            .forms
            .iter()
            .zip(&f)
            .filter(|(_, v)| **v >= fy - window)
            .map(|(m, _)| tangent(&y, &((m * &y) * 2.0)))
            .collect();
        let d = min_norm_hull(&active);
        let dn2 = d.norm_squared();
        if dn2 < 1e-30 {
            window *= 0.1;
            continue;
        }
        let mut step = 1.0;
        let mut improved = false;
        while step > 1e-16 {
            let cand = retract(&y - &d * step);
            let fc = obj.max(&cand);
            if fc < fy - 1e-4 * step * dn2 {
                y = cand;
                fy = fc;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            window *= 0.1;
        }
    }
    y
}

/// Upper bound on `κ(Q, R)` by multi-restart smoothed minimax over the unit
/// sphere of `(V^G)^⊥`, followed by exact-max polishing.
pub fn kazhdan_rep_estimate(rep: &UnitaryRep, q: &[Permutation], config: &KazhdanConfig) -> Result<KazhdanEstimate> {
    if q.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let n = rep.degree();
    for g in q {
        if g.degree() != n {
            return Err(Error::DegreeMismatch {
                left: n,
                right: g.degree(),
            });
        }
    }
    if !matches!(rep.label(), RepLabel::Irrep(_)) && !generates_symmetric_group(n, q) {
        return Err(Error::Precondition("generators must generate S_n".into()));
    }
    let basis = rep.complement_basis();
    let k = basis.ncols();
    if k == 0 {
        return Err(Error::NoNontrivialVectors);
    }
    let id = DMatrix::<f64>::identity(rep.dim(), rep.dim());
    let forms = q
        .iter()
        .map(|g| {
            let d = rep.matrix_of(g) - &id;
            let m = basis.transpose() * d.transpose() * d * &basis;
            (&m + m.transpose()) * 0.5
        })
        .collect();
    let obj = Objective { forms };
    let restarts = config.restarts.max(1);

    let runs: Vec<(f64, DMatrix<f64>)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(r as u64);
            let mut y = retract(DMatrix::from_fn(k, 2, |_, _| StandardNormal.sample(&mut rng)));
            for &beta in &config.betas {
                y = descend(&obj, y, beta, config.iters_per_stage);
            }
            let y = polish(&obj, y);
            (obj.max(&y), y)
        })
        .collect();
    let (_, best) = runs
        .into_iter()
        .reduce(|a, b| if b.0 < a.0 { b } else { a })
        .expect("at least one restart");

    let re = &basis * best.column(0);
    let im = &basis * best.column(1);
    let scale = (re.norm_squared() + im.norm_squared()).sqrt();
    let witness: Vec<Complex> = re.iter().zip(im.iter()).map(|(a, b)| [a / scale, b / scale]).collect();
    let profile = displacement_profile(rep, q, &witness)?;
    let kappa = profile.iter().copied().fold(0.0, f64::max);
    let gap = gap_rep(&symmetrized_sum(n, q), rep)?;
    Ok(KazhdanEstimate {
        rep: rep.label().to_string(),
        generators: q.iter().map(|g| g.to_string()).collect(),
        kappa,
        witness,
        profile,
        gap,
        restarts,
        seed: config.seed,
    })
}

/// `κ_{S_n}(T_n) = 2/√(n−1)`, the exact constant for the class of transpositions.
pub fn conjclass_kazhdan_value(n: usize) -> f64 {
    assert!(n >= 2, "n must be at least 2");
    2.0 / ((n - 1) as f64).sqrt()
}

/// `(1, ω, ω̄)/√3` with `ω = e^{2πi/3}`: equidistant coordinates summing to zero.
pub fn cube_root_vector() -> Vec<Complex> {
    let s = 1.0 / 3f64.sqrt();
    let (sin, cos) = (2.0 * std::f64::consts::PI / 3.0).sin_cos();
    vec![[s, 0.0], [s * cos, s * sin], [s * cos, -s * sin]]
}

/// Unit vector of zero coordinate sum minimizing the Rayleigh quotient of
/// `Δ(T̂_n, D_n)`, taken from its eigen-decomposition.
pub fn defining_gap_minimizer(n: usize) -> Result<Vec<Complex>> {
    let d = defining_rep(n)?;
    let t = symmetrized_sum(n, &transpositions(n));
    let lap = crate::spectral::laplacian(&t, &d)?;
    let basis = d.complement_basis();
    let (_, vecs) = symmetric_eigen(&(basis.transpose() * lap * &basis))?;
    let u = &basis * vecs.column(0);
    Ok(u.iter().map(|x| [*x, 0.0]).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectSumProfile {
    pub n: usize,
    /// Number of copies of the defining representation, one per element of `S_n`.
    pub copies: usize,
    /// `‖R(q)Û − Û‖ / ‖Û‖` for each transposition `q`.
    pub profile: Vec<f64>,
    pub spread: f64,
    pub value: f64,
    pub expected: f64,
    /// Spread of the same profile when the copies are indexed by `T_n` only.
    pub transposition_indexed_spread: f64,
}

fn normalized_displacements(index: &[DMatrix<f64>], gens: &[DMatrix<f64>], re: &DVector<f64>, im: &DVector<f64>) -> Vec<f64> {
    let copies: Vec<(DVector<f64>, DVector<f64>)> = index.iter().map(|m| (m * re, m * im)).collect();
    let hat_norm2: f64 = copies.iter().map(|(a, b)| a.norm_squared() + b.norm_squared()).sum();
    gens.iter()
        .map(|mq| {
            let s: f64 = copies
                .iter()
                .map(|(a, b)| (mq * a - a).norm_squared() + (mq * b - b).norm_squared())
                .sum();
            (s / hat_norm2).sqrt()
        })
        .collect()
}

fn spread(v: &[f64]) -> f64 {
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    hi - lo
}

/// Displacements of `Û = (D(g)u)_{g∈S_n}` in the `n!`-fold direct sum of the
/// defining representation, normalized by `‖Û‖`. Since `g ↦ g⁻¹qg` covers the
/// class of `q` uniformly, the profile is independent of `q` and equals
/// `√(2ψ/|T_n|)` for a gap minimizer `u`.
pub fn rem2_direct_sum_witness(n: usize, u: &[Complex], tol: f64) -> Result<DirectSumProfile> {
    let d = defining_rep(n)?;
    if u.len() != n {
        return Err(Error::SizeMismatch { expected: n, got: u.len() });
    }
    check_unit(u)?;
    let tn = transpositions(n);
    let (re, im) = split(u);
    let t_hat = symmetrized_sum(n, &tn);
    let lap = crate::spectral::laplacian(&t_hat, &d)?;
    let rayleigh = re.dot(&(&lap * &re)) + im.dot(&(&lap * &im));
    let gap = gap_rep(&t_hat, &d)?;
    if (rayleigh - gap).abs() > tol * gap.max(1.0) {
        return Err(Error::NotGapMinimizer { rayleigh, gap });
    }
    let gens: Vec<DMatrix<f64>> = tn.iter().map(|t| d.matrix_of(t)).collect();
    let group: Vec<DMatrix<f64>> = all_permutations(n).iter().map(|g| d.matrix_of(g)).collect();
    let profile = normalized_displacements(&group, &gens, &re, &im);
    let literal = normalized_displacements(&gens, &gens, &re, &im);
    Ok(DirectSumProfile {
        n,
        copies: group.len(),
        spread: spread(&profile),
        value: profile.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        profile,
        expected: conjclass_kazhdan_value(n),
        transposition_indexed_spread: spread(&literal),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateStatus {
    Certified,
    Inconclusive,
}

/// Attempt to exhibit `u ⊥ (1,…,1)` with `max_{i<j} √2|u_i − u_j| < 2/√(n−1)`.
#[derive(Clone, Debug, Serialize)]
pub struct StrictCertificate {
    pub n: usize,
    pub vector: Vec<Complex>,
    pub max_displacement: f64,
    pub threshold: f64,
    /// `threshold − max_displacement`; positive exactly when certified.
    pub margin: f64,
    pub status: CertificateStatus,
    pub estimate: KazhdanEstimate,
}

pub fn strict_inequality_certificate(n: usize, config: &KazhdanConfig) -> Result<StrictCertificate> {
    if n < 4 {
        return Err(Error::Precondition(format!("strict certificate needs n >= 4, got {n}")));
    }
    let est = kazhdan_rep_estimate(&defining_rep(n)?, &transpositions(n), config)?;
    let u = &est.witness;
    let mut max_displacement: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let (dr, di) = (u[i][0] - u[j][0], u[i][1] - u[j][1]);
            max_displacement = max_displacement.max((2.0 * (dr * dr + di * di)).sqrt());
        }
    }
    let threshold = conjclass_kazhdan_value(n);
    let margin = threshold - max_displacement;
    Ok(StrictCertificate {
        n,
        vector: u.clone(),
        max_displacement,
        threshold,
        margin,
        status: if margin > 0.0 {
            CertificateStatus::Certified
        } else {
            CertificateStatus::Inconclusive
        },
        estimate: est,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SaturationCheck {
    /// `|Q|·κ² = 2ψ` within tolerance.
    pub saturated: bool,
    pub profile_constant: bool,
    pub spread: f64,
    /// `|Q|·κ² − 2ψ`.
    pub excess: f64,
    /// Saturation forces a constant profile.
    pub consistent: bool,
}

/// If the estimate saturates `|Q|κ² ≥ 2ψ`, its witness must have a constant
/// displacement profile (within `1e−6`).
pub fn saturation_profile_check(est: &KazhdanEstimate, tol: f64) -> SaturationCheck {
    let q = est.profile.len() as f64;
    let excess = q * est.kappa * est.kappa - 2.0 * est.gap;
    let spread = spread(&est.profile);
    let saturated = excess.abs() <= tol * est.gap.abs().max(1.0);
    let profile_constant = spread <= 1e-6;
    SaturationCheck {
        saturated,
        profile_constant,
        spread,
        excess,
        consistent: !saturated || profile_constant,
    }
}
