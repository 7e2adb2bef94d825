//! Representation Laplacians `𝕀(w)·I − R(w)`, spectral gaps, membership in
//! the cone of elements with positive semidefinite Laplacians, and the
//! eigenvalue interlacing produced by the reduction map.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra::{AlgebraElement, TranspositionWeights};
use crate::error::{Error, Result};
use crate::reptheory::{defining_rep, irreps, UnitaryRep};
use crate::symgroup::Partition;

/// Default tolerance for eigenvalue comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Largest allowed `|M − Mᵀ|` entry before a matrix is rejected as asymmetric.
pub const SYMMETRY_TOL: f64 = 1e-10;

pub(crate) fn serialize_extended<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_infinite() {
        s.serialize_str(if *x > 0.0 { "inf" } else { "-inf" })
    } else {
        s.serialize_f64(*x)
    }
}

/// Eigenvalues of a real symmetric matrix, ascending.
pub fn symmetric_spectrum(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    Ok(symmetric_eigen(m)?.0)
}

/// Ascending eigenvalues and matching unit eigenvectors (as columns).
pub fn symmetric_eigen(m: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    assert!(m.is_square(), "matrix must be square");
    let asym = (m - m.transpose()).amax();
    if asym > SYMMETRY_TOL {
        return Err(Error::AsymmetricMatrix(asym));
    }
    let n = m.nrows();
    if n == 0 {
        return Ok((Vec::new(), DMatrix::zeros(0, 0)));
    }
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_columns(&order.iter().map(|&k| eig.eigenvectors.column(k).into_owned()).collect::<Vec<DVector<f64>>>());
    Ok((values, vectors))
}

/// Largest eigenvalue of a symmetric matrix.
pub fn lambda_star(m: &DMatrix<f64>) -> Result<f64> {
    Ok(symmetric_spectrum(m)?.last().copied().unwrap_or(f64::NEG_INFINITY))
}

/// `Δ(a, R) = 𝕀(a)·I − R(a)` for a star-invariant `a`.
pub fn laplacian(a: &AlgebraElement, rep: &UnitaryRep) -> Result<DMatrix<f64>> {
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let total = a.trivial_eval().to_f64().expect("finite");
    let r = rep.evaluate(a)?;
    let lap = DMatrix::identity(rep.dim(), rep.dim()) * total - r;
    Ok((&lap + lap.transpose()) * 0.5)
}

/// Spectrum of a representation Laplacian together with its spectral gap.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub rep: String,
    /// Full spectrum of the Laplacian, ascending.
    pub eigenvalues: Vec<f64>,
    /// Dimension of the invariant subspace that was projected out.
    pub trivial_removed: usize,
    /// Smallest eigenvalue off the invariant subspace; `+∞` when that is empty.
    #[serde(serialize_with = "serialize_extended")]
    pub gap: f64,
    pub tol: f64,
}

/// Laplacian restricted to the orthogonal complement of `V^G`.
fn restricted_laplacian(a: &AlgebraElement, rep: &UnitaryRep) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let lap = laplacian(a, rep)?;
    let basis = rep.complement_basis();
    let restricted = basis.transpose() * &lap * &basis;
    Ok((lap, (&restricted + restricted.transpose()) * 0.5))
}

pub fn spectrum_report(a: &AlgebraElement, rep: &UnitaryRep, tol: f64) -> Result<SpectrumReport> {
    let (lap, restricted) = restricted_laplacian(a, rep)?;
    let eigenvalues = symmetric_spectrum(&lap)?;
    let gap = symmetric_spectrum(&restricted)?
        .first()
        .copied()
        .unwrap_or(f64::INFINITY);
    Ok(SpectrumReport {
        rep: rep.label().to_string(),
        eigenvalues,
        trivial_removed: rep.dim() - restricted.nrows(),
        gap,
        tol,
    })
}

/// `ψ(a, R)`: smallest Laplacian eigenvalue on `(V^G)^⊥`, `+∞` if that space is zero.
pub fn gap_rep(a: &AlgebraElement, rep: &UnitaryRep) -> Result<f64> {
    if !a.is_positive_symmetric() {
        return Err(Error::NotPositiveSymmetric);
    }
    let (_, restricted) = restricted_laplacian(a, rep)?;
    Ok(symmetric_spectrum(&restricted)?
        .first()
        .copied()
        .unwrap_or(f64::INFINITY))
}

/// `ψ(a) = min over irreps of ψ(a, [β])`.
#[derive(Clone, Debug, Serialize)]
pub struct GapMin {
    #[serde(serialize_with = "serialize_extended")]
    pub gap: f64,
    /// Every irrep whose gap is within `tol · max(1, gap)` of the minimum.
    pub argmin: Vec<Partition>,
    pub per_irrep: Vec<IrrepGap>,
    pub tol: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrrepGap {
    pub irrep: Partition,
    #[serde(serialize_with = "serialize_extended")]
    pub gap: f64,
}

pub fn gap_min(a: &AlgebraElement, tol: f64) -> Result<GapMin> {
    if !a.is_positive_symmetric() {
        return Err(Error::NotPositiveSymmetric);
    }
    let reps = irreps(a.degree());
    let per_irrep = reps
        .par_iter()
        .map(|rep| {
            Ok(IrrepGap {
                irrep: rep.partition().unwrap().clone(),
                gap: gap_rep(a, rep)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let gap = per_irrep.iter().map(|g| g.gap).fold(f64::INFINITY, f64::min);
    let slack = tol * gap.abs().max(1.0);
    let argmin = per_irrep
        .iter()
        .filter(|g| g.gap.is_finite() && g.gap - gap <= slack)
        .map(|g| g.irrep.clone())
        .collect();
    Ok(GapMin {
        gap,
        argmin,
        per_irrep,
        tol,
    })
}

/// Result of testing `Δ(a, [β]) ≥ −tol` for every irrep `β`.
#[derive(Clone, Debug, Serialize)]
pub struct GammaMembership {
    pub member: bool,
    /// Irrep with the smallest Laplacian eigenvalue.
    pub worst: Partition,
    pub min_eigenvalue: f64,
    pub tol: f64,
}

pub fn gamma_member(a: &AlgebraElement, tol: f64) -> Result<GammaMembership> {
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let reps = irreps(a.degree());
    let mins = reps
        .par_iter()
        .map(|rep| {
            let spec = symmetric_spectrum(&laplacian(a, rep)?)?;
            Ok((rep.partition().unwrap().clone(), spec[0]))
        })
        .collect::<Result<Vec<_>>>()?;
    let (worst, min_eigenvalue) = mins
        .into_iter()
        .reduce(|best, cur| if cur.1 < best.1 { cur } else { best })
        .expect("S_n has at least one irrep");
    Ok(GammaMembership {
        member: min_eigenvalue >= -tol,
        worst,
        min_eigenvalue,
        tol,
    })
}

/// Comparison of the defining-representation Laplacians of `w` and `θ(w)`.
#[derive(Clone, Debug, Serialize)]
pub struct InterlacingReport {
    pub n: usize,
    /// Eigenvalues of `Δ_n = Δ(w, D_n)`, ascending.
    pub laplacian: Vec<f64>,
    /// Eigenvalues of `Δ_n^θ = Δ(θ(w), D_n)`, ascending.
    pub theta_laplacian: Vec<f64>,
    /// `λ^θ_1 ≤ λ_1 ≤ λ^θ_2 ≤ λ_2 ≤ … ≤ λ^θ_n ≤ λ_n`.
    pub interlaces: bool,
    /// `Δ_n − Δ_n^θ = δδᵀ/δ_n` with `δ_i = −w_in`, `δ_n = Σ_i w_in`.
    pub rank_one_psd: bool,
    pub rank_one_deviation: f64,
    /// Last row and column of `Δ_n^θ` vanish.
    pub theta_block_zero: bool,
    #[serde(serialize_with = "serialize_extended")]
    pub gap: f64,
    #[serde(serialize_with = "serialize_extended")]
    pub theta_gap: f64,
    /// `ψ(w, D_n) ≤ ψ(θ(w), D_{n−1})`.
    pub gap_monotone: bool,
    pub tol: f64,
}

impl InterlacingReport {
    pub fn pass(&self) -> bool {
        self.interlaces && self.rank_one_psd && self.theta_block_zero && self.gap_monotone
    }
}

pub fn interlacing_check(w: &TranspositionWeights, tol: f64) -> Result<InterlacingReport> {
    let n = w.degree();
    let theta = w.theta()?;
    let d = defining_rep(n)?;
    let lap = laplacian(&w.to_element(), &d)?;
    let lap_theta = laplacian(&theta.to_element().embed(n), &d)?;
    let spec = symmetric_spectrum(&lap)?;
    let spec_theta = symmetric_spectrum(&lap_theta)?;

    let mut interlaces = true;
    for k in 0..n {
        interlaces &= spec_theta[k] <= spec[k] + tol;
        if k + 1 < n {
            interlaces &= spec[k] <= spec_theta[k + 1] + tol;
        }
    }

    let x: Vec<f64> = w.star_weights().iter().map(|v| v.to_f64().unwrap()).collect();
    let delta_n: f64 = x.iter().sum();
    let mut delta = DVector::from_iterator(n, x.iter().map(|v| -v).chain([delta_n]));
    delta /= delta_n.sqrt();
    let diff = &lap - &lap_theta;
    let rank_one_deviation = (&diff - &delta * delta.transpose()).amax();
    let diff_spec = symmetric_spectrum(&diff)?;
    let rank_one_psd = rank_one_deviation <= tol
        && diff_spec[..n - 1].iter().all(|v| v.abs() <= tol)
        && diff_spec[n - 1] >= -tol;

    let theta_block_zero = (0..n).all(|k| lap_theta[(n - 1, k)].abs() <= tol && lap_theta[(k, n - 1)].abs() <= tol);

    let gap = gap_rep(&w.to_element(), &d)?;
    let theta_gap = gap_rep(&theta.to_element(), &defining_rep(n - 1)?)?;
    Ok(InterlacingReport {
        n,
        laplacian: spec,
        theta_laplacian: spec_theta,
        interlaces,
        rank_one_psd,
        rank_one_deviation,
        theta_block_zero,
        gap,
        theta_gap,
        gap_monotone: gap <= theta_gap + tol * theta_gap.abs().max(1.0),
        tol,
    })
}
