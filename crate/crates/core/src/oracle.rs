//! Independent second-moment propagation.
//!
//! The quadratures `R = (X₁, P₁, X_b, P_b, X₂, P₂)` obey `Ṙ = K R` with a
//! constant drift `K`, so `Σ(t) = S Σ(0) Sᵀ` with `S = exp(K t)`. Nothing here
//! uses the closed-form moments; [`crosscheck`] compares the two.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gaussian::CovarianceMatrix;
use crate::linalg::max_abs;
use crate::params::coupling_pair;
use crate::real::Real;
use crate::sideband::{coefficients, CoefficientSet, COEFFICIENT_NAMES};
use crate::DoubleDouble;

/// Real 6x6 drift matrix in quadrature order `(X₁, P₁, X_b, P_b, X₂, P₂)`.
pub type DriftMatrix<T = f64> = DMatrix<T>;

/// Smallest `r − 1` accepted by [`crosscheck`].
pub const MIN_RATIO_EXCESS: f64 = 1e-12;

/// Largest scaled time accepted by [`crosscheck`] (two periods).
pub const MAX_SCALED_TIME: f64 = 4.0 * std::f64::consts::PI;

/// Drift matrix for Stokes coupling `chi` and anti-Stokes coupling `theta`.
///
/// From `ȧ₁ = χb†`, `ḃ = χa₁† − θa₂`, `ȧ₂ = θb`; the X and P sectors
/// decouple and differ only in the sign of the `χ` entries.
pub fn drift_matrix<T: Real>(chi: T, theta: T) -> Result<DriftMatrix<T>> {
    if !(chi > T::zero() && theta > chi) {
        return Err(Error::domain(format!(
            "oscillatory regime needs 0 < χ < θ, got χ={chi}, θ={theta}"
        )));
    }
    let mut k = DMatrix::<T>::zeros(6, 6);
    for (p, sign) in [(0, T::one()), (1, -T::one())] {
        let (x1, xb, x2) = (p, 2 + p, 4 + p);
        k[(x1, xb)] = sign * chi;
        k[(xb, x1)] = sign * chi;
        k[(xb, x2)] = -theta;
        k[(x2, xb)] = theta;
    }
    Ok(k)
}

/// `Θ = √(θ² − χ²)`.
pub fn oscillation_frequency<T: Real>(chi: T, theta: T) -> T {
    ((theta - chi) * (theta + chi)).sqrt()
}

/// Matrix exponential by Taylor series with scaling and squaring.
///
/// The squarings act on `E = exp(A) − I` via `E ← 2E + E²`, so the early
/// near-identity stages keep the relative precision of `E`.
pub fn expm<T: Real>(m: &DMatrix<T>) -> DMatrix<T> {
    let n = m.nrows();
    let mut e = expm_minus_identity(m);
    for i in 0..n {
        e[(i, i)] += T::one();
    }
    e
}

/// `exp(m) − I`.
pub fn expm_minus_identity<T: Real>(m: &DMatrix<T>) -> DMatrix<T> {
    let norm = one_norm(m).to_f64();
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let a = m * T::from_f64(scale);
    let eps = T::from_f64(T::UNIT_ROUNDOFF);
    let mut term = a.clone();
    let mut sum = a.clone();
    for k in 2..=60 {
        term = &term * &a * (T::one() / T::from_f64(k as f64));
        sum += &term;
        if max_abs(&term) <= eps * max_abs(&sum) {
            break;
        }
    }
    let two = T::from_f64(2.0);
    for _ in 0..squarings {
        sum = &sum * two + &sum * &sum;
    }
    sum
}

fn one_norm<T: Real>(m: &DMatrix<T>) -> T {
    m.column_iter()
        .map(|col| col.iter().fold(T::zero(), |acc, &x| acc + x.abs()))
        .fold(T::zero(), |a, b| a.max(b))
}

/// Largest `‖Kh‖₁` of a single composed propagator step.
pub const MAX_STEP_NORM: f64 = 32.0;

/// Upper bound on the number of composed steps.
pub const MAX_STEPS: usize = 4096;

/// `exp(Kt)` as the `m`-fold product of `exp(Kt/m)`, with `m` chosen so that
/// `‖Kt/m‖₁ ≤` [`MAX_STEP_NORM`] (capped at [`MAX_STEPS`]).
///
/// Near `r = 1` the propagator passes through entries of order `(r²−1)⁻¹`;
/// repeated squaring compounds rounding through those large intermediates,
/// while step-by-step composition keeps the error linear in `m`.
pub fn propagator<T: Real>(k: &DriftMatrix<T>, t: T) -> DMatrix<T> {
    let kt = k * t;
    let steps = (one_norm(&kt).to_f64() / MAX_STEP_NORM).ceil().clamp(1.0, MAX_STEPS as f64) as usize;
    let step = expm(&(kt * (T::one() / T::from_f64(steps as f64))));
    let mut s = step.clone();
    for _ in 1..steps {
        s = &step * &s;
    }
    s
}

/// `Σ(t) = exp(Kt) Σ(0) exp(Kt)ᵀ`.
pub fn propagate<T: Real>(cm0: &CovarianceMatrix<T>, k: &DriftMatrix<T>, t: T) -> Result<CovarianceMatrix<T>> {
    check_inputs(cm0, k, t)?;
    let s = propagator(k, t);
    let sigma = &s * cm0.data() * s.transpose();
    symmetrized(sigma)
}

/// Classical fourth-order Runge–Kutta integration of `Σ̇ = KΣ + ΣKᵀ`.
pub fn propagate_rk4<T: Real>(
    cm0: &CovarianceMatrix<T>,
    k: &DriftMatrix<T>,
    t: T,
    steps: usize,
) -> Result<CovarianceMatrix<T>> {
    check_inputs(cm0, k, t)?;
    if steps == 0 {
        return Err(Error::validation("rk4 needs at least one step"));
    }
    let h = t / T::from_f64(steps as f64);
    let half = T::half();
    let f = |s: &DMatrix<T>| k * s + s * k.transpose();
    let mut sigma = cm0.data().clone();
    for _ in 0..steps {
        let k1 = f(&sigma);
        let k2 = f(&(&sigma + &k1 * (h * half)));
        let k3 = f(&(&sigma + &k2 * (h * half)));
        let k4 = f(&(&sigma + &k3 * h));
        sigma += (k1 + (k2 + k3) * T::from_f64(2.0) + k4) * (h / T::from_f64(6.0));
    }
    symmetrized(sigma)
}

fn check_inputs<T: Real>(cm0: &CovarianceMatrix<T>, k: &DriftMatrix<T>, t: T) -> Result<()> {
    if k.nrows() != cm0.dim() || k.ncols() != cm0.dim() {
        return Err(Error::validation(format!(
            "drift matrix is {}x{}, covariance matrix is {}x{}",
            k.nrows(),
            k.ncols(),
            cm0.dim(),
            cm0.dim()
        )));
    }
    if !(t >= T::zero()) {
        return Err(Error::validation(format!("propagation time must be >= 0, got {t}")));
    }
    Ok(())
}

fn symmetrized<T: Real>(sigma: DMatrix<T>) -> Result<CovarianceMatrix<T>> {
    let asym = max_abs(&(&sigma - sigma.transpose())).to_f64();
    let scale = max_abs(&sigma).to_f64().max(1.0);
    if asym > 1e-9 * scale {
        return Err(Error::Oracle(format!(
            "propagated covariance matrix lost symmetry: {asym:e} at scale {scale:e}"
        )));
    }
    let sym = (&sigma + sigma.transpose()) * T::half();
    CovarianceMatrix::new(sym)
}

/// Reads the six moments back out of a three-mode covariance matrix.
pub fn extract_coefficients<T: Real>(cm: &CovarianceMatrix<T>, tau: f64, r: f64, nbar: f64) -> Result<CoefficientSet<T>> {
    if cm.dim() != 6 {
        return Err(Error::validation(format!("expected a 3-mode covariance matrix, got dimension {}", cm.dim())));
    }
    let h = T::half();
    Ok(CoefficientSet {
        tau,
        r,
        nbar,
        a: cm.get(0, 0) - h,
        b: cm.get(2, 2) - h,
        c: cm.get(0, 2),
        d: -cm.get(2, 4),
        e: cm.get(4, 4) - h,
        f: cm.get(0, 4),
    })
}

/// Moments at each scaled time of `grid`, propagated in double-double with
/// `Θ = 1` so that `t = τ`.
pub fn oracle_coefficients(r: f64, nbar: f64, grid: &[f64]) -> Result<Vec<CoefficientSet<DoubleDouble>>> {
    let (chi, theta) = coupling_pair::<DoubleDouble>(r, 1.0)?;
    let k = drift_matrix(chi, theta)?;
    let cm0 = CovarianceMatrix::thermal(&[DoubleDouble::zero(), DoubleDouble::from_f64(nbar), DoubleDouble::zero()]);
    grid.par_iter()
        .map(|&tau| {
            let cm = propagate(&cm0, &k, DoubleDouble::from_f64(tau))?;
            extract_coefficients(&cm, tau, r, nbar)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientDeviation {
    pub name: String,
    pub max_rel_dev: f64,
    pub worst_tau: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub r: f64,
    pub nbar: f64,
    pub points: usize,
    /// Largest `|closed − oracle| / max(|oracle|, 1)` over grid and coefficients.
    pub max_rel_dev: f64,
    pub worst_tau: Option<f64>,
    pub worst_coefficient: Option<String>,
    pub per_coefficient: Vec<CoefficientDeviation>,
}

impl CrosscheckReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_rel_dev <= tol
    }
}

/// Compares the closed-form moments against the propagated ones on `grid`.
pub fn crosscheck(r: f64, nbar: f64, grid: &[f64]) -> Result<CrosscheckReport> {
    if !(r.is_finite() && r - 1.0 >= MIN_RATIO_EXCESS) {
        return Err(Error::domain(format!(
            "r − 1 = {:e} is below the oracle's reach ({MIN_RATIO_EXCESS:e})",
            r - 1.0
        )));
    }
    if let Some(bad) = grid.iter().find(|t| !(0.0..=MAX_SCALED_TIME).contains(*t)) {
        return Err(Error::validation(format!("grid point τ={bad} outside [0, 4π]")));
    }
    if grid.is_empty() {
        return Ok(CrosscheckReport {
            r,
            nbar,
            points: 0,
            max_rel_dev: 0.0,
            worst_tau: None,
            worst_coefficient: None,
            per_coefficient: Vec::new(),
        });
    }
    let oracle = oracle_coefficients(r, nbar, grid)?;
    let mut per: Vec<CoefficientDeviation> = COEFFICIENT_NAMES
        .iter()
        .map(|n| CoefficientDeviation {
            name: n.to_string(),
            max_rel_dev: 0.0,
            worst_tau: None,
        })
        .collect();
    for (&tau, o) in grid.iter().zip(&oracle) {
        let closed = coefficients(tau, r, nbar)?.values();
        for ((slot, c), o) in per.iter_mut().zip(closed).zip(o.values()) {
            let o = o.to_f64();
            let dev = (c - o).abs() / o.abs().max(1.0);
            if !(dev <= slot.max_rel_dev) {
                slot.max_rel_dev = dev;
                slot.worst_tau = Some(tau);
            }
        }
    }
    let worst = per
        .iter()
        .filter(|d| d.worst_tau.is_some())
        .max_by(|a, b| a.max_rel_dev.total_cmp(&b.max_rel_dev));
    Ok(CrosscheckReport {
        r,
        nbar,
        points: grid.len(),
        max_rel_dev: worst.map_or(0.0, |d| d.max_rel_dev),
        worst_tau: worst.and_then(|d| d.worst_tau),
        worst_coefficient: worst.map(|d| d.name.clone()),
        per_coefficient: per,
    })
}
