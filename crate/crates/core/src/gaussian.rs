//! Covariance-matrix toolkit for continuous-variable Gaussian states.
//!
//! Conventions: `ħ = 1`, `[X, P] = i`, vacuum variance 1/2, quadratures
//! interleaved as `(X₁, P₁, X₂, P₂, …)`. Mode indices are zero-based.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{cholesky, max_abs, singular_values, symmetric_eigenvalues};
use crate::real::Real;

/// Default absolute tolerance on symplectic eigenvalues.
pub const DEFAULT_PHYSICALITY_TOL: f64 = 1e-9;

/// Absolute tolerance for the symmetry of stored matrices.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Relative tolerance (w.r.t. the largest one) for pairing the `±ν` moduli.
pub const PAIRING_TOL: f64 = 1e-9;

/// Symmetrized second moments `⟨vᵢvⱼ + vⱼvᵢ⟩/2` of a zero-mean Gaussian state.
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceMatrix<T = f64> {
    data: DMatrix<T>,
}

impl<T: Real> CovarianceMatrix<T> {
    pub fn new(data: DMatrix<T>) -> Result<Self> {
        let (rows, cols) = data.shape();
        if rows != cols {
            return Err(Error::validation(format!(
                "covariance matrix must be square, got {rows}x{cols}"
            )));
        }
        if rows == 0 || rows % 2 != 0 {
            return Err(Error::validation(format!(
                "covariance matrix dimension must be a positive even number, got {rows}"
            )));
        }
        if data.iter().any(|x| !x.to_f64().is_finite()) {
            return Err(Error::validation("covariance matrix has non-finite entries"));
        }
        for i in 0..rows {
            for j in (i + 1)..rows {
                let asym = (data[(i, j)] - data[(j, i)]).abs().to_f64();
                if asym > SYMMETRY_TOL {
                    return Err(Error::validation(format!(
                        "covariance matrix is not symmetric: |Γ[{i},{j}] - Γ[{j},{i}]| = {asym:e}"
                    )));
                }
            }
        }
        Ok(CovarianceMatrix { data })
    }

    pub fn from_row_slice(dim: usize, entries: &[T]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::validation(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn vacuum(n_modes: usize) -> Self {
        Self::thermal(&vec![T::zero(); n_modes])
    }

    /// Product of thermal states with the given mean occupations.
    pub fn thermal(occupations: &[T]) -> Self {
        let dim = 2 * occupations.len();
        let mut data = DMatrix::<T>::zeros(dim, dim);
        for (k, &n) in occupations.iter().enumerate() {
            let v = n + T::half();
            data[(2 * k, 2 * k)] = v;
            data[(2 * k + 1, 2 * k + 1)] = v;
        }
        CovarianceMatrix { data }
    }

    pub fn n_modes(&self) -> usize {
        self.data.nrows() / 2
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn data(&self) -> &DMatrix<T> {
        &self.data
    }

    pub fn into_inner(self) -> DMatrix<T> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[(i, j)]
    }

    /// Entrywise conversion to another scalar type (rounding when narrowing).
    pub fn convert<U: Real>(&self) -> CovarianceMatrix<U> {
        CovarianceMatrix {
            data: self.data.map(|x| U::from_f64(x.to_f64())),
        }
    }

    /// `(⟨(X₁−X₂)²⟩, ⟨(X₁+X₂)²⟩)` of a two-mode state.
    pub fn epr_variances(&self) -> Result<(T, T)> {
        if self.n_modes() != 2 {
            return Err(Error::validation(format!(
                "EPR variances need a two-mode state, got {} modes",
                self.n_modes()
            )));
        }
        let two = T::from_f64(2.0);
        let diag = self.get(0, 0) + self.get(2, 2);
        let cross = two * self.get(0, 2);
        Ok((diag - cross, diag + cross))
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.n_modes() {
            return Err(Error::validation(format!(
                "mode index {mode} out of range for a {}-mode state",
                self.n_modes()
            )));
        }
        Ok(())
    }
}

impl CovarianceMatrix<f64> {
    /// Two-mode squeezed vacuum with squeezing parameter `s`:
    /// `⟨(X₁−X₂)²⟩ = e^{−2s}`.
    pub fn two_mode_squeezed_vacuum(s: f64) -> Self {
        let c = 0.5 * (2.0 * s).cosh();
        let h = 0.5 * (2.0 * s).sinh();
        #[rustfmt::skip]
        let data = DMatrix::from_row_slice(4, 4, &[
            c,   0.0, h,   0.0,
            0.0, c,   0.0, -h,
            h,   0.0, c,   0.0,
            0.0, -h,  0.0, c,
        ]);
        CovarianceMatrix { data }
    }
}

/// Block-diagonal `J` with blocks `[[0, 1], [−1, 0]]`.
pub fn symplectic_form<T: Real>(n_modes: usize) -> DMatrix<T> {
    let mut j = DMatrix::<T>::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        j[(2 * k, 2 * k + 1)] = T::one();
        j[(2 * k + 1, 2 * k)] = -T::one();
    }
    j
}

/// Symplectic eigenvalues, ascending.
///
/// `iJΓ` is similar to the Hermitian `i LᵀJL` (`Γ = LLᵀ`), so its eigenvalue
/// moduli are the singular values of the real antisymmetric `LᵀJL`, which
/// come in equal pairs. Fails for matrices that are not positive definite:
/// those are never physical and their `iJΓ` spectrum need not be real.
pub fn symplectic_eigenvalues<T: Real>(cm: &CovarianceMatrix<T>) -> Result<Vec<T>> {
    let l = cholesky(cm.data())
        .ok_or_else(|| Error::validation("covariance matrix is not positive definite"))?;
    let j = symplectic_form::<T>(cm.n_modes());
    let m = l.transpose() * j * &l;
    let m = (&m - m.transpose()) * T::half();
    let sv = singular_values(&m);
    let scale = sv.last().copied().unwrap_or_else(T::zero).max(T::from_f64(f64::MIN_POSITIVE));
    sv.chunks(2)
        .map(|pair| {
            let mismatch = ((pair[1] - pair[0]).abs() / scale).to_f64();
            if mismatch > PAIRING_TOL {
                return Err(Error::validation(format!(
                    "symplectic spectrum failed to pair (relative mismatch {mismatch:e})"
                )));
            }
            Ok((pair[0] + pair[1]) * T::half())
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Physicality<T = f64> {
    Physical,
    /// `magnitude = 1/2 − ν_min`; for matrices that are not even positive
    /// definite it is `1/2 + |λ_min(Γ)|`.
    Violation { magnitude: T },
}

impl<T> Physicality<T> {
    pub fn is_physical(&self) -> bool {
        matches!(self, Physicality::Physical)
    }
}

/// Uncertainty-principle admissibility `Γ + iJ/2 ≥ 0`, i.e. `ν_min ≥ 1/2 − tol`.
pub fn check_physical<T: Real>(cm: &CovarianceMatrix<T>, tol: f64) -> Physicality<T> {
    match symplectic_eigenvalues(cm) {
        Ok(nu) => {
            let deficit = T::half() - nu[0];
            if deficit.to_f64() <= tol {
                Physicality::Physical
            } else {
                Physicality::Violation { magnitude: deficit }
            }
        }
        Err(_) => {
            let lambda_min = symmetric_eigenvalues(cm.data())[0];
            Physicality::Violation {
                magnitude: T::half() + lambda_min.abs(),
            }
        }
    }
}

/// Bound on how far the smallest symplectic eigenvalue of the exact state can
/// lie from that of the stored matrix, given the scalar precision.
///
/// For a physical `Γ`, `κ(Γ) ≤ 4‖Γ‖²`, and a relative entry perturbation `δ`
/// moves `ν_min = 1/2` by at most `κδ/2`.
pub fn physicality_resolution<T: Real>(cm: &CovarianceMatrix<T>) -> f64 {
    let dim = cm.dim() as f64;
    let norm = dim * max_abs(cm.data()).to_f64();
    2.0 * dim * T::UNIT_ROUNDOFF * norm * norm
}

/// Reduced state of the listed modes (principal submatrix).
pub fn partial_trace<T: Real>(cm: &CovarianceMatrix<T>, keep: &[usize]) -> Result<CovarianceMatrix<T>> {
    if keep.is_empty() {
        return Err(Error::validation("partial trace must keep at least one mode"));
    }
    let mut modes = keep.to_vec();
    modes.sort_unstable();
    if modes.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::validation(format!("duplicate mode in keep set {keep:?}")));
    }
    for &m in &modes {
        cm.check_mode(m)?;
    }
    let rows: Vec<usize> = modes.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
    let dim = rows.len();
    let data = DMatrix::from_fn(dim, dim, |i, j| cm.get(rows[i], rows[j]));
    Ok(CovarianceMatrix { data })
}

/// `ΛΓΛ` with `Λ` flipping the sign of the chosen mode's momentum.
pub fn partial_transpose<T: Real>(cm: &CovarianceMatrix<T>, mode: usize) -> Result<CovarianceMatrix<T>> {
    cm.check_mode(mode)?;
    let p = 2 * mode + 1;
    let mut data = cm.data().clone();
    for k in 0..cm.dim() {
        if k != p {
            data[(p, k)] = -data[(p, k)];
            data[(k, p)] = -data[(k, p)];
        }
    }
    Ok(CovarianceMatrix { data })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Separability<T = f64> {
    Separable,
    /// `margin = 1/2 − ν̃_min` of the partially transposed state.
    Entangled { margin: T },
}

impl<T> Separability<T> {
    pub fn is_entangled(&self) -> bool {
        matches!(self, Separability::Entangled { .. })
    }
}

/// Positive-partial-transpose test, necessary and sufficient for two-mode
/// Gaussian states.
pub fn ppt_separable<T: Real>(cm: &CovarianceMatrix<T>, tol: f64) -> Result<Separability<T>> {
    if cm.n_modes() != 2 {
        return Err(Error::validation(format!(
            "PPT test implemented for two-mode states, got {} modes",
            cm.n_modes()
        )));
    }
    if let Physicality::Violation { magnitude } = check_physical(cm, tol) {
        return Err(Error::validation(format!(
            "PPT test needs a physical state (violation {:e})",
            magnitude.to_f64()
        )));
    }
    let nu_min = symplectic_eigenvalues(&partial_transpose(cm, 1)?)?[0];
    let margin = T::half() - nu_min;
    if margin.to_f64() > tol {
        Ok(Separability::Entangled { margin })
    } else {
        Ok(Separability::Separable)
    }
}

/// `Tr ρ² = (1/2)ⁿ / √det Γ`.
pub fn purity<T: Real>(cm: &CovarianceMatrix<T>) -> Result<T> {
    let l = cholesky(cm.data())
        .ok_or_else(|| Error::validation("covariance matrix has non-positive determinant"))?;
    // √det Γ = Π Lᵢᵢ
    let sqrt_det = (0..cm.dim()).fold(T::one(), |acc, k| acc * l[(k, k)]);
    let p = T::half().powi(cm.n_modes() as u32) / sqrt_det;
    Ok(p)
}
