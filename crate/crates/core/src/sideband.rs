//! Closed-form Gaussian dynamics of the Stokes mode `a₁`, the mirror mode `b`
//! and the anti-Stokes mode `a₂` under
//! `H = −iχ(a₁b − a₁†b†) − iθ(a₂b† − a₂†b)`, starting from vacuum sidebands
//! and a thermal mirror.
//!
//! The state at scaled time `τ = Θt` is fixed by six normally ordered moments:
//! `A = ⟨a₁†a₁⟩`, `B = ⟨b†b⟩`, `E = ⟨a₂†a₂⟩`, `C = ⟨a₁b⟩`, `F = ⟨a₁a₂⟩`
//! and `D = −⟨b†a₂⟩`.
//!
//! Near `r = 1` every moment carries prefactors up to `(r² − 1)⁻²`, so the
//! expressions below are regrouped into sums of non-negative terms, with
//! `1 − cos x = 2 sin²(x/2)` and `1 + cos x = 2 cos²(x/2)`, and no
//! large-magnitude cancellation survives.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::gaussian::{check_physical, physicality_resolution, CovarianceMatrix, Physicality, DEFAULT_PHYSICALITY_TOL};
use crate::real::Real;

/// Position of each mode in the three-mode covariance matrix.
pub const MODE_STOKES: usize = 0;
pub const MODE_MIRROR: usize = 1;
pub const MODE_ANTI_STOKES: usize = 2;

pub const COEFFICIENT_NAMES: [&str; 6] = ["A", "B", "C", "D", "E", "F"];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoefficientSet<T = f64> {
    /// Scaled time Θt.
    pub tau: f64,
    pub r: f64,
    pub nbar: f64,
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub e: T,
    pub f: T,
}

/// Trigonometric and ratio-dependent building blocks at one `(τ, r)`.
struct Phase<T> {
    r: T,
    /// r − 1
    excess: T,
    /// r² − 1
    q: T,
    sin: T,
    cos: T,
    /// 1 − cos τ
    one_minus_cos: T,
    /// 1 + cos τ
    one_plus_cos: T,
}

impl<T: Real> Phase<T> {
    fn half_period(r: f64) -> Self {
        let one = T::one();
        let r = T::from_f64(r);
        let excess = r - one;
        Phase {
            r,
            excess,
            q: excess * (r + one),
            sin: T::zero(),
            cos: -one,
            one_minus_cos: T::from_f64(2.0),
            one_plus_cos: T::zero(),
        }
    }

    fn new(tau: f64, r: f64) -> Self {
        let one = T::one();
        let two = T::from_f64(2.0);
        let tau = T::from_f64(tau);
        let (sin, cos) = tau.sin_cos();
        let (sin_half, cos_half) = (tau * T::half()).sin_cos();
        let r = T::from_f64(r);
        let excess = r - one;
        Phase {
            r,
            excess,
            q: excess * (r + one),
            sin,
            cos,
            one_minus_cos: two * sin_half * sin_half,
            one_plus_cos: two * cos_half * cos_half,
        }
    }
}

fn check_inputs(r: f64, nbar: f64) -> Result<()> {
    check_ratio(r)?;
    if nbar.is_finite() && nbar >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("nbar must be finite and >= 0, got {nbar}")))
    }
}

fn check_ratio(r: f64) -> Result<()> {
    if r.is_finite() && r > 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "coupling ratio r must be > 1 (Θ is undefined otherwise), got {r}"
        )))
    }
}

impl<T: Real> CoefficientSet<T> {
    pub fn evaluate(tau: f64, r: f64, nbar: f64) -> Result<Self> {
        check_inputs(r, nbar)?;
        if !tau.is_finite() {
            return Err(Error::domain(format!("scaled time must be finite, got {tau}")));
        }
        Ok(Self::from_phase(tau, Phase::new(tau, r), r, nbar))
    }

    /// Moments at exactly `Θt = π`, which `f64` cannot represent.
    pub fn half_period(r: f64, nbar: f64) -> Result<Self> {
        check_inputs(r, nbar)?;
        Ok(Self::from_phase(std::f64::consts::PI, Phase::half_period(r), r, nbar))
    }

    fn from_phase(tau: f64, p: Phase<T>, r: f64, nbar: f64) -> Self {
        let one = T::one();
        let n = T::from_f64(nbar);
        let (s, c, u, q, rr) = (p.sin, p.cos, p.one_minus_cos, p.q, p.r);
        let s2 = s * s;
        let u_q = u / q;
        let sqrt_q = q.sqrt();

        CoefficientSet {
            tau,
            r,
            nbar,
            a: (n + one) * s2 / q + rr * rr * u_q * u_q,
            b: s2 / q + c * c * n,
            c: s / sqrt_q * (one + u_q + c * n),
            d: -(rr * s / sqrt_q) * (u_q + c * n),
            e: rr * rr * (u_q * u_q + s2 * n / q),
            f: rr * (u_q * (one + u_q) + s2 * n / q),
        }
    }

    pub fn values(&self) -> [T; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    pub fn to_f64(&self) -> CoefficientSet<f64> {
        let [a, b, c, d, e, f] = self.values().map(Real::to_f64);
        CoefficientSet {
            tau: self.tau,
            r: self.r,
            nbar: self.nbar,
            a,
            b,
            c,
            d,
            e,
            f,
        }
    }
}

/// The six moments at scaled time `tau`, in `f64`.
pub fn coefficients(tau: f64, r: f64, nbar: f64) -> Result<CoefficientSet> {
    CoefficientSet::evaluate(tau, r, nbar)
}

/// Three-mode covariance matrix, mode order `(a₁, b, a₂)`.
///
/// The product is checked for physicality to whatever resolution the scalar
/// type allows (see [`physicality_resolution`]).
pub fn full_cm<T: Real>(c: &CoefficientSet<T>) -> Result<CovarianceMatrix<T>> {
    let h = T::half();
    let mut m = DMatrix::<T>::zeros(6, 6);
    for (mode, occ) in [c.a, c.b, c.e].into_iter().enumerate() {
        m[(2 * mode, 2 * mode)] = occ + h;
        m[(2 * mode + 1, 2 * mode + 1)] = occ + h;
    }
    // ⟨a₁b⟩ = C: squeezing-type, +C on XX, −C on PP.
    set_pair(&mut m, MODE_STOKES, MODE_MIRROR, c.c, -c.c);
    // ⟨b†a₂⟩ = −D: beam-splitter-type, equal signs.
    set_pair(&mut m, MODE_MIRROR, MODE_ANTI_STOKES, -c.d, -c.d);
    // ⟨a₁a₂⟩ = F: squeezing-type.
    set_pair(&mut m, MODE_STOKES, MODE_ANTI_STOKES, c.f, -c.f);
    let cm = CovarianceMatrix::new(m)?;

    let tol = DEFAULT_PHYSICALITY_TOL.max(8.0 * physicality_resolution(&cm));
    if tol < 0.5 {
        if let Physicality::Violation { magnitude } = check_physical(&cm, tol) {
            return Err(Error::Consistency(format!(
                "three-mode state at τ={}, r={}, n̄={} is unphysical by {:e}",
                c.tau,
                c.r,
                c.nbar,
                magnitude.to_f64()
            )));
        }
    }
    Ok(cm)
}

fn set_pair<T: Real>(m: &mut DMatrix<T>, i: usize, j: usize, xx: T, pp: T) {
    let (xi, xj) = (2 * i, 2 * j);
    m[(xi, xj)] = xx;
    m[(xj, xi)] = xx;
    m[(xi + 1, xj + 1)] = pp;
    m[(xj + 1, xi + 1)] = pp;
}

/// Two-sideband covariance matrix (mirror traced out), mode order `(a₁, a₂)`.
pub fn reduced_cm<T: Real>(c: &CoefficientSet<T>) -> CovarianceMatrix<T> {
    let h = T::half();
    let z = T::zero();
    let (a, e, f) = (c.a + h, c.e + h, c.f);
    #[rustfmt::skip]
    let data = DMatrix::from_row_slice(4, 4, &[
        a, z,  f, z,
        z, a,  z, -f,
        f, z,  e, z,
        z, -f, z, e,
    ]);
    CovarianceMatrix::new(data).expect("reduced covariance matrix is symmetric by construction")
}

/// `(A+½)(E+½) − F²`, the determinant of the 2x2 XX block, evaluated as
/// `¼ + sin²τ·(1 + n̄(1+r²)) / (2(r²−1))`.
fn block_determinant<T: Real>(c: &CoefficientSet<T>) -> T {
    let p = Phase::<T>::new(c.tau, c.r);
    let one = T::one();
    let n = T::from_f64(c.nbar);
    let quarter = T::from_f64(0.25);
    quarter + p.sin * p.sin * (one + n * (one + p.r * p.r)) / (T::from_f64(2.0) * p.q)
}

/// Entanglement marker of the two sidebands; negative iff they are entangled.
pub fn simon_marker<T: Real>(c: &CoefficientSet<T>) -> T {
    let g = block_determinant(c);
    let quarter = T::from_f64(0.25);
    let h = T::half();
    let sa = c.a * h + quarter;
    let se = c.e * h + quarter;
    g * g + T::from_f64(1.0 / 16.0) - c.f * c.f * h - sa * sa - se * se
}

/// Marker value at `τ = π`, `−4(r + r³)² / (r² − 1)⁴`, independent of `n̄`.
pub fn simon_marker_half_period(r: f64) -> Result<f64> {
    check_ratio(r)?;
    let q = (r - 1.0) * (r + 1.0);
    Ok(-4.0 * (r + r.powi(3)).powi(2) / q.powi(4))
}

/// Smallest symplectic eigenvalue of the partially transposed sideband state.
///
/// The 2x2 blocks of the transposed matrix coincide, so its symplectic
/// spectrum is the ordinary spectrum of `[[A+½, F], [F, E+½]]`; the small
/// eigenvalue is taken as determinant over the large one.
pub fn pt_min_symplectic_eigenvalue<T: Real>(c: &CoefficientSet<T>) -> T {
    let h = T::half();
    let mean = (c.a + c.e) * h + h;
    let half_gap = (c.a - c.e) * h;
    let largest = mean + (half_gap * half_gap + c.f * c.f).sqrt();
    block_determinant(c) / largest
}

/// `(Δ₋, Δ₊) = (⟨(X₁−X₂)²⟩, ⟨(X₁+X₂)²⟩)` of the sideband state.
///
/// Evaluated as `Δ₋ = ((r + cos τ)² + n̄(r²−1)sin²τ) / (r+1)²` and
/// `Δ₊ = ((r − cos τ)² + n̄(r²−1)sin²τ) / (r−1)²`, which keeps the deep
/// squeezing near `τ = π` at full relative precision.
pub fn epr_variances<T: Real>(c: &CoefficientSet<T>) -> (T, T) {
    let p = Phase::<T>::new(c.tau, c.r);
    let one = T::one();
    let thermal = T::from_f64(c.nbar) * p.q * p.sin * p.sin;
    let r_plus_cos = p.excess + p.one_plus_cos;
    let r_minus_cos = p.excess + p.one_minus_cos;
    let minus = (r_plus_cos * r_plus_cos + thermal) / (p.r + one).powi(2);
    let plus = (r_minus_cos * r_minus_cos + thermal) / p.excess.powi(2);
    (minus, plus)
}

/// `ξ = asinh(2r(1 + r²)/(r² − 1)²)`, the squeezing parameter whose
/// hyperbolic sine equals the sideband cross-correlation at `τ = π`.
pub fn effective_squeezing(r: f64) -> Result<f64> {
    check_ratio(r)?;
    let q = (r - 1.0) * (r + 1.0);
    Ok((2.0 * r * (1.0 + r * r) / (q * q)).asinh())
}

/// Squeezing parameter `s` of the two-mode squeezed vacuum reached at
/// `τ = π`: `Δ₋(π) = e^{−2s}`, i.e. `s = ln((r+1)/(r−1))`.
pub fn two_mode_squeezing(r: f64) -> Result<f64> {
    check_ratio(r)?;
    Ok(((r + 1.0) / (r - 1.0)).ln())
}

/// `points` evenly spaced values from `start` to `end`, the last one exactly `end`.
pub fn linspace(start: f64, end: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (end - start) / (points - 1) as f64;
            (0..points)
                .map(|i| if i + 1 == points { end } else { start + step * i as f64 })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{partial_trace, purity, symplectic_eigenvalues};
    use crate::DoubleDouble;
    use std::f64::consts::PI;

    const REF_R: f64 = 1.0 + 2.5e-7;

    fn rel(x: f64, y: f64) -> f64 {
        (x - y).abs() / y.abs().max(1e-300)
    }

    /// The cosine-form moments, including the `2 sin τ` mirror–anti-Stokes
    /// term; an independent transcription for cross-checking.
    fn cosine_forms(t: f64, r: f64, n: f64) -> [f64; 6] {
        let q = r * r - 1.0;
        let w = n * q - 1.0;
        let c2 = (2.0 * t).cos();
        let s2 = (2.0 * t).sin();
        [
            ((1.0 - c2) * w + 4.0 * r * r * (1.0 - t.cos())) / (2.0 * q * q),
            ((1.0 + c2) * n * q + 1.0 - c2) / (2.0 * q),
            (2.0 * r * r * t.sin() + w * s2) / (2.0 * q.powf(1.5)),
            -r * (2.0 * t.sin() + w * s2) / (2.0 * q.powf(1.5)),
            r * r * ((1.0 - c2) * w + 4.0 * (1.0 - t.cos())) / (2.0 * q * q),
            r * ((1.0 - c2) * w + 2.0 * (1.0 + r * r) * (1.0 - t.cos())) / (2.0 * q * q),
        ]
    }

    #[test]
    fn matches_cosine_forms_at_moderate_r() {
        for &(t, r, n) in &[(1.0, 1.5, 3.0), (0.3, 2.0, 0.0), (4.0, 1.1, 50.0), (2.5, 3.0, 1e4)] {
            let got = coefficients(t, r, n).unwrap().values();
            let want = cosine_forms(t, r, n);
            let scale = want.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
            for (g, w) in got.iter().zip(want) {
                assert!((g - w).abs() <= 1e-12 * scale, "τ={t} r={r} n̄={n}: {g} vs {w}");
            }
        }
    }

    #[test]
    fn initial_condition() {
        for n in [0.0, 7.0, 1e7] {
            let c = coefficients(0.0, REF_R, n).unwrap();
            assert_eq!([c.a, c.c, c.d, c.e, c.f], [0.0; 5]);
            assert_eq!(c.b, n);
        }
        let cm = full_cm(&coefficients(0.0, 1.5, 2.0).unwrap()).unwrap();
        assert_eq!(cm, CovarianceMatrix::thermal(&[0.0, 2.0, 0.0]));
        assert_eq!(reduced_cm(&coefficients(0.0, 1.5, 2.0).unwrap()), CovarianceMatrix::vacuum(2));
    }

    #[test]
    fn half_period_values() {
        let r = REF_R;
        let q = (r - 1.0) * (r + 1.0);
        let a_pi = 4.0 * r * r / (q * q);
        let f_pi = 2.0 * r * (1.0 + r * r) / (q * q);
        assert!((a_pi / 1.6e13 - 1.0).abs() < 1e-5);
        for n in [0.0, 1e5, 5e6, 1e7] {
            let c = coefficients(PI, r, n).unwrap();
            assert!(rel(c.a, a_pi) < 1e-13);
            assert!(rel(c.e, a_pi) < 1e-13);
            assert!(rel(c.f, f_pi) < 1e-13);
            assert!((c.b - n).abs() <= 1e-9 * n.max(1.0));
            // sin(fl(π)) ≈ 1.2e-16 leaves C, D at ~1e-16 of the moment scale.
            let scale = c.a.max(c.b).max(1.0);
            assert!(c.c.abs() <= 1e-9 * scale && c.d.abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn exact_half_period() {
        for &(r, n) in &[(REF_R, 0.0), (REF_R, 1e7), (1.5, 3.0), (3.0, 1e5)] {
            let c = CoefficientSet::<f64>::half_period(r, n).unwrap();
            assert_eq!((c.b, c.c, c.d), (n, 0.0, 0.0));
            let near = coefficients(PI, r, n).unwrap();
            assert!(rel(c.a, near.a) < 1e-12 && rel(c.f, near.f) < 1e-12);
            assert!((simon_marker(&c) / simon_marker_half_period(r).unwrap() - 1.0).abs() < 1e-10);
        }
        assert!(CoefficientSet::<f64>::half_period(1.0, 0.0).is_err());
        assert!(CoefficientSet::<f64>::half_period(2.0, -1.0).is_err());
    }

    #[test]
    fn conserved_combination() {
        for &(t, r, n) in &[(1.3, REF_R, 1e5), (2.0, 1.5, 3.0), (5.9, 2.5, 1e7), (PI, 1.01, 0.0)] {
            let c = coefficients(t, r, n).unwrap();
            let terms = [r * r * c.a, c.e, 2.0 * r * c.f];
            let largest = terms.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            assert!((terms[0] + terms[1] - terms[2]).abs() <= 1e-8 * largest);
        }
    }

    #[test]
    fn periodicity() {
        for &(t, r, n) in &[(0.7, 1.5, 3.0), (2.9, REF_R, 1e5), (4.4, 2.0, 1e7)] {
            let x = coefficients(t, r, n).unwrap().values();
            let y = coefficients(t + 2.0 * PI, r, n).unwrap().values();
            let scale = x.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
            for (a, b) in x.iter().zip(y) {
                assert!((a - b).abs() <= 1e-9 * scale, "τ={t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn marker_examples() {
        assert_eq!(simon_marker(&coefficients(0.0, REF_R, 1e7).unwrap()), 0.0);
        assert!((simon_marker_half_period(2.0).unwrap() + 400.0 / 81.0).abs() < 1e-14);
        let t_pi = simon_marker_half_period(REF_R).unwrap();
        assert!((t_pi / -2.56e26 - 1.0).abs() < 1e-5, "{t_pi:e}");
        for r in [REF_R, 1.1, 2.0] {
            let closed = simon_marker_half_period(r).unwrap();
            for n in [0.0, 1e7] {
                let t = simon_marker(&coefficients(PI, r, n).unwrap());
                assert!(rel(t, closed) < 1e-10, "r={r} n̄={n}: {t:e} vs {closed:e}");
            }
        }
        assert!(simon_marker_half_period(1.0).is_err());
    }

    #[test]
    fn marker_negative_over_open_period() {
        let t_pi = simon_marker_half_period(REF_R).unwrap().abs();
        for n in [0.0, 1e5, 5e6, 1e7] {
            for k in 1..400 {
                let tau = 2.0 * PI * k as f64 / 400.0;
                let t = simon_marker(&coefficients(tau, REF_R, n).unwrap());
                assert!(t / t_pi < 0.0, "n̄={n} τ={tau}: T={t:e}");
            }
        }
    }

    #[test]
    fn marker_matches_direct_evaluation_at_moderate_r() {
        for &(t, r, n) in &[(1.0, 1.5, 3.0), (2.2, 2.0, 0.0), (5.0, 1.2, 40.0)] {
            let c = coefficients(t, r, n).unwrap();
            let direct = (c.a * c.e + 0.25 + (c.a + c.e) / 2.0 - c.f * c.f).powi(2) + 1.0 / 16.0
                - c.f * c.f / 2.0
                - (c.a / 2.0 + 0.25).powi(2)
                - (c.e / 2.0 + 0.25).powi(2);
            let scale = (c.a.max(c.e).max(c.f) + 1.0).powi(4);
            assert!((simon_marker(&c) - direct).abs() <= 1e-13 * scale);
        }
    }

    #[test]
    fn epr_examples() {
        let (m, p) = epr_variances(&coefficients(0.0, REF_R, 1e5).unwrap());
        assert_eq!((m, p), (1.0, 1.0));
        let r = REF_R;
        let (m, p) = epr_variances(&coefficients(PI, r, 1e5).unwrap());
        assert!(rel(m, ((r - 1.0) / (r + 1.0)).powi(2)) < 1e-9);
        assert!(rel(p, ((r + 1.0) / (r - 1.0)).powi(2)) < 1e-9);
        assert!((m / 1.5625e-14 - 1.0).abs() < 1e-6);
        assert!((p / 6.4e13 - 1.0).abs() < 1e-6);
        assert!((m * p - 1.0).abs() < 1e-9);
    }

    #[test]
    fn epr_agrees_with_covariance_matrix_at_moderate_r() {
        for &(t, r, n) in &[(1.0, 1.5, 3.0), (3.0, 2.0, 0.0), (4.5, 1.3, 100.0)] {
            let c = coefficients(t, r, n).unwrap();
            let (m, p) = epr_variances(&c);
            let (cm_m, cm_p) = reduced_cm(&c).epr_variances().unwrap();
            let scale = c.a.max(c.e).max(1.0);
            assert!((m - cm_m).abs() < 1e-12 * scale);
            assert!((p - cm_p).abs() < 1e-12 * scale);
        }
    }

    #[test]
    fn squeezing_parameters() {
        let xi = effective_squeezing(REF_R).unwrap();
        assert!((xi - 31.097).abs() < 1e-3, "ξ = {xi}");
        let big = effective_squeezing(1e6).unwrap();
        assert!(big > 0.0 && (big * 1e6 / 2.0 - 1.0).abs() < 1e-6);
        assert!(effective_squeezing(1.0).is_err());
        for r in [REF_R, 1.5, 3.0] {
            let s = two_mode_squeezing(r).unwrap();
            // sinh 2s = 2 sinh ξ, cross-correlation F(π) = sinh(2s)/2.
            let xi = effective_squeezing(r).unwrap();
            assert!(rel((2.0 * s).sinh(), 2.0 * xi.sinh()) < 1e-9);
            let tmsv = CovarianceMatrix::two_mode_squeezed_vacuum(s);
            let model = reduced_cm(&coefficients(PI, r, 0.0).unwrap());
            for i in 0..4 {
                for j in 0..4 {
                    let (x, y) = (tmsv.get(i, j), model.get(i, j));
                    assert!((x - y).abs() <= 1e-9 * y.abs().max(1.0), "[{i},{j}] {x} vs {y}");
                }
            }
            let (m, _) = epr_variances(&coefficients(PI, r, 0.0).unwrap());
            assert!(rel(m, (-2.0 * s).exp()) < 1e-9);
        }
    }

    #[test]
    fn reduced_is_partial_trace_of_full() {
        for &(t, r, n) in &[(1.0, 1.5, 3.0), (2.0, 2.5, 1e3), (5.5, 1.05, 0.0)] {
            let c = coefficients(t, r, n).unwrap();
            let full = full_cm(&c).unwrap();
            assert_eq!(partial_trace(&full, &[MODE_STOKES, MODE_ANTI_STOKES]).unwrap(), reduced_cm(&c));
        }
    }

    #[test]
    fn full_state_is_pure_for_cold_mirror() {
        for t in [0.4, PI, 5.0] {
            let c = CoefficientSet::<DoubleDouble>::evaluate(t, 1.5, 0.0).unwrap();
            let cm = full_cm(&c).unwrap();
            assert!((purity(&cm).unwrap().to_f64() - 1.0).abs() < 1e-9);
            for nu in symplectic_eigenvalues(&cm).unwrap() {
                assert!((nu.to_f64() - 0.5).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn reduced_half_period_state_is_pure() {
        for r in [1.1, 2.0] {
            for n in [0.0, 1e5, 1e7] {
                let c = CoefficientSet::<DoubleDouble>::evaluate(PI, r, n).unwrap();
                for nu in symplectic_eigenvalues(&reduced_cm(&c)).unwrap() {
                    assert!((nu.to_f64() - 0.5).abs() < 1e-9, "r={r} n̄={n}: ν={nu}");
                }
            }
        }
    }

    #[test]
    fn transposed_minimum_at_half_period() {
        let r = REF_R;
        let expected = (r - 1.0).powi(2) / (2.0 * (r + 1.0).powi(2));
        assert!((expected / 7.8125e-15 - 1.0).abs() < 1e-6);
        for n in [0.0, 1e7] {
            let nu = pt_min_symplectic_eigenvalue(&coefficients(PI, r, n).unwrap());
            assert!(rel(nu, expected) < 1e-9, "{nu:e}");
        }
    }

    #[test]
    fn linspace_endpoints() {
        assert!(linspace(0.0, 1.0, 0).is_empty());
        assert_eq!(linspace(0.5, 1.0, 1), vec![0.5]);
        let g = linspace(0.0, 2.0 * PI, 7);
        assert_eq!((g[0], g[6], g.len()), (0.0, 2.0 * PI, 7));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(coefficients(1.0, 1.0, 0.0), Err(Error::Domain(_))));
        assert!(coefficients(1.0, 0.5, 0.0).is_err());
        assert!(coefficients(1.0, 1.5, -1.0).is_err());
        assert!(coefficients(f64::NAN, 1.5, 0.0).is_err());
    }
}
