//! Laboratory parameters and the model constants derived from them.
//!
//! Optical and mechanical frequencies (`ω₀`, `Ω`) are angular, in rad/s;
//! bandwidths (`Δν_det`, `Δν_mode`) are ordinary frequencies, in Hz.

use serde::{Deserialize, Serialize};

use crate::constants::{BOLTZMANN, HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::real::Real;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Driving laser power ℘, W.
    pub power: f64,
    /// Laser carrier ω₀, rad/s.
    pub laser_frequency: f64,
    /// Mirror vibrational mode Ω, rad/s.
    pub mechanical_frequency: f64,
    /// Detection bandwidth Δν_det, Hz.
    pub detection_bandwidth: f64,
    /// Sideband mode bandwidth Δν_mode, Hz.
    pub mode_bandwidth: f64,
    /// Effective mass of the vibrational mode, kg.
    pub effective_mass: f64,
    /// Mirror temperature, K.
    pub temperature: f64,
    /// Angle of incidence φ₀ of the driving beam, rad.
    pub incidence_angle: f64,
}

impl PhysicalParams {
    /// Micro-opto-electro-mechanical operating point used as the reference
    /// design: 10 W at ω₀ = 2e15 rad/s on a 1e-10 kg, 5e8 rad/s mode.
    pub fn moems_reference() -> Self {
        PhysicalParams {
            power: 10.0,
            laser_frequency: 2e15,
            mechanical_frequency: 5e8,
            detection_bandwidth: 1e7,
            mode_bandwidth: 1e3,
            effective_mass: 1e-10,
            temperature: 300.0,
            incidence_angle: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("power", self.power),
            ("laser_frequency", self.laser_frequency),
            ("mechanical_frequency", self.mechanical_frequency),
            ("detection_bandwidth", self.detection_bandwidth),
            ("mode_bandwidth", self.mode_bandwidth),
            ("effective_mass", self.effective_mass),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::domain(format!("{name} must be finite and > 0, got {value}")));
            }
        }
        if !(self.temperature.is_finite() && self.temperature >= 0.0) {
            return Err(Error::domain(format!(
                "temperature must be finite and >= 0, got {}",
                self.temperature
            )));
        }
        if !(self.incidence_angle >= 0.0 && self.incidence_angle < std::f64::consts::FRAC_PI_2) {
            return Err(Error::domain(format!(
                "incidence_angle must lie in [0, pi/2), got {}",
                self.incidence_angle
            )));
        }
        if self.mechanical_frequency >= self.laser_frequency {
            return Err(Error::domain(format!(
                "mechanical_frequency ({}) must be strictly below laser_frequency ({})",
                self.mechanical_frequency, self.laser_frequency
            )));
        }
        Ok(())
    }
}

/// Model constants of the three-mode Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Couplings {
    /// Stokes–mirror (two-mode squeezing) coupling χ, Hz.
    pub chi: f64,
    /// Anti-Stokes–mirror (beam-splitter) coupling θ, Hz.
    pub theta: f64,
    /// θ/χ.
    pub r: f64,
    /// Oscillation frequency Θ = χ√(r² − 1), Hz.
    pub big_theta: f64,
    /// Initial mean phonon number of the mirror mode.
    pub nbar: f64,
}

impl Couplings {
    /// Couplings with a prescribed ratio and oscillation frequency.
    pub fn from_ratio(r: f64, big_theta: f64, nbar: f64) -> Result<Self> {
        let (chi, theta) = coupling_pair::<f64>(r, big_theta)?;
        if !(nbar.is_finite() && nbar >= 0.0) {
            return Err(Error::domain(format!("nbar must be finite and >= 0, got {nbar}")));
        }
        Ok(Couplings {
            chi,
            theta,
            r,
            big_theta,
            nbar,
        })
    }
}

/// `(χ, θ) = (Θ/√(r²−1), rΘ/√(r²−1))`, evaluated in the requested precision.
pub fn coupling_pair<T: Real>(r: f64, big_theta: f64) -> Result<(T, T)> {
    if !(r.is_finite() && r > 1.0) {
        return Err(Error::domain(format!("coupling ratio r must be > 1, got {r}")));
    }
    if !(big_theta.is_finite() && big_theta > 0.0) {
        return Err(Error::domain(format!("Θ must be > 0, got {big_theta}")));
    }
    let one = T::one();
    let r = T::from_f64(r);
    let q = (r - one) * (r + one);
    let chi = T::from_f64(big_theta) / q.sqrt();
    Ok((chi, r * chi))
}

/// Bose–Einstein occupation of a mode at angular frequency `omega` (rad/s).
pub fn thermal_occupation(omega: f64, temperature: f64) -> f64 {
    debug_assert!(omega > 0.0 && temperature >= 0.0);
    if temperature == 0.0 {
        return 0.0;
    }
    let x = HBAR * omega / (BOLTZMANN * temperature);
    1.0 / x.exp_m1()
}

pub fn couplings_from_physical(p: &PhysicalParams) -> Result<Couplings> {
    p.validate()?;
    let detuned = p.laser_frequency - p.mechanical_frequency;
    let chi = p.incidence_angle.cos()
        * (p.power * p.detection_bandwidth.powi(2) * detuned
            / (2.0
                * p.effective_mass
                * p.mechanical_frequency
                * SPEED_OF_LIGHT.powi(2)
                * p.mode_bandwidth))
            .sqrt();
    // r² − 1 = 2Ω/(ω₀ − Ω), exact in form, no cancellation.
    let q = 2.0 * p.mechanical_frequency / detuned;
    let r = (1.0 + q).sqrt();
    Ok(Couplings {
        chi,
        theta: chi * r,
        r,
        big_theta: chi * q.sqrt(),
        nbar: thermal_occupation(p.mechanical_frequency, p.temperature),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_couplings() {
        let c = couplings_from_physical(&PhysicalParams::moems_reference()).unwrap();
        assert!((c.chi - 471_730.8).abs() < 0.1, "chi = {}", c.chi);
        assert!(((c.r - 1.0) / 2.5e-7 - 1.0).abs() < 1e-3, "r - 1 = {:e}", c.r - 1.0);
        assert!((c.big_theta - 333.564).abs() < 1e-3, "Θ = {}", c.big_theta);
        assert!((c.theta / c.chi - c.r).abs() < 1e-15);
        assert!((c.big_theta - c.chi * (c.r * c.r - 1.0).sqrt()).abs() / c.big_theta < 1e-6);
    }

    #[test]
    fn grazing_incidence_kills_coupling() {
        let mut p = PhysicalParams::moems_reference();
        p.incidence_angle = std::f64::consts::FRAC_PI_2 - 1e-9;
        let c = couplings_from_physical(&p).unwrap();
        assert!(c.chi < 1e-3);
        p.incidence_angle = std::f64::consts::FRAC_PI_2;
        assert!(matches!(couplings_from_physical(&p), Err(Error::Domain(_))));
    }

    #[test]
    fn domain_errors() {
        let mut p = PhysicalParams::moems_reference();
        p.mechanical_frequency = p.laser_frequency;
        assert!(matches!(couplings_from_physical(&p), Err(Error::Domain(m)) if m.contains("mechanical_frequency")));
        let mut p = PhysicalParams::moems_reference();
        p.effective_mass = 0.0;
        assert!(couplings_from_physical(&p).is_err());
        let mut p = PhysicalParams::moems_reference();
        p.mode_bandwidth = 0.0;
        assert!(couplings_from_physical(&p).is_err());
        let mut p = PhysicalParams::moems_reference();
        p.temperature = -1.0;
        assert!(couplings_from_physical(&p).is_err());
    }

    #[test]
    fn thermal_occupation_values() {
        assert_eq!(thermal_occupation(5e8, 0.0), 0.0);
        // ħΩ/k_BT = 1.273039e-5 at 300 K.
        let n = thermal_occupation(5e8, 300.0);
        assert!((n - 78_551.70).abs() < 1e-2, "nbar = {n}");
        let mut p = PhysicalParams::moems_reference();
        p.temperature = 0.0;
        assert_eq!(couplings_from_physical(&p).unwrap().nbar, 0.0);
    }

    #[test]
    fn thermal_occupation_high_temperature_limit() {
        for t in [1e3, 1e5] {
            let x = HBAR * 5e8 / (BOLTZMANN * t);
            assert!(x < 0.01);
            let classical = 1.0 / x;
            assert!((thermal_occupation(5e8, t) / classical - 1.0).abs() < 0.01);
        }
    }

    #[test]
    fn from_ratio_roundtrip() {
        let c = Couplings::from_ratio(1.5, 2.0, 3.0).unwrap();
        assert!((c.theta / c.chi - 1.5).abs() < 1e-15);
        assert!((c.chi * (1.5f64 * 1.5 - 1.0).sqrt() - 2.0).abs() < 1e-14);
        assert!(Couplings::from_ratio(1.0, 2.0, 0.0).is_err());
        assert!(Couplings::from_ratio(1.5, 2.0, -1.0).is_err());
    }
}
