//! Coupling report for a set of laboratory parameters.

use serde::Serialize;
use sideband_core::{couplings_from_physical, Couplings, PhysicalParams};

use crate::error::CliError;
use crate::sweep::format_float;

/// Reference bands for the derived constants of the operating point.
pub const CHI_BAND: (f64, f64) = (2e5, 8e5);
pub const RATIO_EXCESS: f64 = 2.5e-7;
pub const RATIO_EXCESS_REL_TOL: f64 = 0.1;
pub const BIG_THETA_BAND: (f64, f64) = (1e2, 3e3);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub inputs: PhysicalParams,
    pub couplings: Couplings,
    pub warnings: Vec<String>,
}

pub fn anchor_warnings(c: &Couplings) -> Vec<String> {
    let mut w = Vec::new();
    if !(CHI_BAND.0..=CHI_BAND.1).contains(&c.chi) {
        w.push(format!(
            "chi = {:e} Hz outside the reference band [{:e}, {:e}] Hz",
            c.chi, CHI_BAND.0, CHI_BAND.1
        ));
    }
    let excess = c.r - 1.0;
    if ((excess - RATIO_EXCESS) / RATIO_EXCESS).abs() > RATIO_EXCESS_REL_TOL {
        w.push(format!(
            "r - 1 = {excess:e} departs from {RATIO_EXCESS:e} by more than {}%",
            RATIO_EXCESS_REL_TOL * 100.0
        ));
    }
    if !(BIG_THETA_BAND.0..=BIG_THETA_BAND.1).contains(&c.big_theta) {
        w.push(format!(
            "Theta = {:e} Hz outside the reference band [{:e}, {:e}] Hz",
            c.big_theta, BIG_THETA_BAND.0, BIG_THETA_BAND.1
        ));
    }
    w
}

pub fn run_report(params: &PhysicalParams) -> Result<RunReport, CliError> {
    let couplings = couplings_from_physical(params)?;
    Ok(RunReport {
        inputs: *params,
        warnings: anchor_warnings(&couplings),
        couplings,
    })
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// `quantity,value` rows: inputs, then couplings, then warnings.
    pub fn to_csv(&self) -> String {
        let p = &self.inputs;
        let c = &self.couplings;
        let rows = [
            ("power", p.power),
            ("laser_frequency", p.laser_frequency),
            ("mechanical_frequency", p.mechanical_frequency),
            ("detection_bandwidth", p.detection_bandwidth),
            ("mode_bandwidth", p.mode_bandwidth),
            ("effective_mass", p.effective_mass),
            ("temperature", p.temperature),
            ("incidence_angle", p.incidence_angle),
            ("chi", c.chi),
            ("theta", c.theta),
            ("r", c.r),
            ("big_theta", c.big_theta),
            ("nbar", c.nbar),
        ];
        let mut out = String::from("quantity,value\n");
        for (k, v) in rows {
            out.push_str(&format!("{k},{}\n", format_float(v)));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning,\"{}\"\n", w.replace('"', "\"\"")));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_point_has_no_warnings() {
        let rep = run_report(&PhysicalParams::moems_reference()).unwrap();
        assert!(rep.warnings.is_empty(), "{:?}", rep.warnings);
        assert!((rep.couplings.chi / 4.7e5 - 1.0).abs() < 0.01);
    }

    #[test]
    fn departures_are_flagged() {
        let p = PhysicalParams {
            mechanical_frequency: 5e9,
            power: 1000.0,
            ..PhysicalParams::moems_reference()
        };
        let rep = run_report(&p).unwrap();
        assert_eq!(rep.warnings.len(), 3, "{:?}", rep.warnings);
        assert!(rep.to_csv().lines().filter(|l| l.starts_with("warning,")).count() == 3);
    }

    #[test]
    fn cold_mirror_has_no_phonons() {
        let p = PhysicalParams { temperature: 0.0, ..PhysicalParams::moems_reference() };
        assert_eq!(run_report(&p).unwrap().couplings.nbar, 0.0);
    }

    #[test]
    fn inverted_frequencies_are_a_domain_error() {
        let p = PhysicalParams {
            mechanical_frequency: 3e15,
            ..PhysicalParams::moems_reference()
        };
        let err = run_report(&p).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("mechanical_frequency"));
    }
}
