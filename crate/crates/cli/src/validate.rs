//! Closed forms versus propagated moments.

use serde::Serialize;
use sideband_core::oracle::{crosscheck, CrosscheckReport};
use sideband_core::sideband::linspace;

use crate::error::CliError;

/// `r − 1` at or above which the well-conditioned tolerance applies.
pub const WELL_CONDITIONED_EXCESS: f64 = 1e-2;
pub const WELL_CONDITIONED_TOL: f64 = 1e-8;
pub const NEAR_THRESHOLD_TOL: f64 = 1e-6;

pub fn regime_tolerance(r: f64) -> f64 {
    if r - 1.0 >= WELL_CONDITIONED_EXCESS {
        WELL_CONDITIONED_TOL
    } else {
        NEAR_THRESHOLD_TOL
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Breach {
    pub nbar: f64,
    pub tau: Option<f64>,
    pub coefficient: Option<String>,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub r: f64,
    pub tolerance: f64,
    pub tau_min: f64,
    pub tau_max: f64,
    pub points: usize,
    pub passed: bool,
    pub worst: Option<Breach>,
    pub runs: Vec<CrosscheckReport>,
}

pub fn run_validate(r: f64, nbars: &[f64], points: usize, tau_min: f64, tau_max: f64) -> Result<ValidationReport, CliError> {
    if points < 2 {
        return Err(CliError::Config(format!("points must be >= 2, got {points}")));
    }
    if !(tau_min.is_finite() && tau_max.is_finite() && tau_min < tau_max) {
        return Err(CliError::Config(format!("need tau_min < tau_max, got [{tau_min}, {tau_max}]")));
    }
    let grid = linspace(tau_min, tau_max, points);
    let runs = nbars
        .iter()
        .map(|&n| crosscheck(r, n, &grid))
        .collect::<Result<Vec<_>, _>>()?;
    let tolerance = regime_tolerance(r);
    let worst = runs
        .iter()
        .max_by(|a, b| a.max_rel_dev.total_cmp(&b.max_rel_dev))
        .map(|w| Breach {
            nbar: w.nbar,
            tau: w.worst_tau,
            coefficient: w.worst_coefficient.clone(),
            deviation: w.max_rel_dev,
        });
    let passed = worst.as_ref().is_none_or(|w| w.deviation <= tolerance);
    Ok(ValidationReport {
        r,
        tolerance,
        tau_min,
        tau_max,
        points,
        passed,
        worst,
        runs,
    })
}

impl ValidationReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per `(n̄, coefficient)`.
    pub fn to_csv(&self) -> String {
        use crate::sweep::format_float;
        let mut out = String::from("nbar,coefficient,max_rel_dev,worst_tau\n");
        for run in &self.runs {
            for c in &run.per_coefficient {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    format_float(run.nbar),
                    c.name,
                    format_float(c.max_rel_dev),
                    c.worst_tau.map(format_float).unwrap_or_default()
                ));
            }
        }
        out
    }

    /// Failure message naming the offending point, if the tolerance is breached.
    pub fn breach_message(&self) -> Option<String> {
        if self.passed {
            return None;
        }
        let w = self.worst.as_ref()?;
        Some(format!(
            "coefficient {} at tau = {} (nbar = {}) deviates by {:e} > {:e}",
            w.coefficient.as_deref().unwrap_or("?"),
            w.tau.map_or("?".into(), |t| t.to_string()),
            w.nbar,
            w.deviation,
            self.tolerance
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerances_by_regime() {
        assert_eq!(regime_tolerance(1.5), 1e-8);
        assert_eq!(regime_tolerance(1.0 + 2.5e-7), 1e-6);
    }

    #[test]
    fn moderate_ratio_passes() {
        let rep = run_validate(1.5, &[0.0, 10.0], 200, 0.0, 2.0 * std::f64::consts::PI).unwrap();
        assert!(rep.passed && rep.breach_message().is_none());
        assert_eq!(rep.runs.len(), 2);
        assert_eq!(rep.to_csv().lines().count(), 1 + 12);
    }

    #[test]
    fn refuses_degenerate_ratio() {
        let err = run_validate(1.0 + 1e-13, &[0.0], 10, 0.0, 1.0).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn breach_names_the_point() {
        let mut rep = run_validate(1.5, &[0.0], 10, 0.0, 1.0).unwrap();
        rep.tolerance = 0.0;
        rep.passed = false;
        let msg = rep.breach_message().unwrap();
        assert!(msg.contains("coefficient") && msg.contains("tau ="), "{msg}");
    }
}
