//! Parameter sweeps over scaled time and mirror occupation.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use sideband_core::coefficients;
use sideband_core::sideband::{epr_variances, linspace, simon_marker, simon_marker_half_period};

use crate::error::CliError;

/// Ratio used by the reference operating point.
pub const DEFAULT_R: f64 = 1.0 + 2.5e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Output {
    TRaw,
    TNorm,
    DeltaMinus,
    DeltaPlus,
    Coefficients,
}

impl Output {
    pub const ALL: [Output; 5] = [
        Output::TRaw,
        Output::TNorm,
        Output::DeltaMinus,
        Output::DeltaPlus,
        Output::Coefficients,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Output::TRaw => "T_raw",
            Output::TNorm => "T_norm",
            Output::DeltaMinus => "delta_minus",
            Output::DeltaPlus => "delta_plus",
            Output::Coefficients => "coefficients",
        }
    }

    fn columns(self) -> &'static [&'static str] {
        match self {
            Output::TRaw => &["T_raw"],
            Output::TNorm => &["T_norm"],
            Output::DeltaMinus => &["delta_minus"],
            Output::DeltaPlus => &["delta_plus"],
            Output::Coefficients => &["A", "B", "C", "D", "E", "F"],
        }
    }

    /// Comma-separated names, returned in canonical column order.
    pub fn parse_list(s: &str) -> Result<Vec<Output>, String> {
        let mut out = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Output>, String>>()?;
        if out.is_empty() {
            return Err("no outputs selected".into());
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Output {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Output::ALL.into_iter().find(|o| o.name() == s).ok_or_else(|| {
            let names: Vec<_> = Output::ALL.iter().map(|o| o.name()).collect();
            format!("unknown output `{s}` (expected one of: {})", names.join(", "))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSpec {
    pub tau_min: f64,
    pub tau_max: f64,
    pub points: usize,
    pub r: f64,
    pub nbar: Vec<f64>,
    pub outputs: Vec<Output>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            tau_min: 0.0,
            tau_max: 2.0 * PI,
            points: 500,
            r: DEFAULT_R,
            nbar: vec![0.0],
            outputs: Output::ALL.to_vec(),
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tau_min.is_finite() && self.tau_max.is_finite() && self.tau_min < self.tau_max) {
            return Err(CliError::Config(format!(
                "need tau_min < tau_max, got [{}, {}]",
                self.tau_min, self.tau_max
            )));
        }
        if self.points < 2 {
            return Err(CliError::Config(format!("points must be >= 2, got {}", self.points)));
        }
        if self.nbar.is_empty() || self.outputs.is_empty() {
            return Err(CliError::Config("nbar and outputs must be non-empty".into()));
        }
        if !(self.r.is_finite() && self.r > 1.0) {
            return Err(CliError::Domain(format!("r must be > 1, got {}", self.r)));
        }
        if let Some(n) = self.nbar.iter().find(|n| !(n.is_finite() && **n >= 0.0)) {
            return Err(CliError::Domain(format!("nbar must be >= 0, got {n}")));
        }
        Ok(())
    }

    fn sorted_outputs(&self) -> Vec<Output> {
        let mut outputs = self.outputs.clone();
        outputs.sort();
        outputs.dedup();
        outputs
    }

    pub fn columns(&self) -> Vec<String> {
        let mut cols = vec!["tau".to_string(), "nbar".to_string()];
        cols.extend(
            self.sorted_outputs()
                .iter()
                .flat_map(|o| o.columns())
                .map(|c| c.to_string()),
        );
        cols
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Dataset {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// All sweep quantities at one `(τ, n̄)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Row {
    pub tau: f64,
    pub nbar: f64,
    pub t_raw: f64,
    pub t_norm: f64,
    pub delta_minus: f64,
    pub delta_plus: f64,
    pub coefficients: [f64; 6],
}

/// Evaluates one row; `t_pi` is `|T(π)|` for the ratio `r`.
pub fn evaluate_row(tau: f64, r: f64, nbar: f64, t_pi: f64) -> Result<Row, CliError> {
    let c = coefficients(tau, r, nbar)?;
    let t_raw = simon_marker(&c);
    let (delta_minus, delta_plus) = epr_variances(&c);
    Ok(Row {
        tau,
        nbar,
        t_raw,
        t_norm: t_raw / t_pi,
        delta_minus,
        delta_plus,
        coefficients: c.values(),
    })
}

/// Evaluates one row with the normalization for `r`.
pub fn row_at(tau: f64, r: f64, nbar: f64) -> Result<Row, CliError> {
    let t_pi = simon_marker_half_period(r)?.abs();
    evaluate_row(tau, r, nbar, t_pi)
}

impl Row {
    fn select(&self, outputs: &[Output]) -> Vec<f64> {
        let mut v = vec![self.tau, self.nbar];
        for o in outputs {
            match o {
                Output::TRaw => v.push(self.t_raw),
                Output::TNorm => v.push(self.t_norm),
                Output::DeltaMinus => v.push(self.delta_minus),
                Output::DeltaPlus => v.push(self.delta_plus),
                Output::Coefficients => v.extend_from_slice(&self.coefficients),
            }
        }
        v
    }
}

/// Rows are τ-major, n̄-minor.
pub fn run_sweep(spec: &SweepSpec) -> Result<Dataset, CliError> {
    spec.validate()?;
    let t_pi = simon_marker_half_period(spec.r)?.abs();
    let outputs = spec.sorted_outputs();
    let taus = linspace(spec.tau_min, spec.tau_max, spec.points);
    let rows = taus
        .par_iter()
        .map(|&tau| {
            spec.nbar
                .iter()
                .map(|&n| evaluate_row(tau, spec.r, n, t_pi).map(|row| row.select(&outputs)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(Dataset {
        columns: spec.columns(),
        rows,
    })
}

/// 17 significant digits in C `%.16e` style; negative zero prints as zero.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0.0000000000000000e+00".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.16e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent format");
    let exp: i32 = exp.parse().expect("integer exponent");
    format!("{mantissa}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
}

impl Dataset {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| format_float(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Vec<serde_json::Value>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| json_number(x)).collect())
            .collect();
        let doc = serde_json::json!({ "columns": self.columns, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("dataset serializes");
        s.push('\n');
        s
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

fn json_number(x: f64) -> serde_json::Value {
    let x = if x == 0.0 { 0.0 } else { x };
    serde_json::Number::from_f64(x).map_or(serde_json::Value::Null, serde_json::Value::Number)
}
