//! Flat `key = value` configuration files.
//!
//! One assignment per line; `#` starts a comment; blank lines are ignored.
//! Keys may appear at most once. Values are SI units (see [`PARAM_KEYS`]).

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_2;
use std::io::Read;
use std::path::Path;

use sideband_core::PhysicalParams;

use crate::error::CliError;
use crate::sweep::{Output, SweepSpec};

/// Accepted keys for laboratory parameters, with units; `None` marks a
/// required key, `Some` its default.
pub const PARAM_KEYS: [(&str, &str, Option<f64>); 8] = [
    ("power", "W", None),
    ("laser_frequency", "rad/s", None),
    ("mechanical_frequency", "rad/s", None),
    ("detection_bandwidth", "Hz", None),
    ("mode_bandwidth", "Hz", None),
    ("effective_mass", "kg", None),
    ("temperature", "K", Some(300.0)),
    ("incidence_angle", "rad", Some(0.0)),
];

pub const SWEEP_KEYS: [&str; 6] = ["tau_min", "tau_max", "points", "r", "nbar", "outputs"];

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

/// Reads a config from `path`, or stdin for `None` and `-`.
pub fn read_source(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io(format!("cannot read config from stdin: {e}")))?;
            Ok(s)
        }
    }
}

pub fn parse_entries(text: &str) -> Result<Vec<Entry>, CliError> {
    let mut entries: Vec<Entry> = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {line}: expected `key = value`, got `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(CliError::Config(format!("line {line}: missing key before `=`")));
        }
        if value.is_empty() {
            return Err(CliError::Config(format!("line {line}: `{key}` has no value")));
        }
        if let Some(first) = seen.insert(key.to_string(), line) {
            return Err(CliError::Config(format!(
                "line {line}: duplicate key `{key}` (first set on line {first})"
            )));
        }
        entries.push(Entry {
            key: key.to_string(),
            value: value.to_string(),
            line,
        });
    }
    Ok(entries)
}

fn number(e: &Entry) -> Result<f64, CliError> {
    e.value
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::Config(format!("line {}: `{}` expects a number, got `{}`", e.line, e.key, e.value)))
}

fn unknown(e: &Entry, allowed: &[&str]) -> CliError {
    CliError::Config(format!(
        "line {}: unknown key `{}` (expected one of: {})",
        e.line,
        e.key,
        allowed.join(", ")
    ))
}

pub fn parse_params(text: &str) -> Result<PhysicalParams, CliError> {
    let entries = parse_entries(text)?;
    let names: Vec<&str> = PARAM_KEYS.iter().map(|k| k.0).collect();
    let mut values: HashMap<&str, f64> = HashMap::new();
    for e in &entries {
        let Some(&(name, _, _)) = PARAM_KEYS.iter().find(|k| k.0 == e.key) else {
            return Err(unknown(e, &names));
        };
        let v = number(e)?;
        let ok = match name {
            "temperature" => v >= 0.0,
            "incidence_angle" => (0.0..FRAC_PI_2).contains(&v),
            _ => v > 0.0,
        };
        if !ok {
            let rule = match name {
                "temperature" => "must be >= 0",
                "incidence_angle" => "must lie in [0, pi/2)",
                _ => "must be > 0",
            };
            return Err(CliError::Config(format!("line {}: `{name}` {rule}, got {v}", e.line)));
        }
        values.insert(name, v);
    }
    let missing: Vec<&str> = PARAM_KEYS
        .iter()
        .filter(|(k, _, default)| default.is_none() && !values.contains_key(k))
        .map(|k| k.0)
        .collect();
    if !missing.is_empty() {
        return Err(CliError::Config(format!("missing required keys: {}", missing.join(", "))));
    }
    let get = |k: &str| {
        values
            .get(k)
            .copied()
            .or_else(|| PARAM_KEYS.iter().find(|p| p.0 == k).and_then(|p| p.2))
            .expect("required keys checked above")
    };
    Ok(PhysicalParams {
        power: get("power"),
        laser_frequency: get("laser_frequency"),
        mechanical_frequency: get("mechanical_frequency"),
        detection_bandwidth: get("detection_bandwidth"),
        mode_bandwidth: get("mode_bandwidth"),
        effective_mass: get("effective_mass"),
        temperature: get("temperature"),
        incidence_angle: get("incidence_angle"),
    })
}

/// Comma-separated list of numbers.
pub fn parse_number_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| format!("`{t}` is not a number")))
        .collect::<Result<Vec<_>, _>>()
        .and_then(|v| if v.is_empty() { Err("empty list".into()) } else { Ok(v) })
}

/// Sweep settings; unspecified keys keep the values of `base`.
pub fn parse_sweep(text: &str, base: SweepSpec) -> Result<SweepSpec, CliError> {
    let mut spec = base;
    for e in parse_entries(text)? {
        match e.key.as_str() {
            "tau_min" => spec.tau_min = number(&e)?,
            "tau_max" => spec.tau_max = number(&e)?,
            "r" => spec.r = number(&e)?,
            "points" => {
                spec.points = e.value.parse::<usize>().map_err(|_| {
                    CliError::Config(format!("line {}: `points` expects a positive integer, got `{}`", e.line, e.value))
                })?
            }
            "nbar" => {
                spec.nbar = parse_number_list(&e.value)
                    .map_err(|m| CliError::Config(format!("line {}: `nbar`: {m}", e.line)))?
            }
            "outputs" => {
                spec.outputs = Output::parse_list(&e.value)
                    .map_err(|m| CliError::Config(format!("line {}: `outputs`: {m}", e.line)))?
            }
            _ => return Err(unknown(&e, &SWEEP_KEYS)),
        }
    }
    Ok(spec)
}
