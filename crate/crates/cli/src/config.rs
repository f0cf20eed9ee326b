//! Line-oriented `key = value [unit]` configuration files.

use std::fmt;

use faraday_core::{ProbeSpec, SystemParams, ThermalEnvironment};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value [unit]`")]
    Syntax { line: usize },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("`{key}`: `{value}` is not a number")]
    NotNumeric { key: String, value: String },
    #[error("`{key}`: unit `{unit}` does not apply")]
    BadUnit { key: String, unit: String },
    #[error("`{0}` given twice")]
    Duplicate(String),
    #[error("missing kappa_i")]
    MissingKappaI,
    #[error("{0}")]
    Invalid(String),
}

/// Physical dimension of a configuration key.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dimension {
    Rate,
    Temperature,
    Power,
    Time,
}

pub const KEYS: &[&str] = &[
    "kappa_i", "kappa_ex", "G", "gamma", "Delta_r", "Delta_q", "A", "delta", "omega_r", "T", "P_in", "tau_m",
];

fn dimension(key: &str) -> Option<Dimension> {
    match key {
        "kappa_i" | "kappa_ex" | "G" | "gamma" | "Delta_r" | "Delta_q" | "A" | "delta" | "omega_r" => {
            Some(Dimension::Rate)
        }
        "T" => Some(Dimension::Temperature),
        "P_in" => Some(Dimension::Power),
        "tau_m" => Some(Dimension::Time),
        _ => None,
    }
}

/// A value as written, before κ_i-relative units are resolved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    Absolute(f64),
    KappaRelative(f64),
}

impl Quantity {
    fn resolve(self, kappa_i: f64) -> f64 {
        match self {
            Self::Absolute(x) => x,
            Self::KappaRelative(x) => x * kappa_i,
        }
    }
}

/// Parses `value [unit]` for `key`.
pub fn parse_value(key: &str, text: &str) -> Result<Quantity, ConfigError> {
    let dim = dimension(key).ok_or_else(|| ConfigError::UnknownKey(key.to_string()))?;
    let mut parts = text.split_whitespace();
    let number = parts.next().ok_or_else(|| ConfigError::NotNumeric {
        key: key.into(),
        value: text.into(),
    })?;
    let unit = parts.next();
    if parts.next().is_some() {
        return Err(ConfigError::NotNumeric { key: key.into(), value: text.into() });
    }
    let x: f64 = number.parse().map_err(|_| ConfigError::NotNumeric {
        key: key.into(),
        value: number.into(),
    })?;
    if !x.is_finite() {
        return Err(ConfigError::NotNumeric { key: key.into(), value: number.into() });
    }
    let bad = || ConfigError::BadUnit { key: key.into(), unit: unit.unwrap_or("").into() };
    let q = match (dim, unit) {
        (Dimension::Rate, None | Some("Hz")) => Quantity::Absolute(x),
        (Dimension::Rate, Some("kHz")) => Quantity::Absolute(x * 1e3),
        (Dimension::Rate, Some("MHz")) => Quantity::Absolute(x * 1e6),
        (Dimension::Rate, Some("GHz")) => Quantity::Absolute(x * 1e9),
        (Dimension::Rate, Some("kappa_i")) if key != "kappa_i" && key != "omega_r" => Quantity::KappaRelative(x),
        (Dimension::Temperature, None | Some("K")) => Quantity::Absolute(x),
        (Dimension::Power, None | Some("W")) => Quantity::Absolute(x),
        (Dimension::Power, Some("nW")) => Quantity::Absolute(x * 1e-9),
        (Dimension::Time, None | Some("s")) => Quantity::Absolute(x),
        _ => return Err(bad()),
    };
    Ok(q)
}

/// Key/value entries in file order, later `--set` overrides replacing earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigEntries {
    entries: Vec<(String, String)>,
}

impl ConfigEntries {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut out = Self::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(ConfigError::Syntax { line: n + 1 })?;
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() || value.is_empty() {
                return Err(ConfigError::Syntax { line: n + 1 });
            }
            parse_value(key, value)?;
            if out.get(key).is_some() {
                return Err(ConfigError::Duplicate(key.into()));
            }
            out.entries.push((key.into(), value.into()));
        }
        Ok(out)
    }

    /// Applies a `key=value [unit]` override.
    pub fn set(&mut self, assignment: &str) -> Result<(), ConfigError> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| ConfigError::Invalid(format!("override `{assignment}` is not key=value")))?;
        let (key, value) = (key.trim(), value.trim());
        parse_value(key, value)?;
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value.into(),
            None => self.entries.push((key.into(), value.into())),
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let kappa_i = match self.get("kappa_i") {
            Some(v) => parse_value("kappa_i", v)?.resolve(f64::NAN),
            None => return Err(ConfigError::MissingKappaI),
        };
        let value = |key: &str, default: f64| -> Result<f64, ConfigError> {
            match self.get(key) {
                Some(v) => Ok(parse_value(key, v)?.resolve(kappa_i)),
                None => Ok(default),
            }
        };
        let params = SystemParams {
            kappa_i,
            kappa_ex: value("kappa_ex", kappa_i)?,
            coupling: value("G", kappa_i)?,
            gamma: value("gamma", 1e-3 * kappa_i)?,
            cavity_detuning: value("Delta_r", 0.0)?,
            spin_detuning: value("Delta_q", 0.0)?,
            bias: value("A", 0.0)?,
            signal: value("delta", 0.0)?,
            cavity_frequency: value("omega_r", faraday_core::params::DEFAULT_CAVITY_FREQUENCY)?,
        };
        params.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        let config = RunConfig {
            params,
            temperature: value("T", DEFAULT_TEMPERATURE)?,
            power: value("P_in", DEFAULT_POWER)?,
            tau_m: value("tau_m", DEFAULT_TAU_M)?,
        };
        config.environment()?;
        config.probe()?;
        Ok(config)
    }
}

pub const DEFAULT_TEMPERATURE: f64 = 70.0;
pub const DEFAULT_POWER: f64 = 1e-9;
pub const DEFAULT_TAU_M: f64 = 1e-6;

/// Fully resolved inputs, SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub params: SystemParams,
    /// K
    pub temperature: f64,
    /// W
    pub power: f64,
    /// s
    pub tau_m: f64,
}

impl RunConfig {
    pub fn environment(&self) -> Result<ThermalEnvironment, ConfigError> {
        ThermalEnvironment::new(self.temperature, self.params.cavity_frequency)
            .map_err(|e| ConfigError::Invalid(e.to_string()))
    }

    pub fn probe(&self) -> Result<ProbeSpec, ConfigError> {
        ProbeSpec::new(self.power, self.tau_m, self.params.cavity_frequency)
            .map_err(|e| ConfigError::Invalid(e.to_string()))
    }

    /// Sets one field from an already resolved SI value.
    pub fn with(mut self, key: &str, x: f64) -> Result<Self, ConfigError> {
        let p = &mut self.params;
        match key {
            "kappa_i" => p.kappa_i = x,
            "kappa_ex" => p.kappa_ex = x,
            "G" => p.coupling = x,
            "gamma" => p.gamma = x,
            "Delta_r" => p.cavity_detuning = x,
            "Delta_q" => p.spin_detuning = x,
            "A" => p.bias = x,
            "delta" => p.signal = x,
            "omega_r" => p.cavity_frequency = x,
            "T" => self.temperature = x,
            "P_in" => self.power = x,
            "tau_m" => self.tau_m = x,
            _ => return Err(ConfigError::UnknownKey(key.into())),
        }
        Ok(self)
    }

    /// Echo of every resolved value, SI units.
    pub fn echo(&self) -> Vec<(&'static str, f64)> {
        let p = &self.params;
        vec![
            ("kappa_i", p.kappa_i),
            ("kappa_ex", p.kappa_ex),
            ("G", p.coupling),
            ("gamma", p.gamma),
            ("Delta_r", p.cavity_detuning),
            ("Delta_q", p.spin_detuning),
            ("A", p.bias),
            ("delta", p.signal),
            ("omega_r", p.cavity_frequency),
            ("T", self.temperature),
            ("P_in", self.power),
            ("tau_m", self.tau_m),
        ]
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.echo().iter().map(|(k, v)| format!("{k}={v:e}")).collect();
        f.write_str(&parts.join(" "))
    }
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    ConfigEntries::parse(text)?.resolve()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_units_resolve_after_kappa_i() {
        let c = parse_config("G = 0.1 kappa_i\nkappa_i = 28 MHz").unwrap();
        assert!((c.params.coupling - 2.8e6).abs() < 1e-6);
    }

    #[test]
    fn unknown_key() {
        assert_eq!(parse_config("Tz = 3"), Err(ConfigError::UnknownKey("Tz".into())));
    }

    #[test]
    fn missing_kappa_i() {
        assert_eq!(parse_config("G = 0.1 kappa_i"), Err(ConfigError::MissingKappaI));
    }

    #[test]
    fn non_numeric() {
        assert!(matches!(parse_config("kappa_i = fast"), Err(ConfigError::NotNumeric { .. })));
    }

    #[test]
    fn defaults_are_the_baseline() {
        let c = parse_config("# comment only\nkappa_i = 1   # Hz\n").unwrap();
        assert_eq!(c.params, SystemParams::baseline(1.0));
        assert_eq!((c.temperature, c.power, c.tau_m), (70.0, 1e-9, 1e-6));
    }

    #[test]
    fn units() {
        let c = parse_config("kappa_i = 28 kHz\nomega_r = 2.8 GHz\nT = 4 K\nP_in = 2 nW\ntau_m = 1e-3 s").unwrap();
        assert_eq!(c.params.kappa_i, 28e3);
        assert_eq!(c.params.cavity_frequency, 2.8e9);
        assert_eq!(c.power, 2e-9);
        assert!(parse_config("kappa_i = 1 K").is_err());
        assert!(parse_config("kappa_i = 1 kappa_i").is_err());
        assert!(parse_config("kappa_i = 1\nT = 3 Hz").is_err());
    }

    #[test]
    fn overrides_replace() {
        let mut e = ConfigEntries::parse("kappa_i = 1\nG = 2").unwrap();
        e.set("G=0.5 kappa_i").unwrap();
        e.set("kappa_ex = 10 kappa_i").unwrap();
        let c = e.resolve().unwrap();
        assert_eq!((c.params.coupling, c.params.kappa_ex), (0.5, 10.0));
        assert!(e.set("nope=1").is_err());
    }

    #[test]
    fn duplicates_and_syntax() {
        assert_eq!(parse_config("kappa_i = 1\nkappa_i = 2"), Err(ConfigError::Duplicate("kappa_i".into())));
        assert_eq!(parse_config("kappa_i 1"), Err(ConfigError::Syntax { line: 1 }));
    }

    #[test]
    fn invalid_values_are_rejected() {
        assert!(matches!(parse_config("kappa_i = -1"), Err(ConfigError::Invalid(_))));
        assert!(matches!(parse_config("kappa_i = 1\nT = -3"), Err(ConfigError::Invalid(_))));
    }
}
