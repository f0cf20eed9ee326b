//! One- and two-axis parameter sweeps evaluated in parallel.

use std::fmt;
use std::str::FromStr;

use faraday_core::{
    fisher_information, nominal_fisher_v, outcome_probabilities, polarized_reflection, sensitivity_mp,
    sensitivity_sp_auto, FisherKind,
};
use rayon::prelude::*;

use crate::config::{parse_value, ConfigError, RunConfig, KEYS};
use crate::table::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    PV,
    PH,
    PEmpty,
    FisherAll,
    FisherV,
    FaradayAngle,
    SensSp,
    SensMp,
}

impl Quantity {
    pub const ALL: [Quantity; 8] = [
        Self::PV,
        Self::PH,
        Self::PEmpty,
        Self::FisherAll,
        Self::FisherV,
        Self::FaradayAngle,
        Self::SensSp,
        Self::SensMp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::PV => "P_V",
            Self::PH => "P_H",
            Self::PEmpty => "P_empty",
            Self::FisherAll => "F_I",
            Self::FisherV => "F_IV",
            Self::FaradayAngle => "phi_F",
            Self::SensSp => "sens_sp",
            Self::SensMp => "sens_mp",
        }
    }

    /// Value at one configuration. Fisher information in T⁻², sensitivities
    /// in T/√Hz, φ_F in rad.
    pub fn evaluate(self, c: &RunConfig) -> f64 {
        let p = &c.params;
        match self {
            Self::PV => outcome_probabilities(p).p_v,
            Self::PH => outcome_probabilities(p).p_h,
            Self::PEmpty => outcome_probabilities(p).p_empty,
            Self::FisherAll => fisher_information(p, FisherKind::AllOutcomes),
            Self::FisherV => nominal_fisher_v(p),
            Self::FaradayAngle => polarized_reflection(p).faraday_angle,
            Self::SensSp => sensitivity_sp_auto(p).map_or(f64::NAN, |r| r.value),
            Self::SensMp => match (c.environment(), c.probe()) {
                (Ok(env), Ok(probe)) => sensitivity_mp(p, &env, &probe).map_or(f64::NAN, |r| r.value),
                _ => f64::NAN,
            },
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| ConfigError::Invalid(format!("unknown quantity `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// One sweep axis. `start`/`stop` may carry a unit, resolved against κ_i.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub spacing: Spacing,
    /// Endpoints are multiples of κ_i.
    pub kappa_relative: bool,
}

impl Axis {
    /// Parses `name=START:STOP:N[:log] [unit]`.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let bad = || ConfigError::Invalid(format!("axis `{text}` is not name=START:STOP:N[:log] [unit]"));
        let (name, rest) = text.split_once('=').ok_or_else(bad)?;
        let name = name.trim();
        if !KEYS.contains(&name) {
            return Err(ConfigError::UnknownKey(name.into()));
        }
        let mut words = rest.split_whitespace();
        let range = words.next().ok_or_else(bad)?;
        let unit = words.next();
        if words.next().is_some() {
            return Err(bad());
        }
        let fields: Vec<&str> = range.split(':').collect();
        let spacing = match fields.get(3) {
            None => Spacing::Linear,
            Some(&"log") => Spacing::Log,
            Some(_) => return Err(bad()),
        };
        if fields.len() < 3 || fields.len() > 4 {
            return Err(bad());
        }
        let points: usize = fields[2].parse().map_err(|_| bad())?;
        let endpoint = |s: &str| {
            let text = match unit {
                Some(u) => format!("{s} {u}"),
                None => s.to_string(),
            };
            parse_value(name, &text)
        };
        let (a, b) = (endpoint(fields[0])?, endpoint(fields[1])?);
        use crate::config::Quantity::*;
        let (start, stop, kappa_relative) = match (a, b) {
            (Absolute(x), Absolute(y)) => (x, y, false),
            (KappaRelative(x), KappaRelative(y)) => (x, y, true),
            _ => return Err(bad()),
        };
        let axis = Self { name: name.into(), start, stop, points, spacing, kappa_relative };
        axis.check()?;
        Ok(axis)
    }

    fn check(&self) -> Result<(), ConfigError> {
        if self.points < 2 {
            return Err(ConfigError::Invalid(format!("axis `{}` needs at least 2 points", self.name)));
        }
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(ConfigError::Invalid(format!("axis `{}` range is not finite", self.name)));
        }
        if self.spacing == Spacing::Log && (self.start <= 0.0 || self.stop <= 0.0) {
            return Err(ConfigError::Invalid(format!("log axis `{}` needs positive endpoints", self.name)));
        }
        Ok(())
    }

    /// Axis values in the units written (Hz, K, W, s, or κ_i).
    pub fn values(&self) -> Vec<f64> {
        match self.spacing {
            Spacing::Linear => faraday_core::linspace(self.start, self.stop, self.points),
            Spacing::Log => faraday_core::linspace(self.start.log10(), self.stop.log10(), self.points)
                .into_iter()
                .enumerate()
                .map(|(i, e)| {
                    if i == 0 {
                        self.start
                    } else if i + 1 == self.points {
                        self.stop
                    } else {
                        10f64.powf(e)
                    }
                })
                .collect(),
        }
    }

    pub fn column_name(&self) -> String {
        if self.kappa_relative {
            format!("{}/kappa_i", self.name)
        } else {
            self.name.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axes: Vec<Axis>,
    pub base: RunConfig,
    pub quantity: Quantity,
    /// Emit non-finite cells as `nan` with a flag instead of failing.
    pub flag_nonfinite: bool,
}

impl SweepSpec {
    pub fn new(axes: Vec<Axis>, base: RunConfig, quantity: Quantity) -> Result<Self, ConfigError> {
        if axes.is_empty() || axes.len() > 2 {
            return Err(ConfigError::Invalid("a sweep takes one or two axes".into()));
        }
        if axes.len() == 2 && axes[0].name == axes[1].name {
            return Err(ConfigError::Invalid("sweep axes must differ".into()));
        }
        if axes.iter().any(|a| a.kappa_relative && a.name == "kappa_i") {
            return Err(ConfigError::Invalid("kappa_i cannot be swept in units of itself".into()));
        }
        Ok(Self { axes, base, quantity, flag_nonfinite: true })
    }

    /// Configuration of every cell, first axis slowest.
    pub fn cells(&self) -> Result<Vec<(Vec<f64>, RunConfig)>, ConfigError> {
        let grids: Vec<Vec<f64>> = self.axes.iter().map(Axis::values).collect();
        let mut coords: Vec<Vec<f64>> = vec![vec![]];
        for g in &grids {
            coords = coords
                .into_iter()
                .flat_map(|c| {
                    g.iter().map(move |&x| {
                        let mut c = c.clone();
                        c.push(x);
                        c
                    })
                })
                .collect();
        }
        coords
            .into_iter()
            .map(|c| {
                let mut cfg = self.base;
                for (axis, &x) in self.axes.iter().zip(&c) {
                    let si = if axis.kappa_relative { x * self.base.params.kappa_i } else { x };
                    cfg = cfg.with(&axis.name, si)?;
                }
                Ok((c, cfg))
            })
            .collect()
    }
}

/// Runs `spec` on `jobs` worker threads; rows come out in axis order.
pub fn run_sweep(spec: &SweepSpec, jobs: usize) -> Result<Table, ConfigError> {
    let cells = spec.cells()?;
    let q = spec.quantity;
    let values = with_pool(jobs, || cells.par_iter().map(|(_, c)| q.evaluate(c)).collect::<Vec<f64>>());
    let mut header: Vec<String> = spec.axes.iter().map(Axis::column_name).collect();
    header.push(q.name().into());
    header.push("flag".into());
    let mut table = Table::new(header);
    for ((coords, _), v) in cells.iter().zip(values) {
        let bad = !v.is_finite();
        if bad && !spec.flag_nonfinite {
            return Err(ConfigError::Invalid(format!("non-finite {q} at {coords:?}")));
        }
        let mut row: Vec<Cell> = coords.iter().map(|&x| Cell::Num(x)).collect();
        row.push(Cell::Num(if bad { f64::NAN } else { v }));
        row.push(Cell::Flag(bad));
        table.push(row);
    }
    Ok(table)
}

/// Runs `f` inside a rayon pool of `jobs` threads (0 = available parallelism).
pub fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(f)
}
