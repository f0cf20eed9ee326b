//! Provenance block written at the head of every output table.

use std::io::{self, Write};
use std::time::{SystemTime, UNIX_EPOCH};

use faraday_core::constants::{HBAR, K_B, MU_B_GE, PLANCK};
use faraday_core::CONVENTIONS;

use crate::config::RunConfig;

/// Lines starting with this prefix differ between otherwise identical runs.
pub const TIMESTAMP_PREFIX: &str = "# timestamp:";

#[derive(Debug, Clone, PartialEq)]
pub struct ClaimRow {
    pub id: String,
    pub description: String,
    pub computed: String,
    pub published: String,
    pub tolerance: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub command: String,
    pub config: Vec<(String, String)>,
    pub notes: Vec<String>,
    pub claims: Vec<ClaimRow>,
    pub timestamp: u64,
}

impl RunManifest {
    pub fn new(command: impl Into<String>) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            command: command.into(),
            config: Vec::new(),
            notes: Vec::new(),
            claims: Vec::new(),
            timestamp,
        }
    }

    pub fn with_config(mut self, config: &RunConfig) -> Self {
        self.config = config
            .echo()
            .into_iter()
            .map(|(k, v)| (k.to_string(), format!("{v:e}")))
            .collect();
        self
    }

    pub fn note(mut self, line: impl Into<String>) -> Self {
        self.notes.push(line.into());
        self
    }

    pub fn write_header<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "# faraday {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(out, "{TIMESTAMP_PREFIX} {}", self.timestamp)?;
        writeln!(out, "# command: {}", self.command)?;
        for (k, v) in &self.config {
            writeln!(out, "# config: {k} = {v}")?;
        }
        writeln!(out, "# constant: mu_B*g_e = {MU_B_GE:e} Hz/T")?;
        writeln!(out, "# constant: h = {PLANCK:e} J s")?;
        writeln!(out, "# constant: hbar = {HBAR:e} J s")?;
        writeln!(out, "# constant: k_B = {K_B:e} J/K")?;
        for c in CONVENTIONS {
            writeln!(out, "# convention: {c}")?;
        }
        for n in &self.notes {
            writeln!(out, "# note: {n}")?;
        }
        for c in &self.claims {
            writeln!(
                out,
                "# claim {}: {} | computed {} | published {} | tolerance {}",
                c.id,
                if c.pass { "PASS" } else { "FAIL" },
                c.computed,
                c.published,
                c.tolerance
            )?;
        }
        Ok(())
    }
}

/// Drops timestamp lines so two outputs can be compared byte for byte.
pub fn strip_timestamp(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with(TIMESTAMP_PREFIX))
        .map(|l| format!("{l}\n"))
        .collect()
}
