//! Command-line front end: configuration files, sweeps, figure data and the
//! acceptance suite.

pub mod claims;
pub mod config;
pub mod figures;
pub mod manifest;
pub mod sweep;
pub mod table;
