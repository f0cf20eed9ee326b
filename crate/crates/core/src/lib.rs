//! Faraday-rotation magnetometry with a spin ensemble in a bimodal microwave
//! cavity: reflection spectra, detection statistics, Fisher information and
//! sensitivity limits for single-photon and coherent multiphoton probes.
//!
//! All rates, detunings and level shifts are cyclic frequencies in Hz.

pub mod constants;
pub mod error;
pub mod fd_oracle;
pub mod multiphoton;
pub mod oracle;
pub mod params;
pub mod peak;
pub mod sampling;
pub mod single_photon;
pub mod spectra;

pub use constants::{CONVENTIONS, MU_B_GE};
pub use error::{Error, Result};
pub use multiphoton::{
    measurement_moments, mw_vs_optical_factor, noise_budget, nominal_fisher_v, nominal_fisher_v_curve,
    sensitivity_mp, thermal_occupation, MeasurementMoments, MultiphotonSensitivity, NoiseBudget,
    NoiseComponents, ProbeSpec, ThermalEnvironment,
};
pub use params::{Branch, SystemParams};
pub use peak::{find_peak, linspace, Peak};
pub use single_photon::{
    feature_grid, fisher_curve, fisher_curve_of, fisher_information, fisher_information_sp, fisher_unit,
    optimal_bias, outcome_probabilities, probability_derivatives, sensitivity_sp, sensitivity_sp_auto,
    FisherCurve, FisherKind, OutcomeDistribution, SensitivityReport,
};
pub use spectra::{
    basis_convert, polarized_reflection, reflection_coefficient, scattering_matrices, BasisChange,
    PolarizedReflection, Reflection, ScatteringMatrices,
};
