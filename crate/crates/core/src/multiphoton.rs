//! Coherent multiphoton probe read out at the V port, limited by thermal noise.

use crate::constants::{photon_energy, HBAR, K_B};
use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::single_photon::{conventions, fisher_curve_of, fisher_information, FisherCurve, FisherKind};
use crate::spectra::polarized_reflection;

/// Bose–Einstein occupation of a mode of cyclic frequency `frequency` (Hz) at
/// temperature `temperature` (K). Zero at T = 0.
pub fn thermal_occupation(temperature: f64, frequency: f64) -> f64 {
    if temperature <= 0.0 {
        return 0.0;
    }
    let x = photon_energy(frequency) / (K_B * temperature);
    1.0 / x.exp_m1()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalEnvironment {
    /// K
    pub temperature: f64,
    pub n_th: f64,
}

impl ThermalEnvironment {
    pub fn new(temperature: f64, frequency: f64) -> Result<Self> {
        if !(temperature >= 0.0) || !temperature.is_finite() {
            return Err(Error::InvalidParams(format!("temperature {temperature} K")));
        }
        if !(frequency > 0.0) || !frequency.is_finite() {
            return Err(Error::InvalidParams(format!("mode frequency {frequency} Hz")));
        }
        Ok(Self {
            temperature,
            n_th: thermal_occupation(temperature, frequency),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeSpec {
    /// W
    pub power: f64,
    /// s
    pub tau_m: f64,
    /// P_in·τ_m/(ħω_r)
    pub n_in: f64,
}

impl ProbeSpec {
    pub fn new(power: f64, tau_m: f64, frequency: f64) -> Result<Self> {
        if !(power >= 0.0) || !power.is_finite() {
            return Err(Error::InvalidParams(format!("probe power {power} W")));
        }
        if !(tau_m > 0.0) || !tau_m.is_finite() {
            return Err(Error::InvalidParams(format!("probe duration {tau_m} s")));
        }
        Ok(Self {
            power,
            tau_m,
            n_in: power * tau_m / photon_energy(frequency),
        })
    }
}

/// Thermal photon flux reaching the V port, per source, Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseComponents {
    /// External bath routed H→V: 2κ_ex n_th P_V.
    pub external_h: f64,
    /// Internal bath routed H→V: 2κ_ex n_th (κ_i/κ_ex)² P_V.
    pub internal_h: f64,
    /// External bath entering V: 2κ_ex n_th P_H.
    pub external_v: f64,
    /// Internal bath entering V: 2κ_ex n_th (κ_i/κ_ex)² (1 + P_H + 2Re r_HH).
    pub internal_v: f64,
}

impl NoiseComponents {
    pub fn total(&self) -> f64 {
        self.external_h + self.internal_h + self.external_v + self.internal_v
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseBudget {
    /// n̄_ξ, Hz.
    pub n_xi: f64,
    /// Thermal coefficient, n̄_ξ/(κ_ex n̄_th).
    pub c_th: f64,
    pub components: NoiseComponents,
}

/// Aggregated thermal noise at the V port. The P_H-weighted term is built
/// without dividing by P_H so the budget stays finite when P_H → 0.
pub fn noise_budget(p: &SystemParams, env: &ThermalEnvironment) -> Result<NoiseBudget> {
    if !(p.kappa_ex > 0.0) {
        return Err(Error::NoExternalCoupling);
    }
    let pr = polarized_reflection(p);
    let p_v = pr.r_vh.norm_sqr();
    let p_h = pr.r_hh.norm_sqr();
    let rho2 = (p.kappa_i / p.kappa_ex).powi(2);
    let leak = 1.0 + p_h + 2.0 * pr.r_hh.re;

    let unit = 2.0 * p.kappa_ex * env.n_th;
    let components = NoiseComponents {
        external_h: unit * p_v,
        internal_h: unit * rho2 * p_v,
        external_v: unit * p_h,
        internal_v: unit * rho2 * leak,
    };
    Ok(NoiseBudget {
        n_xi: components.total(),
        c_th: 2.0 * (p_v * (1.0 + rho2) + p_h + rho2 * leak),
        components,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementMoments {
    pub mean: f64,
    pub variance: f64,
    /// Valid for n̄_in ≫ n̄_ξ ≫ 1.
    pub variance_approx: f64,
}

/// Mean and variance of the V-port photon-number operator.
pub fn measurement_moments(
    p: &SystemParams,
    env: &ThermalEnvironment,
    probe: &ProbeSpec,
) -> Result<MeasurementMoments> {
    let budget = noise_budget(p, env)?;
    let n_xi = budget.n_xi;
    let signal = 2.0 * p.kappa_ex * polarized_reflection(p).r_vh.norm_sqr();
    let n_in = probe.n_in;
    Ok(MeasurementMoments {
        mean: signal * n_in + n_xi,
        // (2κ_ex P_V)² n̄_in (2n̄_ξ/(2κ_ex P_V) + 1), expanded so P_V = 0 is finite
        variance: 2.0 * signal * n_in * n_xi + signal * signal * n_in + n_xi * n_xi + n_xi,
        variance_approx: 2.0 * signal * n_in * (n_xi + 0.5 * signal),
    })
}

/// F_I,V = (μ_B g_e)² (∂P_V/∂δ)²/P_V in T⁻², with the same vanishing-P_V
/// limit as the single-photon Fisher information.
pub fn nominal_fisher_v(p: &SystemParams) -> f64 {
    fisher_information(p, FisherKind::VerticalPort)
}

pub fn nominal_fisher_v_curve(p: &SystemParams, grid: &[f64]) -> Result<FisherCurve> {
    fisher_curve_of(p, grid, FisherKind::VerticalPort)
}

/// Multiphoton limits on ΔB·√τ_total, T/√Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiphotonSensitivity {
    /// √((C_th n̄_th + P_V)·ħω_r/P_in)/√F_I,V, no high-temperature approximation.
    pub value: f64,
    /// √τ_m/√F_I,V · √(2n̄_ξ + 2κ_ex P_V)/√(2κ_ex n̄_in), evaluated literally.
    pub pre_limit: f64,
    /// n̄_th ħω_r replaced by k_B T.
    pub thermal_kt: f64,
    /// κ_i ≪ κ_ex simplification, C_th → 2(P_V + P_H), with k_B T.
    pub simplified: f64,
    pub fisher_v: f64,
    pub p_v: f64,
    pub p_h: f64,
    pub budget: NoiseBudget,
    pub n_th: f64,
    pub convention_notes: Vec<String>,
    pub parameter_echo: SystemParams,
}

impl MultiphotonSensitivity {
    /// Value divided by √κ_i.
    pub fn per_sqrt_kappa_i(&self) -> f64 {
        self.value / self.parameter_echo.kappa_i.sqrt()
    }
}

pub fn sensitivity_mp(
    p: &SystemParams,
    env: &ThermalEnvironment,
    probe: &ProbeSpec,
) -> Result<MultiphotonSensitivity> {
    let fisher_v = nominal_fisher_v(p);
    if !(fisher_v > 0.0) {
        return Err(Error::NoSignal);
    }
    if !(probe.power > 0.0) {
        return Err(Error::InvalidParams("probe power must be positive".into()));
    }
    let budget = noise_budget(p, env)?;
    let pr = polarized_reflection(p);
    let (p_v, p_h) = (pr.r_vh.norm_sqr(), pr.r_hh.norm_sqr());
    let energy = photon_energy(p.cavity_frequency);
    let kt = K_B * env.temperature;
    let root_f = fisher_v.sqrt();

    let value = ((budget.c_th * env.n_th + p_v) * energy / probe.power).sqrt() / root_f;
    let pre_limit = probe.tau_m.sqrt() / root_f
        * (2.0 * budget.n_xi + 2.0 * p.kappa_ex * p_v).sqrt()
        / (2.0 * p.kappa_ex * probe.n_in).sqrt();
    let thermal_kt = ((budget.c_th * kt + p_v * energy) / probe.power).sqrt() / root_f;
    let simplified = ((2.0 * (p_v + p_h) * kt + p_v * energy) / probe.power).sqrt() / root_f;

    let mut convention_notes = conventions();
    convention_notes.push(format!(
        "n_th = {:e}; n_th*hbar*omega_r/(k_B*T) = {:e}",
        env.n_th,
        if kt > 0.0 { env.n_th * energy / kt } else { 0.0 }
    ));
    Ok(MultiphotonSensitivity {
        value,
        pre_limit,
        thermal_kt,
        simplified,
        fisher_v,
        p_v,
        p_h,
        budget,
        n_th: env.n_th,
        convention_notes,
        parameter_echo: *p,
    })
}

/// √(ħω_o/(2k_B T)) for an optical angular frequency `omega_optical` (rad/s).
pub fn mw_vs_optical_factor(temperature: f64, omega_optical: f64) -> f64 {
    (HBAR * omega_optical / (2.0 * K_B * temperature)).sqrt()
}
