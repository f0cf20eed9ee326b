//! Single-photon probe: detection outcomes, Fisher information and the
//! Cramér–Rao sensitivity limit.

use crate::constants::{CONVENTIONS, MU_B_GE};
use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::peak::{argmax, find_peak, golden_section_max, linspace, validate_grid};
use crate::spectra::{amplitude_slopes, polarized_reflection, PolarizedReflection};

/// Below this probability a Fisher term is replaced by its limit.
pub const VANISHING_PROBABILITY: f64 = 1e-15;

/// Minimum number of samples for a Fisher curve.
pub const MIN_GRID_POINTS: usize = 16;

/// Samples used by [`feature_grid`] across a located feature.
pub const FEATURE_POINTS: usize = 4001;

/// Probabilities of detecting a V photon, an H photon, or nothing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeDistribution {
    pub p_v: f64,
    pub p_h: f64,
    pub p_empty: f64,
}

impl OutcomeDistribution {
    pub fn from_reflection(pr: &PolarizedReflection) -> Self {
        let p_v = pr.r_vh.norm_sqr();
        let p_h = pr.r_hh.norm_sqr();
        Self {
            p_v,
            p_h,
            p_empty: 1.0 - p_v - p_h,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.p_v, self.p_h, self.p_empty]
    }
}

pub fn outcome_probabilities(p: &SystemParams) -> OutcomeDistribution {
    OutcomeDistribution::from_reflection(&polarized_reflection(p))
}

/// (P_V, P_H) from the modulus/Faraday-angle form
/// `r̄² sin²φ_F + δr² cos²φ_F` and `r̄² cos²φ_F + δr² sin²φ_F`.
pub fn rotation_form(pr: &PolarizedReflection) -> (f64, f64) {
    let (s2, c2) = (pr.faraday_angle.sin().powi(2), pr.faraday_angle.cos().powi(2));
    let (m2, d2) = (pr.mean_modulus.powi(2), pr.modulus_asymmetry.powi(2));
    (m2 * s2 + d2 * c2, m2 * c2 + d2 * s2)
}

/// Probabilities together with their δ-derivatives and the amplitudes behind them.
#[derive(Debug, Clone, Copy)]
struct OutcomeJet {
    probs: [f64; 3],
    slopes: [f64; 3],
    /// |∂r_VH/∂δ|², |∂r_HH/∂δ|²
    amp_slope_sq: [f64; 2],
}

fn outcome_jet(p: &SystemParams) -> OutcomeJet {
    let pr = polarized_reflection(p);
    let d = amplitude_slopes(p);
    let probs = OutcomeDistribution::from_reflection(&pr).as_array();
    let dv = 2.0 * (pr.r_vh.conj() * d.r_vh).re;
    let dh = 2.0 * (pr.r_hh.conj() * d.r_hh).re;
    OutcomeJet {
        probs,
        slopes: [dv, dh, -(dv + dh)],
        amp_slope_sq: [d.r_vh.norm_sqr(), d.r_hh.norm_sqr()],
    }
}

/// ∂P_ξ/∂δ for ξ = (V, H, ∅), per Hz.
pub fn probability_derivatives(p: &SystemParams) -> [f64; 3] {
    outcome_jet(p).slopes
}

/// Which outcomes contribute to a Fisher information.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FisherKind {
    /// All three single-photon outcomes.
    AllOutcomes,
    /// Only the V-polarized port (nominal multiphoton Fisher information).
    VerticalPort,
}

/// Second derivative of P_∅ by central difference of the analytic slope.
fn empty_curvature(p: &SystemParams) -> f64 {
    let h = 1e-6 * p.kappa();
    let up = probability_derivatives(&p.with_signal(p.signal + h))[2];
    let down = probability_derivatives(&p.with_signal(p.signal - h))[2];
    (up - down) / (2.0 * h)
}

/// Per-outcome terms (∂P_ξ/∂δ)²/P_ξ in Hz⁻².
///
/// P_V and P_H are squared amplitudes; where they vanish the term tends to
/// 4|∂r/∂δ|². A vanishing P_∅ sits at a minimum, where the term tends to
/// 2·∂²P_∅/∂δ².
pub fn fisher_terms(p: &SystemParams) -> [f64; 3] {
    let jet = outcome_jet(p);
    let mut terms = [0.0; 3];
    for k in 0..2 {
        terms[k] = if jet.probs[k] < VANISHING_PROBABILITY {
            4.0 * jet.amp_slope_sq[k]
        } else {
            jet.slopes[k].powi(2) / jet.probs[k]
        };
    }
    terms[2] = if jet.probs[2] < VANISHING_PROBABILITY {
        (2.0 * empty_curvature(p)).max(0.0)
    } else {
        jet.slopes[2].powi(2) / jet.probs[2]
    };
    terms
}

/// Fisher information of the chosen outcomes with respect to the field, T⁻².
pub fn fisher_information(p: &SystemParams, kind: FisherKind) -> f64 {
    let terms = fisher_terms(p);
    let sum = match kind {
        FisherKind::AllOutcomes => terms.iter().sum(),
        FisherKind::VerticalPort => terms[0],
    };
    MU_B_GE * MU_B_GE * sum
}

/// Fisher information over all three outcomes, T⁻².
pub fn fisher_information_sp(p: &SystemParams) -> f64 {
    fisher_information(p, FisherKind::AllOutcomes)
}

/// Conversion from T⁻² to units of (μ_B g_e/κ_i)².
pub fn fisher_unit(kappa_i: f64) -> f64 {
    (MU_B_GE / kappa_i).powi(2)
}

/// Fisher information sampled over the signal shift δ.
#[derive(Debug, Clone, PartialEq)]
pub struct FisherCurve {
    pub kind: FisherKind,
    /// δ values, Hz.
    pub grid: Vec<f64>,
    /// Fisher information, T⁻².
    pub values: Vec<f64>,
    pub peak_value: f64,
    pub peak_location: f64,
    pub fwhm: f64,
    pub kappa_i: f64,
}

impl FisherCurve {
    pub fn peak_scaled(&self) -> f64 {
        self.peak_value / fisher_unit(self.kappa_i)
    }
}

pub fn fisher_curve(p: &SystemParams, grid: &[f64]) -> Result<FisherCurve> {
    fisher_curve_of(p, grid, FisherKind::AllOutcomes)
}

pub fn fisher_curve_of(p: &SystemParams, grid: &[f64], kind: FisherKind) -> Result<FisherCurve> {
    validate_grid(grid, MIN_GRID_POINTS)?;
    let values: Vec<f64> = grid
        .iter()
        .map(|&d| fisher_information(&p.with_signal(d), kind))
        .collect();
    let peak = find_peak(grid, &values)?;
    Ok(FisherCurve {
        kind,
        grid: grid.to_vec(),
        peak_value: peak.value,
        peak_location: peak.location,
        fwhm: peak.fwhm(),
        values,
        kappa_i: p.kappa_i,
    })
}

/// Locates the dominant Fisher feature on a logarithmic scan around zero
/// total shift and returns `points` evenly spaced samples spanning it.
pub fn feature_grid(p: &SystemParams, kind: FisherKind, points: usize) -> Result<Vec<f64>> {
    let center = -p.bias;
    let span = 20.0
        * [
            p.kappa(),
            p.coupling,
            p.spin_detuning.abs(),
            p.cavity_detuning.abs(),
            p.gamma,
        ]
        .into_iter()
        .fold(0.0, f64::max);
    let lo = -7.0;
    let hi = (span / p.kappa_i).log10().max(lo + 1.0);
    let decades = ((hi - lo) * 60.0).ceil() as usize;
    let offsets: Vec<f64> = linspace(lo, hi, decades + 1)
        .into_iter()
        .map(|e| p.kappa_i * 10f64.powf(e))
        .collect();
    let mut coarse: Vec<f64> = offsets.iter().rev().map(|o| center - o).collect();
    coarse.push(center);
    coarse.extend(offsets.iter().map(|o| center + o));

    let values: Vec<f64> = coarse
        .iter()
        .map(|&d| fisher_information(&p.with_signal(d), kind))
        .collect();
    let i = argmax(&coarse, &values).ok_or(Error::NoFeature)?;
    let peak = values[i];
    if peak <= 0.0 {
        return Err(Error::NoFeature);
    }
    let half = 0.5 * peak;
    let left = (0..i).rev().find(|&j| values[j] <= half).ok_or(Error::UnresolvedWidth)?;
    let right = (i + 1..coarse.len())
        .find(|&j| values[j] <= half)
        .ok_or(Error::UnresolvedWidth)?;
    Ok(linspace(coarse[left], coarse[right], points.max(MIN_GRID_POINTS)))
}

/// Cramér–Rao limit on ΔB·√τ_total.
#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityReport {
    /// T/√Hz.
    pub value: f64,
    /// Fisher information used, T⁻².
    pub fisher_peak: f64,
    /// Signal shift at which the Fisher information was taken, Hz.
    pub peak_location: f64,
    /// Width of the Fisher feature, Hz.
    pub fwhm: f64,
    /// Duration of one measurement, s.
    pub tau_m: f64,
    pub convention_notes: Vec<String>,
    pub parameter_echo: SystemParams,
}

impl SensitivityReport {
    /// Value in units of √κ_i/(μ_B g_e).
    pub fn scaled(&self) -> f64 {
        self.value * MU_B_GE / self.parameter_echo.kappa_i.sqrt()
    }

    /// Value divided by √κ_i.
    pub fn per_sqrt_kappa_i(&self) -> f64 {
        self.value / self.parameter_echo.kappa_i.sqrt()
    }
}

pub(crate) fn conventions() -> Vec<String> {
    CONVENTIONS.iter().map(|s| s.to_string()).collect()
}

/// ΔB·√τ_total ≥ √τ_m/√F_I at the Fisher peak, with τ_m = 1/FWHM.
pub fn sensitivity_sp(p: &SystemParams, delta_grid: &[f64]) -> Result<SensitivityReport> {
    let curve = fisher_curve(p, delta_grid)?;
    Ok(report_from_curve(p, &curve))
}

/// [`sensitivity_sp`] on a grid from [`feature_grid`].
pub fn sensitivity_sp_auto(p: &SystemParams) -> Result<SensitivityReport> {
    let grid = feature_grid(p, FisherKind::AllOutcomes, FEATURE_POINTS)?;
    sensitivity_sp(p, &grid)
}

fn report_from_curve(p: &SystemParams, curve: &FisherCurve) -> SensitivityReport {
    let tau_m = 1.0 / curve.fwhm;
    SensitivityReport {
        value: tau_m.sqrt() / curve.peak_value.sqrt(),
        fisher_peak: curve.peak_value,
        peak_location: curve.peak_location,
        fwhm: curve.fwhm,
        tau_m,
        convention_notes: conventions(),
        parameter_echo: *p,
    }
}

/// Bias shift A in `range` (Hz) that maximizes the Fisher information at
/// δ = 0, and that maximum in T⁻².
pub fn optimal_bias(p: &SystemParams, range: (f64, f64)) -> Result<(f64, f64)> {
    let (lo, hi) = range;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidGrid(format!("bad search range [{lo}, {hi}]")));
    }
    let at = |a: f64| fisher_information_sp(&p.with_bias(a).with_signal(0.0));
    let grid = linspace(lo, hi, 401);
    let values: Vec<f64> = grid.iter().map(|&a| at(a)).collect();
    let i = argmax(&grid, &values).ok_or(Error::NoInteriorMaximum)?;
    let floor = values.iter().copied().fold(f64::INFINITY, f64::min);
    if i == 0 || i == grid.len() - 1 || values[i] <= 0.0 || values[i] - floor <= 1e-12 * values[i] {
        return Err(Error::NoInteriorMaximum);
    }
    let tol = 1e-10 * (hi - lo);
    let (a, f) = golden_section_max(at, grid[i - 1], grid[i + 1], tol);
    // the bracket is only locally unimodal; never return worse than the scan
    Ok(if f >= values[i] { (a, f) } else { (grid[i], values[i]) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3() -> SystemParams {
        SystemParams::baseline(1.0)
    }

    #[test]
    fn no_vertical_photon_without_shift() {
        for g in [0.0, 0.3, 1.0, 4.0] {
            let d = outcome_probabilities(&fig3().with_coupling(g));
            assert_eq!(d.p_v, 0.0);
        }
    }

    #[test]
    fn quarter_point() {
        let d = outcome_probabilities(&fig3().with_signal(0.494));
        assert!((d.p_v - 0.25).abs() < 0.005);
    }

    #[test]
    fn resonance_reflects_h() {
        let d = outcome_probabilities(&fig3());
        let r = -1.0 + 2.0 / 2002.0;
        assert!((d.p_h - r * r).abs() < 1e-14);
        assert!((d.p_h - 0.998).abs() < 5e-4);
        assert!((d.p_empty - 0.002).abs() < 5e-4);
        assert_eq!(d.p_v + d.p_h + d.p_empty, 1.0);
    }

    #[test]
    fn rotation_form_matches_amplitudes() {
        for s in [0.0, 0.01, 0.2, 0.494, 1.7, -3.0] {
            let pr = polarized_reflection(&fig3().with_signal(s).with_detunings(0.1, -0.2));
            let (pv, ph) = rotation_form(&pr);
            let d = OutcomeDistribution::from_reflection(&pr);
            assert!((pv - d.p_v).abs() < 1e-12);
            assert!((ph - d.p_h).abs() < 1e-12);
        }
    }

    #[test]
    fn derivatives_vanish_without_shift() {
        for dp in probability_derivatives(&fig3()) {
            assert_eq!(dp, 0.0);
        }
    }

    #[test]
    fn no_coupling_no_information() {
        let p = fig3().with_coupling(0.0).with_signal(0.3);
        assert_eq!(fisher_information_sp(&p), 0.0);
        let grid = linspace(-1.0, 1.0, 101);
        assert_eq!(fisher_curve(&p, &grid), Err(Error::NoFeature));
        assert_eq!(optimal_bias(&p, (0.0, 0.5)), Err(Error::NoInteriorMaximum));
    }

    #[test]
    fn vanishing_vertical_probability_uses_limit() {
        let p = SystemParams::optimized(1.0);
        let at_zero = fisher_terms(&p)[0];
        let near = fisher_terms(&p.with_signal(1e-8))[0];
        assert!(at_zero > 0.0);
        assert!((at_zero - near).abs() / at_zero < 1e-6);
    }

    #[test]
    fn vertical_port_is_bounded_by_all_outcomes() {
        for s in linspace(-0.02, 0.02, 81) {
            let p = SystemParams::optimized(1.0).with_signal(s);
            let fv = fisher_information(&p, FisherKind::VerticalPort);
            let fa = fisher_information(&p, FisherKind::AllOutcomes);
            assert!(fv <= fa * (1.0 + 1e-14));
        }
    }

    #[test]
    fn fisher_peak_and_width() {
        let grid = linspace(-1.0, 1.0, 4001);
        let c = fisher_curve(&fig3(), &grid).unwrap();
        assert!((c.peak_scaled() - 29.0).abs() < 2.9);
        assert!((c.peak_location.abs() - 0.07).abs() < 0.02);
        assert!((c.fwhm - 0.6).abs() < 0.12);
    }

    #[test]
    fn curve_rejects_short_grid() {
        let grid = linspace(-1.0, 1.0, 15);
        assert!(matches!(fisher_curve(&fig3(), &grid), Err(Error::InvalidGrid(_))));
    }

    #[test]
    fn feature_grid_brackets_the_peak() {
        let g = feature_grid(&fig3(), FisherKind::AllOutcomes, 2001).unwrap();
        assert_eq!(g.len(), 2001);
        assert!(g[0] < -0.3 && g[2000] > 0.3);
        let c = fisher_curve(&fig3(), &g).unwrap();
        assert!((c.fwhm - 0.614).abs() < 0.01);
    }

    #[test]
    fn optimal_bias_on_baseline() {
        let (a, f) = optimal_bias(&fig3(), (0.0, 0.5)).unwrap();
        assert!((a - 0.07).abs() < 0.02);
        let (b, g) = optimal_bias(&fig3(), (-0.5, 0.0)).unwrap();
        assert!((a + b).abs() < 1e-6);
        assert!((f - g).abs() / f < 1e-9);
    }

    #[test]
    fn edge_maximum_is_rejected() {
        assert_eq!(optimal_bias(&fig3(), (0.0, 0.03)), Err(Error::NoInteriorMaximum));
    }

    #[test]
    fn baseline_sensitivity_units() {
        let r = sensitivity_sp_auto(&fig3()).unwrap();
        assert!((r.tau_m * r.fwhm - 1.0).abs() < 1e-15);
        let expected = 1.0 / (r.fisher_peak * r.fwhm).sqrt();
        assert!((r.value - expected).abs() / expected < 1e-12);
        assert!(r.convention_notes.iter().any(|n| n.contains("1/FWHM")));
    }

    #[test]
    fn sensitivity_improves_with_fisher() {
        let grid = linspace(-1.0, 1.0, 2001);
        let c = fisher_curve(&fig3(), &grid).unwrap();
        let mut boosted = c.clone();
        boosted.peak_value *= 2.0;
        let a = report_from_curve(&fig3(), &c).value;
        let b = report_from_curve(&fig3(), &boosted).value;
        assert!(b < a);
    }
}
