//! System parameters of the spin-loaded bimodal cavity.

use std::fmt;

use crate::error::{Error, Result};

/// Cavity NV transition frequency used when nothing else is specified, Hz.
pub const DEFAULT_CAVITY_FREQUENCY: f64 = 2.8e9;

/// Rates and detunings of the cavity–spin system, all cyclic frequencies in Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Intrinsic cavity loss rate.
    pub kappa_i: f64,
    /// External (port) coupling rate.
    pub kappa_ex: f64,
    /// Collective spin–cavity coupling, √N·g.
    pub coupling: f64,
    /// Spin decoherence rate per transition.
    pub gamma: f64,
    /// Cavity detuning ω_r − ω_in.
    pub cavity_detuning: f64,
    /// Spin detuning D − ω_in.
    pub spin_detuning: f64,
    /// Zeeman shift from the bias field.
    pub bias: f64,
    /// Zeeman shift from the field being sensed.
    pub signal: f64,
    /// Cavity resonance; enters only through the photon energy.
    pub cavity_frequency: f64,
}

impl SystemParams {
    /// Resonant, critically coupled cavity with `G = κ_i` and `γ = 10⁻³κ_i`.
    pub fn baseline(kappa_i: f64) -> Self {
        Self {
            kappa_i,
            kappa_ex: kappa_i,
            coupling: kappa_i,
            gamma: 1e-3 * kappa_i,
            cavity_detuning: 0.0,
            spin_detuning: 0.0,
            bias: 0.0,
            signal: 0.0,
            cavity_frequency: DEFAULT_CAVITY_FREQUENCY,
        }
    }

    /// Overcoupled, weakly coupled operating point: `κ_ex = 10κ_i`, `G = 0.1κ_i`.
    pub fn optimized(kappa_i: f64) -> Self {
        Self {
            kappa_ex: 10.0 * kappa_i,
            coupling: 0.1 * kappa_i,
            ..Self::baseline(kappa_i)
        }
    }

    pub fn with_kappa_ex(self, kappa_ex: f64) -> Self {
        Self { kappa_ex, ..self }
    }

    pub fn with_coupling(self, coupling: f64) -> Self {
        Self { coupling, ..self }
    }

    pub fn with_gamma(self, gamma: f64) -> Self {
        Self { gamma, ..self }
    }

    pub fn with_detunings(self, cavity_detuning: f64, spin_detuning: f64) -> Self {
        Self {
            cavity_detuning,
            spin_detuning,
            ..self
        }
    }

    pub fn with_bias(self, bias: f64) -> Self {
        Self { bias, ..self }
    }

    pub fn with_signal(self, signal: f64) -> Self {
        Self { signal, ..self }
    }

    /// Total Zeeman shift A + δ seen by the spins.
    pub fn total_shift(&self) -> f64 {
        self.bias + self.signal
    }

    /// Total cavity decay κ_ex + κ_i.
    pub fn kappa(&self) -> f64 {
        self.kappa_ex + self.kappa_i
    }

    /// Same physical system with every rate divided by κ_i, so κ_i = 1.
    pub fn scaled(&self) -> Self {
        let k = self.kappa_i;
        Self {
            kappa_i: 1.0,
            kappa_ex: self.kappa_ex / k,
            coupling: self.coupling / k,
            gamma: self.gamma / k,
            cavity_detuning: self.cavity_detuning / k,
            spin_detuning: self.spin_detuning / k,
            bias: self.bias / k,
            signal: self.signal / k,
            cavity_frequency: self.cavity_frequency,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.kappa_i,
            self.kappa_ex,
            self.coupling,
            self.gamma,
            self.cavity_detuning,
            self.spin_detuning,
            self.bias,
            self.signal,
            self.cavity_frequency,
        ]
        .iter()
        .all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidParams("non-finite value".into()));
        }
        if self.kappa_i <= 0.0 {
            return Err(Error::InvalidParams("kappa_i must be > 0".into()));
        }
        if self.kappa_ex < 0.0 {
            return Err(Error::InvalidParams("kappa_ex must be >= 0".into()));
        }
        if self.gamma < 0.0 {
            return Err(Error::InvalidParams("gamma must be >= 0".into()));
        }
        if self.coupling < 0.0 {
            return Err(Error::InvalidParams("G must be >= 0".into()));
        }
        if self.cavity_frequency <= 0.0 {
            return Err(Error::InvalidParams("omega_r must be > 0".into()));
        }
        Ok(())
    }
}

/// Circular-polarization branch: σ₊ (upper sign) or σ₋ (lower sign).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Plus => f.write_str("sigma+"),
            Branch::Minus => f.write_str("sigma-"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn baseline_is_valid() {
        assert!(SystemParams::baseline(1.0).validate().is_ok());
        assert!(SystemParams::optimized(28e6).validate().is_ok());
    }

    #[test]
    fn rejects_nonpositive_kappa_i() {
        let p = SystemParams {
            kappa_i: 0.0,
            ..SystemParams::baseline(1.0)
        };
        assert!(matches!(p.validate(), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn rejects_negative_rates() {
        let base = SystemParams::baseline(1.0);
        assert!(base.with_gamma(-1e-3).validate().is_err());
        assert!(base.with_kappa_ex(-1.0).validate().is_err());
        assert!(base.with_coupling(-1.0).validate().is_err());
        assert!(base.with_signal(f64::NAN).validate().is_err());
    }

    #[test]
    fn scaling_sets_kappa_i_to_one() {
        let p = SystemParams::optimized(28e6).with_signal(0.5 * 28e6);
        let s = p.scaled();
        assert_eq!(s.kappa_i, 1.0);
        assert!((s.kappa_ex - 10.0).abs() < 1e-12);
        assert!((s.coupling - 0.1).abs() < 1e-12);
        assert!((s.signal - 0.5).abs() < 1e-12);
    }
}
