//! Physical constants. Rates throughout the crate are cyclic frequencies (Hz).

/// Bohr magneton expressed as a frequency per field, 14 MHz/mT.
pub const BOHR_MAGNETON_HZ_PER_T: f64 = 1.4e10;

/// Electron spin g-factor.
pub const G_FACTOR: f64 = 2.0;

/// Frequency shift per tesla of the m_s = ±1 levels, μ_B·g_e = 28 MHz/mT.
pub const MU_B_GE: f64 = BOHR_MAGNETON_HZ_PER_T * G_FACTOR;

/// Planck constant, J·s.
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = PLANCK / (2.0 * std::f64::consts::PI);

/// Boltzmann constant, J/K.
pub const K_B: f64 = 1.380_649e-23;

/// Photon energy of a mode with cyclic frequency `f` (Hz): ħ·2π·f.
pub fn photon_energy(f: f64) -> f64 {
    HBAR * 2.0 * std::f64::consts::PI * f
}

/// Conventions shared by every report the crate produces.
pub const CONVENTIONS: &[&str] = &[
    "rates and detunings are cyclic frequencies in Hz",
    "measurement time tau_m = 1/FWHM of the Fisher curve (FWHM in Hz, no 2*pi)",
    "photon energy E = hbar * 2*pi * f for a mode of cyclic frequency f",
    "detector quantum efficiency eta = 1",
    "mu_B * g_e = 2.8e10 Hz/T (28 MHz/mT)",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_b_ge_is_28_mhz_per_mt() {
        assert_eq!(MU_B_GE, 2.8e10);
        assert!((MU_B_GE * 1e-3 - 28e6).abs() < 1e-6);
    }

    #[test]
    fn photon_energy_is_h_times_f() {
        let f = 2.8e9;
        assert!((photon_energy(f) - PLANCK * f).abs() / (PLANCK * f) < 1e-15);
    }
}
