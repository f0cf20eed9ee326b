//! Frequency-domain response of the spin-loaded bimodal cavity.
//!
//! Each circular branch σ± sees the reflection
//!
//! ```text
//! r± = −1 + 2κ_ex / (iΔ_r + κ_ex + κ_i + G² / (i[Δ_q ± (A+δ)] + γ/2))
//! ```
//!
//! evaluated here in the rearranged form `r± = −1 + 2κ_ex·E±/(M·E± + G²)` with
//! `E± = i[Δ_q ± (A+δ)] + γ/2` and `M = iΔ_r + κ_ex + κ_i`. The rearranged
//! denominator never vanishes for κ > 0, so the γ = 0 spin resonance evaluates
//! to its limit r = −1 without special casing.

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{Branch, SystemParams};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Spin-mode and cavity denominators of one branch.
#[derive(Debug, Clone, Copy)]
struct BranchTerms {
    spin: Complex64,
    denom: Complex64,
}

fn branch_terms(p: &SystemParams, branch: Branch) -> BranchTerms {
    let spin = Complex64::new(
        0.5 * p.gamma,
        p.spin_detuning + branch.sign() * p.total_shift(),
    );
    let cavity = Complex64::new(p.kappa(), p.cavity_detuning);
    let g2 = p.coupling * p.coupling;
    BranchTerms {
        spin,
        denom: cavity * spin + g2,
    }
}

/// Reflection amplitude of one branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflection {
    pub value: Complex64,
    /// Set when γ = 0 and the branch sits exactly on spin resonance; `value`
    /// is then the analytic limit −1.
    pub singular: bool,
}

pub fn reflection_coefficient(p: &SystemParams, branch: Branch) -> Reflection {
    let t = branch_terms(p, branch);
    let singular = p.coupling > 0.0 && t.spin == Complex64::new(0.0, 0.0);
    Reflection {
        value: 2.0 * p.kappa_ex * t.spin / t.denom - 1.0,
        singular,
    }
}

/// ∂r±/∂δ = ±2iκ_ex G² / (M·E± + G²)².
pub fn reflection_slope(p: &SystemParams, branch: Branch) -> Complex64 {
    let t = branch_terms(p, branch);
    let g2 = p.coupling * p.coupling;
    I * (branch.sign() * 2.0 * p.kappa_ex * g2) / (t.denom * t.denom)
}

/// Both circular branches and the linear-basis quantities derived from them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizedReflection {
    pub r_plus: Complex64,
    pub r_minus: Complex64,
    /// (|r₊| + |r₋|)/2
    pub mean_modulus: f64,
    /// (|r₊| − |r₋|)/2
    pub modulus_asymmetry: f64,
    /// (φ₊ − φ₋)/2, principal value in (−π/2, π/2]. Not unwrapped across sweeps.
    pub faraday_angle: f64,
    /// H→H amplitude (r₊ + r₋)/2.
    pub r_hh: Complex64,
    /// H→V amplitude (r₊ − r₋)/2.
    pub r_vh: Complex64,
    pub singular: bool,
}

impl PolarizedReflection {
    /// |r_HH|² + |r_VH|², the fraction of an H-polarized photon that is reflected.
    pub fn reflectance(&self) -> f64 {
        self.r_hh.norm_sqr() + self.r_vh.norm_sqr()
    }
}

pub fn polarized_reflection(p: &SystemParams) -> PolarizedReflection {
    let plus = reflection_coefficient(p, Branch::Plus);
    let minus = reflection_coefficient(p, Branch::Minus);
    let (rp, rm) = (plus.value, minus.value);

    // (r₊ − r₋)/2 = 2iκ_ex G² (A+δ) / (N₊N₋); free of cancellation for small shifts.
    let tp = branch_terms(p, Branch::Plus);
    let tm = branch_terms(p, Branch::Minus);
    let g2 = p.coupling * p.coupling;
    let r_vh = I * (2.0 * p.kappa_ex * g2 * p.total_shift()) / (tp.denom * tm.denom);

    let (mp, mm) = (rp.norm(), rm.norm());
    let phase_difference = (rp * rm.conj()).arg();
    PolarizedReflection {
        r_plus: rp,
        r_minus: rm,
        mean_modulus: 0.5 * (mp + mm),
        modulus_asymmetry: 0.5 * (mp - mm),
        faraday_angle: 0.5 * phase_difference,
        r_hh: 0.5 * (rp + rm),
        r_vh,
        singular: plus.singular || minus.singular,
    }
}

/// Derivatives with respect to δ of the linear-basis amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeSlopes {
    pub r_hh: Complex64,
    pub r_vh: Complex64,
}

pub fn amplitude_slopes(p: &SystemParams) -> AmplitudeSlopes {
    let dp = reflection_slope(p, Branch::Plus);
    let dm = reflection_slope(p, Branch::Minus);
    // (r₊' + r₋')/2 = 2κ_ex G² M (A+δ)(N₊ + N₋)/(N₊N₋)², exact for small shifts.
    let tp = branch_terms(p, Branch::Plus);
    let tm = branch_terms(p, Branch::Minus);
    let cavity = Complex64::new(p.kappa(), p.cavity_detuning);
    let g2 = p.coupling * p.coupling;
    let nn = tp.denom * tm.denom;
    AmplitudeSlopes {
        r_hh: 2.0 * p.kappa_ex * g2 * p.total_shift() * cavity * (tp.denom + tm.denom) / (nn * nn),
        r_vh: 0.5 * (dp - dm),
    }
}

/// Reflection and internal-noise scattering matrices in the H/V basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringMatrices {
    /// Maps (H, V) input amplitudes at the port to (H, V) output amplitudes.
    pub reflection: Matrix2<Complex64>,
    /// Maps (H, V) internal-loss noise to the port outputs; carries √(κ_i/κ_ex).
    pub internal: Matrix2<Complex64>,
}

pub fn scattering_matrices(p: &SystemParams) -> Result<ScatteringMatrices> {
    if p.kappa_ex <= 0.0 {
        return Err(Error::NoExternalCoupling);
    }
    let pr = polarized_reflection(p);
    let (hh, vh) = (pr.r_hh, pr.r_vh);
    let reflection = Matrix2::new(hh, I * vh, -I * vh, hh);

    // t± = 1 + r±, so (t₊ + t₋)/2 = 1 + r_HH and (t₊ − t₋)/2 = r_VH. The
    // off-diagonal signs follow the explicit output-field expansion.
    let scale = (p.kappa_i / p.kappa_ex).sqrt();
    let diag = 1.0 + hh;
    let internal = Matrix2::new(diag, I * vh, -I * vh, diag) * Complex64::from(scale);
    Ok(ScatteringMatrices {
        reflection,
        internal,
    })
}

/// Direction of a polarization basis change.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisChange {
    /// (H, V) amplitudes to (σ₊, σ₋) amplitudes.
    LinearToCircular,
    /// (σ₊, σ₋) amplitudes to (H, V) amplitudes.
    CircularToLinear,
}

/// Unitary matrix of the basis change, with H = (σ₊ + σ₋)/√2 and V = i(σ₊ − σ₋)/√2.
pub fn basis_matrix(direction: BasisChange) -> Matrix2<Complex64> {
    let s = Complex64::from(std::f64::consts::FRAC_1_SQRT_2);
    let one = Complex64::from(1.0);
    match direction {
        BasisChange::LinearToCircular => Matrix2::new(one, I, one, -I) * s,
        BasisChange::CircularToLinear => Matrix2::new(one, one, -I, I) * s,
    }
}

pub fn basis_convert(field: Vector2<Complex64>, direction: BasisChange) -> Vector2<Complex64> {
    basis_matrix(direction) * field
}
