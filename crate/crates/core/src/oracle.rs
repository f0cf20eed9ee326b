//! Steady-state solution of the coupled cavity/spin Langevin equations.
//!
//! In the frame rotating at the carrier frequency, each branch obeys
//!
//! ```text
//! ȧ = −(iΔ_r + κ)·a − iG·c + √(2κ_ex)·a_in
//! ċ = −(i[Δ_q ± (A+δ)] + γ/2)·c − iG·a
//! ```
//!
//! with output `a_out = −a_in + √(2κ_ex)·a`. Solving the 2×2 system
//! numerically gives a reflection that is independent of the closed form in
//! [`crate::spectra`]; the two must agree. Internal-loss noise is injected
//! with √(2κ_i); the spin modes receive no noise.

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{Branch, SystemParams};
use crate::spectra::{basis_convert, BasisChange};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `ẋ = drift·x + input` for x = (cavity, spin) amplitudes of one branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearSystem2 {
    pub drift: Matrix2<Complex64>,
    pub input: Vector2<Complex64>,
}

impl LinearSystem2 {
    /// System for one branch driven at `drive_offset` (Hz) from the carrier,
    /// with the given cavity injection amplitude.
    pub fn for_branch(p: &SystemParams, branch: Branch, drive_offset: f64, injection: f64) -> Self {
        let cavity = -Complex64::new(p.kappa(), p.cavity_detuning - drive_offset);
        let spin = -Complex64::new(
            0.5 * p.gamma,
            p.spin_detuning + branch.sign() * p.total_shift() - drive_offset,
        );
        let g = -I * p.coupling;
        Self {
            drift: Matrix2::new(cavity, g, g, spin),
            input: Vector2::new(Complex64::from(injection), Complex64::from(0.0)),
        }
    }

    pub fn eigenvalues(&self) -> [Complex64; 2] {
        let m = &self.drift;
        let half_trace = 0.5 * (m[(0, 0)] + m[(1, 1)]);
        let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        let root = (half_trace * half_trace - det).sqrt();
        [half_trace + root, half_trace - root]
    }

    pub fn is_stable(&self) -> bool {
        self.eigenvalues().iter().all(|l| l.re < 0.0)
    }

    /// Fixed point of `0 = drift·x + input`.
    pub fn steady_state(&self) -> Option<Vector2<Complex64>> {
        self.drift.lu().solve(&(-self.input))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    pub cavity: Complex64,
    pub spin: Complex64,
}

fn solve(p: &SystemParams, branch: Branch, drive_offset: f64, injection: f64) -> Result<SteadyState> {
    let x = LinearSystem2::for_branch(p, branch, drive_offset, injection)
        .steady_state()
        .ok_or(Error::SingularSystem { branch })?;
    if !(x[0].is_finite() && x[1].is_finite()) {
        return Err(Error::SingularSystem { branch });
    }
    Ok(SteadyState {
        cavity: x[0],
        spin: x[1],
    })
}

/// Intracavity and collective-spin amplitudes for a unit coherent drive
/// through the external port.
pub fn steady_state_amplitudes(
    p: &SystemParams,
    branch: Branch,
    drive_offset: f64,
) -> Result<SteadyState> {
    solve(p, branch, drive_offset, (2.0 * p.kappa_ex).sqrt())
}

/// Reflection from the input–output relation applied to the numerical steady state.
pub fn oracle_reflection(p: &SystemParams, branch: Branch) -> Result<Complex64> {
    let ss = steady_state_amplitudes(p, branch, 0.0)?;
    Ok((2.0 * p.kappa_ex).sqrt() * ss.cavity - 1.0)
}

/// Port output produced by unit internal-loss noise on one branch.
pub fn oracle_internal_transfer(p: &SystemParams, branch: Branch) -> Result<Complex64> {
    let ss = solve(p, branch, 0.0, (2.0 * p.kappa_i).sqrt())?;
    Ok((2.0 * p.kappa_ex).sqrt() * ss.cavity)
}

/// Coefficients of (ξ_E^H, ξ_I^H, ξ_E^V, ξ_I^V) in the V-polarized output.
///
/// Each noise source is split into circular components, propagated through
/// the branch steady states and recombined into the H/V basis.
pub fn noise_transfer_row(p: &SystemParams) -> Result<[Complex64; 4]> {
    if p.kappa_ex <= 0.0 {
        return Err(Error::NoExternalCoupling);
    }
    let external = [
        oracle_reflection(p, Branch::Plus)?,
        oracle_reflection(p, Branch::Minus)?,
    ];
    let internal = [
        oracle_internal_transfer(p, Branch::Plus)?,
        oracle_internal_transfer(p, Branch::Minus)?,
    ];
    let one = Complex64::from(1.0);
    let zero = Complex64::from(0.0);
    let h = Vector2::new(one, zero);
    let v = Vector2::new(zero, one);

    let v_output = |pol: Vector2<Complex64>, response: [Complex64; 2]| {
        let circ = basis_convert(pol, BasisChange::LinearToCircular);
        let out = Vector2::new(circ[0] * response[0], circ[1] * response[1]);
        basis_convert(out, BasisChange::CircularToLinear)[1]
    };
    Ok([
        v_output(h, external),
        v_output(h, internal),
        v_output(v, external),
        v_output(v, internal),
    ])
}
