//! Maps points of the unit hypercube onto the parameter space used by the
//! randomized checks, so any random source can drive them.

use crate::params::SystemParams;

/// Number of unit coordinates consumed by [`params_from_unit`].
pub const DIMENSIONS: usize = 8;

/// κ_i spans 10³–10⁸ Hz; κ_ex ∈ κ_i·10^[−1, 2]; G ∈ [0, 10]κ_i;
/// γ ∈ κ_i·10^[−4, 0]; Δ_r, Δ_q ∈ [−10, 10]κ_i; A, δ ∈ [−5, 5]κ_i.
pub fn params_from_unit(u: [f64; DIMENSIONS]) -> SystemParams {
    let k = 10f64.powf(3.0 + 5.0 * u[0]);
    let span = |x: f64, half: f64| k * half * (2.0 * x - 1.0);
    SystemParams::baseline(k)
        .with_kappa_ex(k * 10f64.powf(-1.0 + 3.0 * u[1]))
        .with_coupling(k * 10.0 * u[2])
        .with_gamma(k * 10f64.powf(-4.0 + 4.0 * u[3]))
        .with_detunings(span(u[4], 10.0), span(u[5], 10.0))
        .with_bias(span(u[6], 5.0))
        .with_signal(span(u[7], 5.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corners_are_valid() {
        for c in [[0.0; DIMENSIONS], [1.0; DIMENSIONS], [0.5; DIMENSIONS]] {
            params_from_unit(c).validate().unwrap();
        }
        let mid = params_from_unit([0.5; DIMENSIONS]);
        assert_eq!(mid.total_shift(), 0.0);
    }
}
