//! Reference derivatives of the outcome probabilities by extrapolated finite
//! differences of the unsimplified reflection formula in double-double
//! arithmetic. Used only to check [`crate::single_photon::probability_derivatives`].

use num_complex::Complex;
use twofloat::TwoFloat;

use crate::params::SystemParams;

type C2 = Complex<TwoFloat>;

fn tf(x: f64) -> TwoFloat {
    TwoFloat::from(x)
}

/// r± = −1 + 2κ_ex/(iΔ_r + κ + G²/(i[Δ_q ± (A+δ)] + γ/2)), nested form as written.
fn reflection_dd(p: &SystemParams, signal: TwoFloat, sign: f64) -> C2 {
    let shift = tf(p.bias) + signal;
    let spin = C2::new(tf(0.5 * p.gamma), tf(p.spin_detuning) + shift * tf(sign));
    let g2 = tf(p.coupling) * tf(p.coupling);
    let kappa = tf(p.kappa_ex) + tf(p.kappa_i);
    let cavity = C2::new(kappa, tf(p.cavity_detuning));
    let inner = cavity + cdiv(C2::new(g2, tf(0.0)), spin);
    cdiv(C2::new(tf(2.0 * p.kappa_ex), tf(0.0)), inner) - C2::new(tf(1.0), tf(0.0))
}

/// Long division a/b to double-double precision. `TwoFloat`'s own quotient
/// drops the residual of its reciprocal step and is only f64-accurate.
fn div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q1 = a.hi() / b.hi();
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    tf(q1) + tf(q2) + tf(q3)
}

fn cdiv(a: C2, b: C2) -> C2 {
    let d = norm_sqr(b);
    C2::new(
        div(a.re * b.re + a.im * b.im, d),
        div(a.im * b.re - a.re * b.im, d),
    )
}

fn norm_sqr(z: C2) -> TwoFloat {
    z.re * z.re + z.im * z.im
}

/// (P_V, P_H, P_∅) at signal shift `signal`, double-double.
fn probabilities_dd(p: &SystemParams, signal: TwoFloat) -> [TwoFloat; 3] {
    let rp = reflection_dd(p, signal, 1.0);
    let rm = reflection_dd(p, signal, -1.0);
    let half = tf(0.5);
    let vh = C2::new((rp.re - rm.re) * half, (rp.im - rm.im) * half);
    let hh = C2::new((rp.re + rm.re) * half, (rp.im + rm.im) * half);
    let pv = norm_sqr(vh);
    let ph = norm_sqr(hh);
    [pv, ph, tf(1.0) - pv - ph]
}

/// Outcome probabilities from the nested formula, rounded to f64.
pub fn reference_probabilities(p: &SystemParams) -> [f64; 3] {
    probabilities_dd(p, tf(p.signal)).map(f64::from)
}

/// Tableau depth of the Richardson extrapolation.
const LEVELS: usize = 6;

/// ∂P_ξ/∂δ by central differences with step `h0`, h0/2, … extrapolated in h².
pub fn reference_derivatives_with_step(p: &SystemParams, h0: f64) -> [f64; 3] {
    let center = tf(p.signal);
    let mut table = [[[tf(0.0); LEVELS]; LEVELS]; 3];
    let mut h = tf(h0);
    for level in 0..LEVELS {
        let up = probabilities_dd(p, center + h);
        let down = probabilities_dd(p, center - h);
        for k in 0..3 {
            table[k][level][0] = div(up[k] - down[k], tf(2.0) * h);
        }
        let mut factor = tf(1.0);
        for j in 1..=level {
            factor *= tf(4.0);
            for row in table.iter_mut() {
                row[level][j] = row[level][j - 1]
                    + div(row[level][j - 1] - row[level - 1][j - 1], factor - tf(1.0));
            }
        }
        h *= tf(0.5);
    }
    [0, 1, 2].map(|k| f64::from(table[k][LEVELS - 1][LEVELS - 1]))
}

/// [`reference_derivatives_with_step`] with a starting step of 10⁻⁶κ_i.
pub fn reference_derivatives(p: &SystemParams) -> [f64; 3] {
    reference_derivatives_with_step(p, 1e-6 * p.kappa_i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::single_photon::{outcome_probabilities, probability_derivatives};

    #[test]
    fn probabilities_agree_with_f64_path() {
        let p = SystemParams::baseline(1.0).with_signal(0.3).with_detunings(0.2, -0.1);
        let a = reference_probabilities(&p);
        let b = outcome_probabilities(&p).as_array();
        for k in 0..3 {
            assert!((a[k] - b[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn polynomial_like_derivative() {
        let p = SystemParams::baseline(1.0).with_signal(0.2);
        let fd = reference_derivatives(&p);
        let an = probability_derivatives(&p);
        for k in 0..3 {
            assert!((fd[k] - an[k]).abs() <= 1e-12 * an[k].abs(), "{k}: {} vs {}", fd[k], an[k]);
        }
    }

    #[test]
    fn long_division_is_double_double() {
        let third = div(tf(1.0), tf(3.0));
        assert!(f64::from(third * tf(3.0) - tf(1.0)).abs() < 1e-30);
    }

    #[test]
    fn narrow_feature() {
        let p = SystemParams::optimized(1.0).with_signal(4e-4);
        let fd = reference_derivatives(&p);
        let an = probability_derivatives(&p);
        for k in 0..3 {
            assert!((fd[k] - an[k]).abs() <= 1e-12 * an[k].abs());
        }
    }
}
