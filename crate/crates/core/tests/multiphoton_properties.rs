use faraday_core::sampling::{params_from_unit, DIMENSIONS};
use faraday_core::{
    measurement_moments, noise_budget, nominal_fisher_v, outcome_probabilities, sensitivity_mp, ProbeSpec,
    SystemParams, ThermalEnvironment,
};
use proptest::prelude::*;

fn unit() -> impl Strategy<Value = [f64; DIMENSIONS]> {
    proptest::array::uniform8(0.0f64..1.0)
}

const F: f64 = 2.8e9;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn components_are_nonnegative_and_sum(u in unit(), t in 0.0f64..300.0) {
        let env = ThermalEnvironment::new(t, F).unwrap();
        let b = noise_budget(&params_from_unit(u), &env).unwrap();
        let c = b.components;
        for x in [c.external_h, c.internal_h, c.external_v, c.internal_v] {
            prop_assert!(x >= 0.0);
        }
        prop_assert!((c.total() - b.n_xi).abs() <= 1e-15 * b.n_xi);
        prop_assert!(b.c_th >= 0.0);
    }

    #[test]
    fn sensitivity_monotone_in_power_and_temperature(u in unit(), t in 1.0f64..300.0) {
        let p = params_from_unit(u);
        prop_assume!(nominal_fisher_v(&p) > 0.0);
        let cold = ThermalEnvironment::new(t, F).unwrap();
        let hot = ThermalEnvironment::new(2.0 * t, F).unwrap();
        let weak = ProbeSpec::new(1e-9, 1e-6, F).unwrap();
        let strong = ProbeSpec::new(2e-9, 1e-6, F).unwrap();
        let base = sensitivity_mp(&p, &cold, &weak).unwrap().value;
        prop_assert!(sensitivity_mp(&p, &cold, &strong).unwrap().value <= base);
        prop_assert!(sensitivity_mp(&p, &hot, &weak).unwrap().value >= base);
    }

    #[test]
    fn duration_never_enters(u in unit(), tau in 1e-9f64..1e-3) {
        let p = params_from_unit(u);
        prop_assume!(nominal_fisher_v(&p) > 0.0);
        let env = ThermalEnvironment::new(70.0, F).unwrap();
        let a = sensitivity_mp(&p, &env, &ProbeSpec::new(1e-9, tau, F).unwrap()).unwrap();
        let b = sensitivity_mp(&p, &env, &ProbeSpec::new(1e-9, 2.0 * tau, F).unwrap()).unwrap();
        prop_assert_eq!(a.value, b.value);
    }
}

#[test]
fn c_th_approaches_simple_limit_quadratically() {
    let env = ThermalEnvironment::new(70.0, F).unwrap();
    let gap = |ratio: f64| {
        let p = SystemParams::optimized(1.0).with_kappa_ex(1.0 / ratio).with_signal(2e-3);
        let d = outcome_probabilities(&p);
        (noise_budget(&p, &env).unwrap().c_th - 2.0 * (d.p_v + d.p_h)).abs()
    };
    let (coarse, fine) = (gap(1e-2), gap(1e-3));
    assert!(fine < 1e-5);
    assert!((coarse / fine) > 50.0 && (coarse / fine) < 200.0, "{coarse} {fine}");
}

#[test]
fn approximate_variance_converges() {
    let p = SystemParams::baseline(1.0).with_signal(0.3);
    let env = ThermalEnvironment::new(70.0, F).unwrap();
    let budget = noise_budget(&p, &env).unwrap();
    let n_xi = budget.n_xi;
    assert!(n_xi > 100.0);
    let tau = 1e9 * 6.626_070_15e-34 * F / 1e-9;
    let probe = ProbeSpec::new(1e-9, tau, F).unwrap();
    assert!((probe.n_in - 1e9).abs() / 1e9 < 1e-9);
    let m = measurement_moments(&p, &env, &probe).unwrap();
    let gap = (m.variance - m.variance_approx).abs() / m.variance;
    assert!(gap < 0.01);
    assert!(gap < 2.0 / n_xi + 2.0 * n_xi / probe.n_in);
}

#[test]
fn zero_temperature_floor_is_shot_noise() {
    let p = SystemParams::optimized(1.0).with_signal(5e-4);
    let env = ThermalEnvironment::new(0.0, F).unwrap();
    let s = sensitivity_mp(&p, &env, &ProbeSpec::new(1e-9, 1e-6, F).unwrap()).unwrap();
    assert!(s.value > 0.0 && s.value.is_finite());
    assert_eq!(s.budget.n_xi, 0.0);
}
