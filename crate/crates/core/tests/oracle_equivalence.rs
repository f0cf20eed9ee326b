use faraday_core::oracle::{noise_transfer_row, oracle_reflection};
use faraday_core::sampling::{params_from_unit, DIMENSIONS};
use faraday_core::{reflection_coefficient, scattering_matrices, Branch};
use proptest::prelude::*;

fn unit() -> impl Strategy<Value = [f64; DIMENSIONS]> {
    proptest::array::uniform8(0.0f64..1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn closed_form_matches_langevin_solve(u in unit()) {
        let p = params_from_unit(u);
        for b in Branch::BOTH {
            let closed = reflection_coefficient(&p, b).value;
            let solved = oracle_reflection(&p, b).unwrap();
            let scale = closed.norm().max(solved.norm());
            prop_assert!((closed - solved).norm() <= 1e-10 * scale, "{b}: {closed} vs {solved} at {p:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn noise_row_matches_scattering_matrices(u in unit()) {
        let p = params_from_unit(u);
        let row = noise_transfer_row(&p).unwrap();
        let m = scattering_matrices(&p).unwrap();
        let expected = [m.reflection[(1, 0)], m.internal[(1, 0)], m.reflection[(1, 1)], m.internal[(1, 1)]];
        for (a, b) in row.iter().zip(expected) {
            prop_assert!((a - b).norm() <= 1e-10 * (1.0 + b.norm()));
        }
    }
}
