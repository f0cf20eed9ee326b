use faraday_cli::config::parse_config;
use faraday_core::SystemParams;

fn load(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn baseline_file_matches_caption() {
    let c = parse_config(&load("fig3_baseline.conf")).unwrap();
    assert_eq!(c.params, SystemParams::baseline(1.0));
    assert_eq!(parse_config(&load("fig4_fisher.conf")).unwrap().params, SystemParams::baseline(1.0));
}

#[test]
fn optimized_files_match_caption() {
    for name in ["fig6_optimized.conf", "fig7_v_port.conf"] {
        assert_eq!(parse_config(&load(name)).unwrap().params, SystemParams::optimized(1.0));
    }
}

#[test]
fn device_files() {
    let q100 = parse_config(&load("device_q100.conf")).unwrap();
    assert_eq!(q100.params.kappa_i, 28e6);
    assert!((q100.params.coupling - 2.8e6).abs() < 1e-6);
    assert_eq!((q100.temperature, q100.power), (70.0, 1e-9));
    let q1e5 = parse_config(&load("device_q1e5.conf")).unwrap();
    assert_eq!(q1e5.params.kappa_i, 28e3);
}
