use std::path::Path;
use std::process::{Command, Output};

use faraday_cli::manifest::strip_timestamp;
use faraday_cli::table::read_csv;
use faraday_core::{fisher_information_sp, SystemParams};

fn faraday(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_faraday"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn config(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn values(o: &Output) -> Vec<(String, f64)> {
    let (_, rows) = read_csv(&stdout(o)).unwrap();
    rows.into_iter().map(|r| (r[0].clone(), r[1].parse().unwrap())).collect()
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(faraday(&["--help"]).status.code(), Some(0));
    assert_eq!(faraday(&["--version"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(faraday(&["nonsense"]).status.code(), Some(1));
    assert_eq!(faraday(&["probs"]).status.code(), Some(1), "kappa_i is required");
    assert_eq!(faraday(&["probs", "--set", "Tz=3"]).status.code(), Some(1));
    assert_eq!(faraday(&["figure", "2"]).status.code(), Some(1));
    assert_eq!(faraday(&["probs", "--config", "/no/such/file"]).status.code(), Some(1));
}

#[test]
fn probs_at_resonance() {
    let o = faraday(&["probs", "--config", &config("fig3_baseline.conf")]);
    assert!(o.status.success());
    let v = values(&o);
    let ph = v.iter().find(|(k, _)| k == "P_H").unwrap().1;
    let r = -1.0 + 2.0 / 2002.0;
    assert_eq!(ph, r * r);
    assert!(stdout(&o).contains("# convention: measurement time tau_m = 1/FWHM"));
}

#[test]
fn overrides_apply() {
    let o = faraday(&["fisher-sp", "--config", &config("fig4_fisher.conf"), "--set", "delta=0.0684 kappa_i"]);
    assert!(o.status.success());
    let f = values(&o)[0].1;
    let direct = fisher_information_sp(&SystemParams::baseline(1.0).with_signal(0.0684));
    assert_eq!(f, direct);
}

#[test]
fn sense_mp_reports_all_forms() {
    let o = faraday(&["sense-mp", "--config", &config("device_q100.conf"), "--set", "delta=1e-4 kappa_i"]);
    assert!(o.status.success());
    let names: Vec<String> = values(&o).into_iter().map(|(k, _)| k).collect();
    for k in ["sensitivity", "sensitivity_kT", "sensitivity_simplified", "C_th"] {
        assert!(names.iter().any(|n| n == k), "{k}");
    }
    let none = faraday(&["sense-mp", "--config", &config("device_q100.conf"), "--set", "G=0"]);
    assert_eq!(none.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&none.stderr).contains("no signal transduction"));
}

#[test]
fn sweep_of_pv_is_symmetric() {
    let o = faraday(&[
        "sweep",
        "--config",
        &config("fig3_baseline.conf"),
        "--axis",
        "delta=-2:2:4001 kappa_i",
        "--quantity",
        "P_V",
    ]);
    assert!(o.status.success());
    let (header, rows) = read_csv(&stdout(&o)).unwrap();
    assert_eq!(header, ["delta/kappa_i", "P_V", "flag"]);
    let pv: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(pv.len(), 4001);
    for i in 0..pv.len() {
        assert!((pv[i] - pv[pv.len() - 1 - i]).abs() < 1e-15);
    }
    let max = pv.iter().copied().fold(0.0, f64::max);
    assert!((max - 0.25).abs() < 0.005);
}

#[test]
fn sweep_cells_equal_direct_calls() {
    let o = faraday(&[
        "sweep",
        "--set",
        "kappa_i=28 MHz",
        "--axis",
        "delta=-1:1:7 kappa_i",
        "--quantity",
        "F_I",
        "--jobs",
        "3",
    ]);
    assert!(o.status.success());
    let (_, rows) = read_csv(&stdout(&o)).unwrap();
    for r in rows {
        let d: f64 = r[0].parse().unwrap();
        let f: f64 = r[1].parse().unwrap();
        let direct = fisher_information_sp(&SystemParams::baseline(28e6).with_signal(d * 28e6));
        assert_eq!(f.to_bits(), direct.to_bits());
        assert_eq!(r[2], "false");
    }
}

#[test]
fn sweep_rejects_bad_axes() {
    let bad = |axis: &str| faraday(&["sweep", "--set", "kappa_i=1", "--axis", axis, "--quantity", "P_V"]);
    assert_eq!(bad("Tz=0:1:3").status.code(), Some(1));
    assert_eq!(bad("delta=0:1:1").status.code(), Some(1));
    let q = faraday(&["sweep", "--set", "kappa_i=1", "--axis", "delta=0:1:3", "--quantity", "Q"]);
    assert_eq!(q.status.code(), Some(1));
}

#[test]
fn figures_are_deterministic_across_jobs() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["3", "7"] {
        for jobs in ["1", "4"] {
            let out = dir.path().join(format!("{id}_{jobs}"));
            let o = faraday(&["figure", id, "--jobs", jobs, "--out", out.to_str().unwrap()]);
            assert!(o.status.success());
        }
        let a = dir.path().join(format!("{id}_1"));
        let b = dir.path().join(format!("{id}_4"));
        let mut names: Vec<_> = std::fs::read_dir(&a).unwrap().map(|e| e.unwrap().file_name()).collect();
        names.sort();
        assert!(!names.is_empty());
        for n in names {
            let x = std::fs::read_to_string(a.join(&n)).unwrap();
            let y = std::fs::read_to_string(b.join(&n)).unwrap();
            assert_eq!(strip_timestamp(&x), strip_timestamp(&y));
        }
    }
}

#[test]
fn check_paper_is_reproducible_and_reports_failures_with_code_two() {
    let first = faraday(&["check-paper", "--jobs", "2"]);
    let second = faraday(&["check-paper", "--jobs", "3"]);
    let text = stdout(&first);
    assert_eq!(strip_timestamp(&text), strip_timestamp(&stdout(&second)));
    assert!(text.contains("# convention: rates and detunings are cyclic frequencies in Hz"));
    assert!(text.contains("# note: multiphoton endpoint:"));
    let (_, rows) = read_csv(&text).unwrap();
    assert!(rows.iter().any(|r| r[0] == "1" && r[5] == "PASS"));
    let any_fail = rows.iter().any(|r| r[5] == "FAIL");
    assert_eq!(first.status.code(), Some(if any_fail { 2 } else { 0 }));
}
