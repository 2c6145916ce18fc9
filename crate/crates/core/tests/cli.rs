use std::process::{Command, Output};

fn fdiscord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdiscord")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn value(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .and_then(|v| v.parse().ok())
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn compute_prints_report() {
    let o = fdiscord(&["compute", "mixture:p=0.5,m=0,n=1", "number"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!((value(&text, "c") - 0.025_888_347_648_318_447).abs() < 1e-12);
    for key in ["i_f=", "i_w=", "rank=", "truncation_dim=", "converged=true"] {
        assert!(text.contains(key), "{key}");
    }
    let o = fdiscord(&["compute", "thermal:lambda=0.3", "number"]);
    assert!(value(&stdout(&o), "c").abs() < 1e-12);
    let o = fdiscord(&["compute", "bloch:0,0,1", "pauli:x"]);
    assert!(value(&stdout(&o), "c").abs() < 1e-12);
}

#[test]
fn exit_codes() {
    assert_eq!(fdiscord(&["compute", "thermal:lambda=oops", "number"]).status.code(), Some(2));
    assert_eq!(fdiscord(&["compute", "thermal:lambda=0.3", "spin"]).status.code(), Some(2));
    assert_eq!(fdiscord(&["frobnicate"]).status.code(), Some(2));
    let o = fdiscord(&["compute", "thermal:lambda=1.5", "number"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
    assert_eq!(fdiscord(&["compute", "bloch:0,0,0.5", "number"]).status.code(), Some(3));
    assert_eq!(fdiscord(&["extremum", "THERMAL_X", "--param", "lambda", "--lo", "0.5", "--hi", "1.5"]).status.code(), Some(3));
}

#[test]
fn sweep_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = fdiscord(&[
            "sweep", "--family", "GAUSSIAN_X", "--set", "lambda=0.2", "--set", "theta=pi/4", "--param", "zeta_abs",
            "--start", "0", "--stop", "0.5", "--count", "5", "--out", path.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(path).unwrap()
    };
    let (a, b) = (run("a.csv"), run("b.csv"));
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.contains("\nzeta_abs,c_closed,c_spectral,i_f,i_w,used_dim\n"));
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), 5);
    for r in rows {
        let v: Vec<f64> = r.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(v.len(), 6);
        assert!((v[1] - v[2]).abs() <= 1e-6 * v[1].abs());
    }
}

#[test]
fn pair_sweep_has_no_closed_column() {
    let o = fdiscord(&[
        "sweep", "--state", "mixture:p=0.5,m=0,n=1", "--ham", "quadrature:theta=0", "--param", "theta", "--start", "0",
        "--stop", "pi/2", "--count", "3",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\ntheta,c_spectral,i_f,i_w,used_dim\n"));
    let bad = fdiscord(&["sweep", "--family", "THERMAL_X", "--param", "p", "--start", "0", "--stop", "1", "--count", "3"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn extremum_reports_thermal_peak() {
    let o = fdiscord(&["extremum", "THERMAL_X", "--param", "lambda", "--lo", "0.01", "--hi", "0.5", "--mode", "max"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!((value(&text, "arg") - 0.119_725_922_956_805_06).abs() < 1e-6);
    assert!((value(&text, "value") - 0.3003).abs() < 5e-4);
    let o = fdiscord(&[
        "extremum", "MIXTURE_N", "--set", "m=0", "--set", "n=1", "--param", "p", "--lo", "0.5", "--hi", "0.99",
    ]);
    assert!((value(&stdout(&o), "arg") - 0.8731).abs() < 1e-3);
}

#[test]
fn verify_smoke_and_negative_control() {
    let o = fdiscord(&["verify", "--trials", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| !l.starts_with("FAIL")));
    let o = fdiscord(&["verify", "--trials", "1", "--corrupt-family", "TWO_LEVEL_X"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("oracle TWO_LEVEL_X"));
    assert_eq!(fdiscord(&["verify", "--trials", "0"]).status.code(), Some(3));
}

#[test]
fn figures_closed_only() {
    let dir = tempfile::tempdir().unwrap();
    let o = fdiscord(&["figures", "--closed-only", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let mut names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(names.len(), 24);
    assert!(names.contains(&"fig4_two_level_x.csv".to_string()));
    assert!(names.contains(&"fig8_theta_z_pi.csv".to_string()));
}
