use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn gswwe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gswwe")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden").join(name)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn balance_prints_n() {
    let o = gswwe(&["balance"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "N = 2\n");
}

#[test]
fn system_matches_golden() {
    let o = gswwe(&["system"]);
    assert!(o.status.success());
    let expected: String = fs::read_to_string(golden("system.txt"))
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    assert_eq!(stdout(&o), expected);
}

#[test]
fn verify_defaults_pass_and_dump_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = gswwe(&["verify", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("SET1: PASS") && text.contains("SET2: PASS"));
    assert!(text.contains("SET1 corroborated: yes") && text.contains("SET2 corroborated: yes"));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    assert_eq!(json["passed"], true);
    assert_eq!(json["sets"][0]["set"], "SET1");
    assert_eq!(json["oracle"]["roots"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_against_reference_transcription_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = golden("printed_system.txt");
    let cfg = write(dir.path(), "c.toml", &format!("[verify]\nsystem_file = {:?}\n", path.to_str().unwrap()));
    let o = gswwe(&["--config", &cfg, "verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("proportional to derived system: yes"));
}

#[test]
fn verify_with_tampered_system_fails() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(golden("system.txt")).unwrap();
    let tampered = text.replace("+ 12*a2*C + 6*a2", "+ 12*a2*C + 7*a2");
    assert_ne!(text, tampered);
    write(dir.path(), "tampered.txt", &tampered);
    // relative to the config file's directory
    let cfg = write(dir.path(), "c.toml", "[verify]\nsystem_file = \"tampered.txt\"\n");
    let o = gswwe(&["--config", &cfg, "verify"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("proportional to derived system: no"));
    assert!(out.contains("verify: FAIL"));
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("[model]\ngamma = 0.0\n", "gamma"),
        ("[expansion]\nB = 2.0\nC = 1.0\n", "discriminant"),
        ("[expansion]\nk1 = 0.0\nk2 = 0.0\n", "k1 and k2"),
        ("[model]\nalpha = 2.0\nbeta = -2.0\n", "alpha + beta"),
        ("[verify]\nsystem_file = \"missing.txt\"\n", "missing.txt"),
        ("not toml = = 1", ""),
    ];
    for (text, needle) in cases {
        let cfg = write(dir.path(), "bad.toml", text);
        let o = gswwe(&["--config", &cfg, "verify"]);
        assert_eq!(o.status.code(), Some(2), "{text}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert!(err.contains(needle), "{text}: {err}");
    }
    assert_eq!(gswwe(&["--config", "/nonexistent.toml", "eval"]).status.code(), Some(2));
    assert_eq!(gswwe(&["plotdata", "fig9"]).status.code(), Some(2));
    assert_eq!(gswwe(&["--grid", "5", "residual"]).status.code(), Some(2));
    assert_eq!(gswwe(&["--tolerance", "-1", "residual"]).status.code(), Some(2));
}

#[test]
fn plotdata_is_deterministic_and_presets_match_custom() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = gswwe(&["plotdata", "fig1", "--out", d.path().to_str().unwrap()]);
        assert!(o.status.success());
    }
    for f in ["fig1_slice.csv", "fig1_surface.csv"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap());
    }
    let cfg = write(
        b.path(),
        "fig1.toml",
        "[model]\nalpha = 1.0\nbeta = 1.0\ngamma = 1.0\n\
         [expansion]\nA = 0.0\nB = 1.0\nC = 0.1\nk1 = 1.0\nk2 = 1.0\n\
         [solution]\nset = \"SET1\"\n",
    );
    let o = gswwe(&["--config", &cfg, "plotdata", "--out", b.path().to_str().unwrap()]);
    assert!(o.status.success());
    for kind in ["slice", "surface"] {
        let preset = fs::read(a.path().join(format!("fig1_{kind}.csv"))).unwrap();
        let custom = fs::read(b.path().join(format!("custom_{kind}.csv"))).unwrap();
        assert_eq!(preset, custom, "{kind}");
    }
}

#[test]
fn plotdata_layout() {
    let d = tempfile::tempdir().unwrap();
    let o = gswwe(&["plotdata", "--figure", "fig1", "--out", d.path().to_str().unwrap()]);
    assert!(o.status.success());
    let slice = fs::read_to_string(d.path().join("fig1_slice.csv")).unwrap();
    let lines: Vec<&str> = slice.lines().collect();
    assert_eq!(lines[0], "zeta,phi,u,pole,u_blocked");
    assert_eq!(lines.len(), 402);
    assert!(lines[1].starts_with("-1.0000000000000000e1,"));
    assert!(lines[201].starts_with("0.0000000000000000e0,"));
    assert!(lines[1..].iter().all(|l| l.ends_with(",false,false")));
    let surface = fs::read_to_string(d.path().join("fig1_surface.csv")).unwrap();
    let lines: Vec<&str> = surface.lines().collect();
    assert_eq!(lines[0], "x,t,zeta,phi,u,pole,u_blocked");
    assert_eq!(lines.len(), 1 + 101 * 101);
    // row-major in t then x; zeta = x - 2.5 t
    let row: Vec<f64> = lines[2].split(',').take(3).map(|v| v.parse().unwrap()).collect();
    assert_eq!(row[..2], [-9.8, -10.0]);
    assert!((row[2] - (-9.8 + 25.0)).abs() < 1e-12);
}

#[test]
fn plotdata_flags_poles_of_singular_waves() {
    let d = tempfile::tempdir().unwrap();
    for fig in ["fig2", "fig4"] {
        let o = gswwe(&["plotdata", fig, "--out", d.path().to_str().unwrap(), "--grid", "41,21"]);
        assert!(o.status.success());
        let slice = fs::read_to_string(d.path().join(format!("{fig}_slice.csv"))).unwrap();
        assert!(slice.lines().skip(1).any(|l| l.contains(",true,")), "{fig}");
        assert!(slice.lines().skip(1).any(|l| l.ends_with(",true")), "{fig}: u blocked beyond poles");
        let surface = fs::read_to_string(d.path().join(format!("{fig}_surface.csv"))).unwrap();
        assert_eq!(surface.lines().count(), 1 + 41 * 21);
    }
}

#[test]
fn residual_exit_codes() {
    let o = gswwe(&["residual", "--figure", "fig1", "--grid", "101,101"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("residual (tolerance 1e-3): PASS"));
    let o = gswwe(&["residual", "--figure", "fig1", "--tolerance", "1e-12"]);
    assert_eq!(o.status.code(), Some(1));
    let d = tempfile::tempdir().unwrap();
    let o = gswwe(&["residual", "--figure", "fig3", "--out", d.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.path().join("residual.json")).unwrap()).unwrap();
    assert_eq!(json["pde"]["points"], 201 * 201);
    assert!(json["pde_relative"].as_f64().unwrap() < 1e-3);
}

#[test]
fn eval_reports_fig1_values() {
    let o = gswwe(&["eval", "--x", "0", "--t", "0"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("omega = 2.5000000000000000e0"));
    assert!(out.contains("u = v(x, t) = 0.0000000000000000e0"));
    let phi: f64 = out
        .lines()
        .find_map(|l| l.strip_prefix("phi = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((phi - 0.36).abs() < 1e-12);
    let o = gswwe(&["eval", "--figure", "fig2", "--x", "-3.5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("undefined"));
}
