use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_danielewski"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn normalize_rewrites_the_relation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "b.cfg", "field = Q\nm = 1\nr = 2\nF = V^2\n");
    let o = run(&["ring", "normalize", "--config", cfg.to_str().unwrap(), "--expr", "T1^3*U^2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "t1*u*v^2");
}

#[test]
fn degree_and_gr_accept_negative_weights() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "b.cfg", "field = Q\nm = 1\nr = 2\nF = V^2 + T1*V\n");
    let cfg = cfg.to_str().unwrap();
    let o = run(&["ring", "deg", "--config", cfg, "--weights", "-1;0", "--expr", "u"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "2");

    let o = run(&["ring", "gr", "--config", cfg, "--weights", "-1;0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("relation verified: true"));

    // the top form T1*V is divisible by T1
    let o = run(&["ring", "gr", "--config", cfg, "--weights", "1;0"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn field_override_replaces_the_config_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "b.cfg", "field = Q\nm = 1\nr = 2\nF = V^2\n");
    let o = run(&["--field", "Fp:5", "--output", "json", "ring", "normalize", "--config", cfg.to_str().unwrap(), "--expr", "6*u"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["normal_form"], "u");
    assert!(v["ring"].as_str().unwrap().starts_with("Fp 5"), "{}", v["ring"]);
}

#[test]
fn expmap_check_reports_failures_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "b.cfg", "field = Q\nm = 1\nr = 2\nF = V^2\n");
    let cfg = cfg.to_str().unwrap();
    let o = run(&["expmap", "check", "--config", cfg, "--map", "t1 = t1 + W^2"]);
    assert_eq!(code(&o), 1);
    let o = run(&["expmap", "check", "--config", cfg, "--map", "v = v + t1^2*W; u = u + 2*v*W + t1^2*W^2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("VERIFIED"));
    let o = run(&["expmap", "make", "--config", cfg, "--kind", "translation", "--var", "t1"]);
    assert_eq!(code(&o), 1, "t1 appears in the relation; the plain translation is not well defined");
}

#[test]
fn stiso_build_then_verify_and_detect_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "b.cfg", "field = Q\nm = 1\nr = 3\nF = V^2 - 1\n");
    let cert = dir.path().join("c.txt");
    let o = run(&["stiso", "build", "--config", cfg.to_str().unwrap(), "--target", "1", "--out", cert.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["stiso", "verify", "--cert", cert.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("VERIFIED\n"));

    let text = std::fs::read_to_string(&cert).unwrap();
    assert_eq!(text.matches("[link ").count(), 2);
    let tampered: String = text
        .lines()
        .map(|l| if l.starts_with("forward.v = ") { "forward.v = v + 1".to_string() } else { l.to_string() })
        .collect::<Vec<_>>()
        .join("\n");
    std::fs::write(&cert, tampered).unwrap();
    let o = run(&["stiso", "verify", "--cert", cert.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn stiso_over_f2_is_a_verification_failure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "b.cfg", "field = Q\nm = 1\nr = 2\nF = V^2 - 1\n");
    let o = run(&["--field", "Fp:2", "stiso", "build", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let o = run(&["--field", "Fp:3", "stiso", "build", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("# VERIFIED\n"));
}

#[test]
fn asanuma_commands() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "a.cfg", "family = asanuma\nfield = Q\nm = 1\nr = 2\nH = Z + T\n");
    let cfg = cfg.to_str().unwrap();
    let o = run(&["asanuma", "classify", "--config", cfg]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("linear_in_T"));
    let o = run(&["asanuma", "ml1-maps", "--config", cfg]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("t -> 2*x1*y*U + y*U^2 + t"));
    let o = run(&["asanuma", "ex2"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn suite_run_json_is_stable() {
    let a = run(&["--output", "json", "suite", "run", "--case", "parse"]);
    let b = run(&["--output", "json", "suite", "run", "--case", "parse"]);
    assert_eq!(code(&a), 0);
    let va: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    let vb: serde_json::Value = serde_json::from_str(&stdout(&b)).unwrap();
    assert_eq!(va["digest"], vb["digest"]);
    assert!(va["cases"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn usage_errors_exit_two_and_name_the_flag() {
    let o = run(&["ring", "normalize", "--expr", "u"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--config"));

    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "b.cfg", "field = Q\nm = 1\nr = 2\nF = V^2\n");
    let o = run(&["ring", "normalize", "--config", cfg.to_str().unwrap(), "--expr", "u +"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("--expr") && err.contains("Input grammar"), "{err}");

    let o = run(&["--field", "Fp:4", "ring", "normalize", "--config", cfg.to_str().unwrap(), "--expr", "u"]);
    assert_eq!(code(&o), 2);

    let bad = write(dir.path(), "bad.cfg", "field = Q\nm = 1\nr = 2\nF = 2*V^2\n");
    let o = run(&["ring", "normalize", "--config", bad.to_str().unwrap(), "--expr", "u"]);
    assert_eq!(code(&o), 2);

    let o = run(&["ring", "frobnicate"]);
    assert_eq!(code(&o), 2);
}
