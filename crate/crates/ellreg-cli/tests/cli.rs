//! Exit-code contract and byte-determinism of the command-line interface.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::atomic::{AtomicU32, Ordering};

static COUNTER: AtomicU32 = AtomicU32::new(0);

struct Workdir(PathBuf);

impl Workdir {
    fn new() -> Self {
        let dir = std::env::temp_dir().join(format!(
            "ellreg-cli-test-{}-{}",
            std::process::id(),
            COUNTER.fetch_add(1, Ordering::SeqCst)
        ));
        fs::create_dir_all(&dir).unwrap();
        Workdir(dir)
    }

    fn file(&self, name: &str, content: &str) -> PathBuf {
        let path = self.0.join(name);
        fs::write(&path, content).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for Workdir {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn ellreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellreg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run(args: &[&Path]) -> Output {
    let strs: Vec<&str> = args.iter().map(|p| p.to_str().unwrap()).collect();
    ellreg(&strs)
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

const SUPERCRITICAL: &str = "\
n: 3
d: 3
kind: h01
p: 0 3/5 3/5
p: 3/5 0 3/5
p: 3/5 3/5 0
r: 1 1 1
theta: 2
";

const SUBCRITICAL_H01: &str = "\
n: 3
d: 23
kind: h01
p: 0 3/5 3/5
p: 3/5 0 3/5
p: 3/5 3/5 0
r: 0 0 0
";

const SCALAR_L1_D5: &str = "n: 1\nd: 5\nkind: l1\np: 2\nr: 0\n";

#[test]
fn analyze_exit_codes_cover_all_verdicts() {
    let w = Workdir::new();

    let sup = w.file("sup.ellspec", SUPERCRITICAL);
    let out = ellreg(&["analyze", sup.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("verdict.status: supercritical"));
    assert!(stdout.contains("scaling.alpha: 5/1 5/1 5/1"));

    let sub = w.file("sub.ellspec", SUBCRITICAL_H01);
    let out = ellreg(&["analyze", sub.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 10);

    // alpha = 1 equals the L1 threshold (d-2)/2 at d = 4
    let critical = w.file("crit.ellspec", "n: 1\nd: 4\nkind: l1\np: 2\nr: 0\n");
    let out = ellreg(&["analyze", critical.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 11);

    // supercritical rate but r = p_c exactly
    let not_covered = w.file("nc.ellspec", "n: 1\nd: 3\nkind: l1\np: 2\nr: 3\n");
    let out = ellreg(&["analyze", not_covered.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 12);

    // reducible pattern
    let invalid = w.file(
        "invalid.ellspec",
        "n: 2\nd: 3\nkind: h01\np: 0 2\np: 0 0\nr: 0 0\n",
    );
    let out = ellreg(&["analyze", invalid.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 13);

    // auto-regular: p12 * p21 = 1
    let auto = w.file(
        "auto.ellspec",
        "n: 2\nd: 3\nkind: l1\np: 0 2\np: 1/2 0\nr: 0 0\n",
    );
    let out = ellreg(&["analyze", auto.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("verdict.status: auto-regular"));
}

#[test]
fn parse_errors_exit_2_with_diagnostics() {
    let w = Workdir::new();
    let decimal = w.file(
        "decimal.ellspec",
        "n: 2\nd: 3\nkind: l1\np: 0 0.5\np: 1 0\nr: 0 0\n",
    );
    let out = ellreg(&["analyze", decimal.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 4"), "{stderr}");
    assert!(stderr.contains("exact rational required"), "{stderr}");

    let out = ellreg(&["analyze", w.path("missing.ellspec").to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn certify_roundtrips_through_check() {
    let w = Workdir::new();
    let spec = w.file("sup.ellspec", SUPERCRITICAL);
    let cert = w.path("sup.cert");
    let out = run(&[Path::new("certify"), &spec, Path::new("--out"), &cert]);
    assert_eq!(exit_code(&out), 0);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("certify.steps:"));

    let out = run(&[Path::new("check"), &spec, &cert]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "check: ok\n");
}

#[test]
fn certify_refuses_subcritical_and_writes_nothing() {
    let w = Workdir::new();
    let spec = w.file("sub.ellspec", SUBCRITICAL_H01);
    let cert = w.path("never.cert");
    let out = run(&[Path::new("certify"), &spec, Path::new("--out"), &cert]);
    assert_eq!(exit_code(&out), 10);
    assert!(!cert.exists(), "no file may be written on refusal");
}

#[test]
fn certify_budget_exhaustion_is_exit_20() {
    let w = Workdir::new();
    let spec = w.file("sup.ellspec", SUPERCRITICAL);
    let out = ellreg(&[
        "certify",
        spec.to_str().unwrap(),
        "--max-steps",
        "1",
    ]);
    assert_eq!(exit_code(&out), 20);
}

#[test]
fn certify_bad_epsilon_is_exit_2() {
    let w = Workdir::new();
    let spec = w.file("sup.ellspec", SUPERCRITICAL);
    let out = ellreg(&["certify", spec.to_str().unwrap(), "--epsilon", "0.25"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn check_rejects_tampered_certificate_with_reason() {
    let w = Workdir::new();
    let spec = w.file("scalar.ellspec", "n: 1\nd: 3\nkind: l1\np: 2\nr: 0\n");
    let cert = w.path("scalar.cert");
    let out = run(&[Path::new("certify"), &spec, Path::new("--out"), &cert]);
    assert_eq!(exit_code(&out), 0);

    // skip the first step: the next stored sigma no longer matches the replay
    let text = fs::read_to_string(&cert).unwrap();
    let mut removed_one = false;
    let tampered: Vec<&str> = text
        .lines()
        .filter(|l| {
            if !removed_one && l.starts_with("step:") {
                removed_one = true;
                false
            } else {
                true
            }
        })
        .collect();
    assert!(removed_one);
    let tampered_path = w.file("tampered.cert", &(tampered.join("\n") + "\n"));

    let out = run(&[Path::new("check"), &spec, &tampered_path]);
    assert_eq!(exit_code(&out), 30);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("check: invalid"));
    assert!(stdout.contains("check.reason: chain-broken"), "{stdout}");
}

#[test]
fn check_digest_mismatch_is_exit_31() {
    let w = Workdir::new();
    let spec_a = w.file("a.ellspec", "n: 1\nd: 3\nkind: l1\np: 2\nr: 0\n");
    let spec_b = w.file("b.ellspec", "n: 1\nd: 3\nkind: l1\np: 5/2\nr: 0\n");
    let cert = w.path("a.cert");
    let out = run(&[Path::new("certify"), &spec_a, Path::new("--out"), &cert]);
    assert_eq!(exit_code(&out), 0);
    let out = run(&[Path::new("check"), &spec_b, &cert]);
    assert_eq!(exit_code(&out), 31);
}

#[test]
fn counterexample_constructs_for_subcritical() {
    let w = Workdir::new();
    let spec = w.file("sub.ellspec", SUBCRITICAL_H01);
    let out = ellreg(&[
        "counterexample",
        spec.to_str().unwrap(),
        "--digits",
        "30",
        "--radii",
        "50",
    ]);
    assert_eq!(exit_code(&out), 0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("c.1.exact: 16105100000/1"), "{stdout}");
    assert!(stdout.contains("membership.solution_in_kind: true"));
    assert!(stdout.contains("membership.1.in_linf: false"));

    let scalar = w.file("scalar5.ellspec", SCALAR_L1_D5);
    let out = ellreg(&["counterexample", scalar.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("c.1.exact: 2/1"), "{stdout}");
    assert!(stdout.contains("membership.1.in_h01: false"));
    assert!(stdout.contains("membership.1.in_l1: true"));
}

#[test]
fn counterexample_preconditions_exit_40() {
    let w = Workdir::new();
    // supercritical spec: no singular solution below the threshold
    let sup = w.file("sup.ellspec", SUPERCRITICAL);
    let out = ellreg(&["counterexample", sup.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 40);

    // subcritical very-weak spec: boundary-cone construction out of scope
    let l1d = w.file(
        "l1d.ellspec",
        "n: 2\nd: 3\nkind: l1delta\np: 0 2\np: 3 0\nr: 0 0\n",
    );
    let out = ellreg(&["counterexample", l1d.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 40);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("Green-function"), "{stderr}");
}

#[test]
fn reports_and_certificates_are_byte_deterministic() {
    let w = Workdir::new();
    let spec = w.file("sup.ellspec", SUPERCRITICAL);

    let a = ellreg(&["analyze", spec.to_str().unwrap()]);
    let b = ellreg(&["analyze", spec.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);

    let cert_a = w.path("a.cert");
    let cert_b = w.path("b.cert");
    run(&[Path::new("certify"), &spec, Path::new("--out"), &cert_a]);
    run(&[Path::new("certify"), &spec, Path::new("--out"), &cert_b]);
    assert_eq!(fs::read(&cert_a).unwrap(), fs::read(&cert_b).unwrap());

    let ca = ellreg(&["counterexample", w.file("sub.ellspec", SUBCRITICAL_H01).to_str().unwrap()]);
    let cb = ellreg(&["counterexample", w.path("sub.ellspec").to_str().unwrap()]);
    assert_eq!(ca.stdout, cb.stdout);
}

#[test]
fn certify_without_out_prints_the_document() {
    let w = Workdir::new();
    let spec = w.file("scalar.ellspec", "n: 1\nd: 3\nkind: l1\np: 2\nr: 0\n");
    let out = ellreg(&["certify", spec.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("certificate: bootstrap-v1\n"));
    assert!(stdout.contains("final: 0/1"));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("certify.steps:"));
}
