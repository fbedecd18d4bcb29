use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_semicech");

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(BIN).args(args).output().expect("spawn semicech");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut v = args.to_vec();
    v.extend(["--format", "json"]);
    let r = run(&v);
    assert!(r.stderr.is_empty(), "{}", r.stderr);
    (r.code, serde_json::from_str(&r.stdout).expect("report is json"))
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn result<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == name)
        .map(|e| &e["value"])
        .unwrap_or_else(|| panic!("no result {name} in {report}"))
}

fn all_passed(report: &Value) -> bool {
    let ledger = report["ledger"].as_array().unwrap();
    !ledger.is_empty() && ledger.iter().all(|c| c["passed"] == true)
}

const BOOL_MODULE: &str = r#"{"size":2,"zero":0,"add":[[0,1],[1,1]],"scalar":[[0,0],[0,1]]}"#;

fn complex(d_plus: &str, d_minus: &str, spaces: usize) -> String {
    let spaces = vec![BOOL_MODULE; spaces].join(",");
    format!(r#"{{"ring":"boolean","spaces":[{spaces}],"d_plus":{d_plus},"d_minus":{d_minus}}}"#)
}

#[test]
fn symbolic_projective_line() {
    let (code, r) = json(&["cohomology", "--symbolic", "--n", "1", "--semiring", "qmax"]);
    assert_eq!(code, 0);
    assert_eq!(result(&r, "H^0"), "qmax");
    assert_eq!(result(&r, "H^1"), 0);
    assert_eq!(result(&r, "H^2"), 0);
    assert!(all_passed(&r));
}

#[test]
fn two_set_cover_with_constant_coefficients() {
    let dir = TempDir::new().unwrap();
    let cover = write(&dir, "cover.json", r#"{"ring":"boolean","points":2,"opens":[[0],[0,1]],"sheaf":"constant"}"#);
    let (code, r) = json(&["cohomology", "--cover", cover.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(result(&r, "H^0")["size"], 2);
    assert_eq!(result(&r, "H^1")["size"], 1);
    assert_eq!(result(&r, "global sections"), 2);
    assert!(all_passed(&r));
}

#[test]
fn picard_classifies_a_twisted_cocycle() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "f.json",
        r#"{"n":2,"entries":{"0,1":{"q":"1","exp":[2,-2,0]},"1,2":{"q":"2","exp":[0,2,-2]},"0,2":{"q":"3","exp":[2,0,-2]}}}"#,
    );
    let (code, r) = json(&["picard", "--cocycle", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(result(&r, "degree"), 2);
    assert!(all_passed(&r));

    let (code, r) = json(&["picard", "--n", "2"]);
    assert_eq!(code, 0);
    for m in -3..=3 {
        assert_eq!(result(&r, &format!("class(twisting({m}))")), m);
    }
}

#[test]
fn picard_rejects_a_broken_cocycle_law() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "f.json",
        r#"{"n":2,"entries":{"0,1":{"q":"1","exp":[2,-2,0]},"1,2":{"q":"2","exp":[0,2,-2]},"0,2":{"q":"4","exp":[2,0,-2]}}}"#,
    );
    let (code, r) = json(&["picard", "--cocycle", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(!all_passed(&r));
}

#[test]
fn picard_needs_monomial_entries() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", r#"{"n":1,"entries":{"0,1":{"q":"x","exp":[1,-1]}}}"#);
    let r = run(&["picard", "--cocycle", f.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
}

#[test]
fn primes_of_the_three_chain() {
    let (code, r) = json(&["affine", "primes", "--semiring", "chain3"]);
    assert_eq!(code, 0);
    assert_eq!(result(&r, "count"), 2);
}

#[test]
fn affine_cover_on_the_unit() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "a.json", r#"{"g":[0],"fs":[{"vars":1,"terms":[{"exp":[0],"coef":"0"}]}]}"#);
    let (code, r) = json(&["affine", "cover", "--input", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(result(&r, "outcome"), "witness");

    let g = write(&dir, "b.json", r#"{"g":[1,0],"fs":[{"vars":2,"terms":[{"exp":[0,1],"coef":"0"}]}]}"#);
    let (code, r) = json(&["affine", "cover", "--input", g.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(result(&r, "outcome"), "no witness");
}

#[test]
fn affine_contraction_is_verified() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "a.json",
        r#"{"g":[1,1],"fs":[{"vars":2,"terms":[{"exp":[1,0],"coef":"2"}]},{"vars":2,"terms":[{"exp":[0,0],"coef":"0"}]}]}"#,
    );
    for seed in ["0", "1", "7"] {
        let (code, r) = json(&["affine", "contract", "--input", f.to_str().unwrap(), "--degree", "1..2", "--seed", seed]);
        assert_eq!(code, 0);
        assert!(all_passed(&r));
    }
}

#[test]
fn golan_collapse() {
    let (code, r) = json(&["tensor", "golan", "--semiring", "boolean"]);
    assert_eq!(code, 0);
    assert_eq!(result(&r, "quotient size"), 1);
    let (code, r) = json(&["tensor", "golan", "--semiring", "zmax"]);
    assert_eq!(code, 0);
    assert_eq!(result(&r, "zmax ⊗ zmax (Golan)"), "one element");
}

#[test]
fn tensor_with_the_regular_module() {
    let (code, r) = json(&["tensor", "pr", "--semiring", "chain3"]);
    assert_eq!(code, 0);
    assert_eq!(result(&r, "tensor size"), 3);
    assert_eq!(result(&r, "unit law"), true);
}

#[test]
fn complexes_are_checked() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.json", &complex("[[0,1]]", "[[0,1]]", 2));
    let (code, r) = json(&["check", "complex", "--complex", good.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(all_passed(&r));
    let (code, r) = json(&["cohomology", "--complex", good.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(result(&r, "H^0")["size"], 2);
    assert_eq!(result(&r, "H^1")["size"], 1);
}

#[test]
fn corrupted_complex_fails_with_exit_one() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", &complex("[[0,1],[0,1]]", "[[0,0],[0,0]]", 3));
    for cmd in [&["check", "complex", "--complex"][..], &["cohomology", "--complex"][..]] {
        let mut args = cmd.to_vec();
        args.push(bad.to_str().unwrap());
        let (code, r) = json(&args);
        assert_eq!(code, 1);
        assert!(r["ledger"].as_array().unwrap().iter().any(|c| c["passed"] == false));
    }
}

#[test]
fn malformed_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let broken = write(&dir, "broken.json", r#"{"spaces": 3"#);
    let r = run(&["check", "complex", "--complex", broken.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("broken.json"));
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["check", "complex", "--complex", missing.to_str().unwrap()]).code, 2);
    assert_eq!(run(&["cohomology", "--symbolic", "--degree", "3..1"]).code, 2);
    assert_eq!(run(&["cohomology", "--symbolic", "--semiring", "z4"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "a.json",
        r#"{"g":[1,1],"fs":[{"vars":2,"terms":[{"exp":[1,0],"coef":"2"}]},{"vars":2,"terms":[{"exp":[0,0],"coef":"0"}]}]}"#,
    );
    let args = ["--format", "json", "--seed", "11", "affine", "contract", "--input", f.to_str().unwrap(), "--degree", "2"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);

    let sym = ["--format", "json", "cohomology", "--symbolic", "--n", "2"];
    assert_eq!(run(&sym).stdout, run(&sym).stdout);
    let other = run(&["--format", "json", "--seed", "12", "cohomology", "--symbolic", "--n", "2"]);
    let x: Value = serde_json::from_str(&run(&sym).stdout).unwrap();
    let y: Value = serde_json::from_str(&other.stdout).unwrap();
    assert_ne!(x["inputs_sha256"], y["inputs_sha256"]);
}

#[test]
fn human_output_lists_checks() {
    let r = run(&["affine", "primes", "--semiring", "boolean"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("[pass]"));
    assert!(r.stdout.contains("inputs sha256"));
}
