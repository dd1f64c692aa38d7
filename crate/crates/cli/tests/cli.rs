use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn galcon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galcon")).args(args).output().expect("run galcon")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/while").join(name)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn int_table(lo: i64, hi: i64, f: impl Fn(i64) -> i64) -> String {
    let entries: Vec<String> = (lo..=hi).map(|x| format!("\"{x}\": \"{}\"", f(x).clamp(lo, hi))).collect();
    format!("{{\"arity\": 1, \"over\": \"concrete\", \"table\": {{{}}}}}", entries.join(", "))
}

#[test]
fn analyze_prints_the_loop_invariant() {
    let o = galcon(&["analyze", p(&fixture("loop_invariant.while")), "--domain", "signconst_pcgc", "--bound", "64"]);
    assert!(o.status.success(), "{o:?}");
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "L2: {x ↦ >0, y ↦ 2}"), "{out}");
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn analyze_json_mirrors_the_result() {
    let o = galcon(&["analyze", p(&fixture("squaring.while")), "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["points"][1]["kind"], "loop_head");
    assert_eq!(v["points"][1]["state"]["x"], ">0");
    assert_eq!(v["iterations"], 2);
}

#[test]
fn analyze_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.while");
    fs::write(&bad, "while x < do {}").unwrap();
    let o = galcon(&["analyze", p(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1:11"));

    let good = fixture("squaring.while");
    assert_eq!(galcon(&["analyze", p(&good), "--domain", "sign_pgi"]).status.code(), Some(3));
    assert_eq!(galcon(&["analyze", p(&good), "--domain", "sign_cgc"]).status.code(), Some(3));
    assert_eq!(galcon(&["analyze", p(&good), "--domain", "nope"]).status.code(), Some(3));
}

#[test]
fn builtin_transform_and_check() {
    let dir = TempDir::new().unwrap();
    let parity = dir.path().join("parity.json");
    assert!(galcon(&["builtin", "parity", "--bound", "4", "--emit", p(&parity)]).status.success());
    let o = galcon(&["check", p(&parity)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("CGC: yes"));

    let pgc = dir.path().join("pgc.json");
    assert!(galcon(&["transform", "cgc-pgc", p(&parity), "-o", p(&pgc)]).status.success());
    let o = galcon(&["check", p(&pgc)]);
    assert!(stdout(&o).contains("partitioning: Pgc"), "{}", stdout(&o));
    let back = galcon(&["transform", "pgc-cgc", p(&pgc)]);
    assert!(back.status.success());
    assert!(stdout(&back).contains("\"kind\": \"cgc\""));

    let o = galcon(&["transform", "pgc-cgc", p(&parity)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn check_reports_the_witness() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("plustop.json");
    assert!(galcon(&["builtin", "plustop_cgp", "--bound", "4", "--emit", p(&f)]).status.success());
    let out = stdout(&galcon(&["check", p(&f)]));
    assert!(out.contains("CGC: no, (1, ⊤)"), "{out}");
    assert!(out.contains("CGP: yes"), "{out}");
}

#[test]
fn bca_of_squaring_on_sign() {
    let dir = TempDir::new().unwrap();
    let sign = dir.path().join("sign.json");
    let sq = dir.path().join("sq.json");
    assert!(galcon(&["builtin", "sign_pgi", "--bound", "4", "--emit", p(&sign)]).status.success());
    fs::write(&sq, int_table(-4, 4, |x| x * x)).unwrap();
    let o = galcon(&["bca", p(&sign), p(&sq)]);
    assert!(o.status.success(), "{o:?}");
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["over"], "abstract");
    assert_eq!(v["table"]["<0"], ">0");
    assert_eq!(v["table"]["ℤ"], "≥0");
}

#[test]
fn soundcheck_parity_successor() {
    let dir = TempDir::new().unwrap();
    let parity = dir.path().join("parity.json");
    let succ = dir.path().join("succ.json");
    let flip = dir.path().join("flip.json");
    let same = dir.path().join("same.json");
    assert!(galcon(&["builtin", "parity", "--bound", "2", "--emit", p(&parity)]).status.success());
    fs::write(&succ, r#"{"arity": 1, "over": "concrete", "table": {"-2": "-1", "-1": "0", "0": "1", "1": "-2"}}"#).unwrap();
    fs::write(&flip, r#"{"arity": 1, "over": "abstract", "table": {"even": "odd", "odd": "even"}}"#).unwrap();
    fs::write(&same, r#"{"arity": 1, "over": "abstract", "table": {"even": "even", "odd": "odd"}}"#).unwrap();
    let o = galcon(&["soundcheck", p(&parity), p(&succ), p(&flip), "--variant", "all"]);
    assert!(o.status.success(), "{o:?}");
    let o = galcon(&["soundcheck", p(&parity), p(&succ), p(&same), "--variant", "μη"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("sound (μη): no"), "{}", stdout(&o));
    let o = galcon(&["soundcheck", p(&parity), p(&succ), p(&flip), "--variant", "ηη", "--complete"]);
    assert!(o.status.success());
}

#[test]
fn fuzz_counts_and_guards() {
    let o = galcon(&["fuzz", "cgc", "--cases", "25", "--seed", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "cgc: 25 passed, 0 failed");
    assert!(galcon(&["fuzz", "sound-pair", "--cases", "10"]).status.success());
    assert_eq!(galcon(&["fuzz", "pgc", "--amax", "11"]).status.code(), Some(1));
}
