use std::process::{Command, Output};
use std::time::Instant;

use qd_core::oracles::verify::SweepReport;
use qd_core::relations::Relation;
use qd_core::selfcheck::SuiteReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mzv-qd")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&out)))
}

#[test]
fn qn_renders() {
    let out = run(&["qn", "--n", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("y"));
    assert_eq!(stdout(&run(&["qn", "--n", "2"])).lines().next(), Some("yx + (1+c)yy"));
    assert_eq!(stdout(&run(&["qn", "--n", "2", "--c", "0"])).lines().next(), Some("yx + yy"));
    assert_eq!(stdout(&run(&["qn", "--n", "2"])).lines().nth(1), Some("[2] + (1+c)[1,1]"));
    assert_eq!(run(&["qn", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["qn", "--n", "2", "--c", "1/0"]).status.code(), Some(2));

    let v = json(&["qn", "--n", "2", "--c", "-2/3"]);
    assert_eq!(v["c"], "-2/3");
    assert_eq!(v["expansion"], "yx + (1/3)yy");
    assert_eq!(v["terms"][1]["index"], "(1,1)");
}

#[test]
fn relations_listing() {
    let v = json(&["relations", "--family", "qd", "--weight", "3", "--n", "1"]);
    let rels: Vec<Relation> = serde_json::from_value(v).unwrap();
    assert_eq!(rels.len(), 2);

    let out = run(&["relations", "--weight", "2", "--n", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("qd n=1 w=yx: ζ(1,2) - ζ(3) = 0\n"));

    let out = run(&["relations", "--weight", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("weight"));
    assert_eq!(run(&["relations", "--family", "nope"]).status.code(), Some(2));

    let expanded: Vec<Relation> =
        serde_json::from_value(json(&["relations", "--weight", "2", "--n", "2", "--expand-c"])).unwrap();
    assert_eq!(expanded.iter().map(|r| r.c_power).collect::<Vec<_>>(), vec![Some(0), Some(1)]);

    let kaw: Vec<Relation> = serde_json::from_value(json(&["relations", "--family", "kawashima", "--weight", "..2"])).unwrap();
    assert_eq!(kaw.len(), 6);
}

#[test]
fn relation_output_round_trips() {
    let v = json(&["relations", "--weight", "2..4", "--n", "1..3"]);
    let rels: Vec<Relation> = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&rels).unwrap(), v);
}

#[test]
fn selfcheck_small_bounds() {
    let t = Instant::now();
    let out = run(&["selfcheck", "--degree", "3", "--n", "2"]);
    assert!(t.elapsed().as_secs_f64() < 1.0);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).lines().last().unwrap().ends_with("0 failures"));

    let v = json(&["selfcheck", "--degree", "3", "--n", "2"]);
    assert_eq!(v["passed"], true);
    let suites: Vec<SuiteReport> = serde_json::from_value(v["suites"].clone()).unwrap();
    assert!(suites.iter().all(|s| s.cases > 0));
}

#[test]
fn selfcheck_detects_injected_fault() {
    let out = run(&["selfcheck", "--degree", "3", "--n", "2", "--inject-fault", "theta-sign"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn selfcheck_default_bounds() {
    let out = run(&["selfcheck"]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn verify_numeric() {
    let out = run(&["verify", "numeric", "--weight", "..4", "--n", "1..2", "--c", "0", "--c", "1", "--trunc", "100000", "--tol", "1e-3"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("28 checks, 28 passed, 0 failed"));
    assert_eq!(run(&["verify", "numeric", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "numeric", "--trunc", "5"]).status.code(), Some(2));

    // plain truncation leaves tails above 1e-3 for the deeper indices
    let out = run(&["verify", "numeric", "--weight", "..4", "--n", "1..2", "--method", "truncated"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["verify", "numeric", "--weight", "2", "--n", "1", "--c", "0", "--method", "truncated"]);
    assert!(out.status.success());
}

#[test]
fn verify_finite() {
    let out = run(&["verify", "finite", "--weight", "..4", "--n", "1..2", "--primes", "11..97", "--c", "0", "--c", "1"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("0 failed, 0 excluded"));

    let v = json(&["verify", "finite", "--weight", "2", "--n", "1", "--primes", "3..11", "--c", "0"]);
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["summary"]["excluded_primes"], serde_json::json!([3, 5]));
    let sweep: SweepReport = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(sweep.reports.len(), 2);
    assert!(sweep.excluded.iter().all(|e| e.prime <= e.bound));

    assert_eq!(run(&["verify", "finite", "--family", "kawashima"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "finite", "--primes", "24..28"]).status.code(), Some(2));
    assert!(run(&["verify", "stuffle", "--weight", "3", "--primes", "11..30"]).status.success());
    assert!(run(&["verify", "phi", "--weight", "4", "--primes", "11..30"]).status.success());
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let args = ["verify", "finite", "--weight", "..3", "--n", "1..2", "--c", "3/5", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);

    let dir = std::env::temp_dir().join(format!("mzv-qd-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rels.txt");
    let out = run(&["relations", "--weight", "2", "--n", "1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&run(&["relations", "--weight", "2", "--n", "1"])));
    std::fs::remove_dir_all(&dir).unwrap();
}
