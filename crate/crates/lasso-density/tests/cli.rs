use std::path::PathBuf;
use std::process::Command;

use lasso_density::cli::{exit, resolve_cap, run};
use lasso_density::report::CSV_HEADER;
use lasso_density_core::EnumerationCap;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    invoke_env(args, None)
}

fn invoke_env(args: &[&str], cap: Option<&str>) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("lasso-density").chain(args.iter().copied());
    let code = run(argv, cap, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn count_reports_exact_rate() {
    let (code, out, _) = invoke(&["count", "--formula", "F G p", "--ap", "p", "--n", "3"]);
    assert_eq!(code, exit::OK);
    assert!(out.contains("count: 7\n") && out.contains("total: 24\n") && out.contains("rate: 7/24"), "{out}");
    let (_, csv, _) = invoke(&["count", "--formula", "F G p", "--ap", "p", "--n", "3", "--format", "csv"]);
    assert_eq!(csv, format!("{CSV_HEADER}\n3,7,24,7,24,0.291666666667\n"));
}

#[test]
fn curve_csv_is_stable_across_runs_and_jobs() {
    let args = ["curve", "--formula", "q R p", "--ap", "p,q", "--n-max", "5", "--format", "csv"];
    let (code, first, _) = invoke(&args);
    assert_eq!(code, exit::OK);
    let lines: Vec<&str> = first.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines[2], "2,12,32,3,8,0.375000000000");
    assert_eq!(lines[5], "5,1710,5120,171,512,0.333984375000");
    for jobs in ["1", "2", "5"] {
        let mut with_jobs = args.to_vec();
        with_jobs.extend(["--jobs", jobs]);
        assert_eq!(invoke(&with_jobs).1, first);
    }
}

#[test]
fn asymptotic_reports_flags() {
    let (code, out, _) = invoke(&["asymptotic", "--automaton", &fixture("aub.aut")]);
    assert_eq!(code, exit::OK);
    assert!(out.contains("density: 2/3 (0.666666666667)"), "{out}");
    assert!(out.contains("positive: true") && out.contains("below_one: true"));
    let (code, out, _) = invoke(&["asymptotic", "--automaton", &fixture("dup_initial.aut")]);
    assert_eq!(code, exit::OK);
    assert!(out.contains("below_one: unknown (nondeterministic)"), "{out}");
    assert!(out.contains("density: unknown (nondeterministic)"));
}

#[test]
fn compose_prints_the_reduction() {
    let f = "(a | X b) & (X X X (b & a) | F a) | (G b & F (a & X b))";
    let (code, out, _) = invoke(&["compose", "--formula", f, "--ap", "a,b"]);
    assert_eq!(code, exit::OK);
    assert!(out.contains("zero disjunct dropped"), "{out}");
    assert!(out.contains("one disjunct absorbs"));
    assert!(out.contains("residual a | X b"));
    assert!(out.ends_with("density: 3/4 (0.750000000000)\n"));
}

#[test]
fn classify_reports_both_classes() {
    let (_, out, _) = invoke(&["classify", "--formula", "G (a & X b)", "--ap", "a,b"]);
    assert!(out.contains("syntactic: invariant\n") && out.contains("convergence: 0\n"), "{out}");
    let (_, out, _) = invoke(&["classify", "--formula", "a U b", "--ap", "a,b"]);
    assert!(out.contains("not-in-fragment") && out.contains("convergence: unknown: a U b"), "{out}");
}

#[test]
fn partition_and_oscillate() {
    let (code, out, _) = invoke(&["partition", "--automaton", &fixture("qrp.aut"), "--n", "3", "--format", "csv"]);
    assert_eq!(code, exit::OK);
    assert!(out.contains("3,loop-model,3,192,1,64,"), "{out}");
    assert!(out.contains("3,loop-non-model,0,192,"));
    let (code, out, _) = invoke(&["oscillate", "--intervals", "4:6,12:16", "--n-max", "6", "--format", "csv"]);
    assert_eq!(code, exit::OK);
    assert!(out.contains("\n5,13,160,13,160,"), "{out}");
}

#[test]
fn crosscheck_exit_codes() {
    let (code, out, _) = invoke(&["crosscheck", "--formula", "X p", "--automaton", &fixture("xp.aut"), "--n-max", "6"]);
    assert_eq!(code, exit::OK, "{out}");
    assert!(out.contains("disagreements: 0"));
    let (code, out, _) = invoke(&["crosscheck", "--formula", "F p", "--automaton", &fixture("xp.aut"), "--n-max", "3"]);
    assert_eq!(code, exit::MISMATCH);
    assert!(out.contains("first disagreement"), "{out}");
    let (code, _, err) = invoke(&[
        "crosscheck", "--formula", "X p", "--ap", "q", "--automaton", &fixture("xp.aut"), "--n-max", "2",
    ]);
    assert_eq!(code, exit::VALIDATION, "{err}");
}

#[test]
fn error_exit_codes() {
    assert_eq!(invoke(&["count", "--ap", "a"]).0, exit::USAGE);
    assert_eq!(invoke(&["frobnicate"]).0, exit::USAGE);
    assert_eq!(invoke(&["count", "--formula", "a U", "--ap", "a", "--n", "2"]).0, exit::VALIDATION);
    assert_eq!(invoke(&["count", "--formula", "c", "--ap", "a", "--n", "2"]).0, exit::VALIDATION);
    assert_eq!(invoke(&["count", "--formula", "a", "--ap", "a", "--n", "0"]).0, exit::VALIDATION);
    assert_eq!(invoke(&["asymptotic", "--automaton", "/nonexistent.aut"]).0, exit::VALIDATION);
    assert_eq!(invoke(&["oscillate", "--intervals", "6:4", "--n-max", "3"]).0, exit::VALIDATION);
    let (code, _, err) = invoke(&["count", "--formula", "a", "--ap", "a", "--n", "40"]);
    assert_eq!(code, exit::CAP);
    assert!(err.contains("exceeds the cap"));
    let (code, _, _) = invoke(&["help"]);
    assert_eq!(code, exit::OK);
}

#[test]
fn cap_precedence() {
    assert_eq!(resolve_cap(Some(5), Some("7")).unwrap(), EnumerationCap(5));
    assert_eq!(resolve_cap(None, Some("7")).unwrap(), EnumerationCap(7));
    assert_eq!(resolve_cap(None, None).unwrap(), EnumerationCap::DEFAULT);
    assert_eq!(resolve_cap(None, Some("many")).unwrap_err().code, exit::USAGE);
    let args = ["count", "--formula", "a", "--ap", "a", "--n", "4"];
    assert_eq!(invoke_env(&args, Some("10")).0, exit::CAP);
    let mut flagged = args.to_vec();
    flagged.extend(["--cap", "64"]);
    assert_eq!(invoke_env(&flagged, Some("10")).0, exit::OK);
}

#[test]
fn missing_transitions_need_the_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("partial.aut");
    std::fs::write(
        &path,
        "alphabet: a\nstates: 1\nmode: deterministic\nstart: 0\ncolor: 0 2\ntrans: 0 {a} 0\n",
    )
    .unwrap();
    let p = path.to_string_lossy();
    let (code, _, err) = invoke(&["asymptotic", "--automaton", &p]);
    assert_eq!(code, exit::VALIDATION);
    assert!(err.contains("no transition from state 0 on {}"), "{err}");
    let (code, out, _) = invoke(&["asymptotic", "--automaton", &p, "--complete-with-sink"]);
    assert_eq!(code, exit::OK);
    assert!(out.contains("density: 0 "), "{out}");
}

#[test]
fn binary_reads_the_cap_variable() {
    let bin = env!("CARGO_BIN_EXE_lasso-density");
    let status = Command::new(bin)
        .args(["count", "--formula", "a", "--ap", "a", "--n", "4"])
        .env("LASSO_DENSITY_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(exit::CAP));
    let ok = Command::new(bin)
        .args(["count", "--formula", "a", "--ap", "a", "--n", "4"])
        .env_remove("LASSO_DENSITY_CAP")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(exit::OK));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "n: 4\ncount: 32\ntotal: 64\nrate: 1/2 (0.500000000000)\n");
}
