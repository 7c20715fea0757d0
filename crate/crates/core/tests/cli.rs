use std::process::Command;

use fqgeom::cli;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["fqgeom"];
    full.extend_from_slice(args);
    let code = cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn verify_exit_codes() {
    let (code, out, _) = run(&["verify", "--q", "3,5,7", "--d", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("suite,q,d,case,lhs,rhs,pass,note\n"));
    assert!(!out.contains(",false,"));
    let (code, _, err) = run(&["verify", "--q", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("not prime"));
    let (code, _, _) = run(&["verify", "--suite", "bogus"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["verify", "--q", "3", "--bogus-flag"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_identity_suite_prints_documented_example() {
    let (code, out, _) = run(&["verify", "--q", "3", "--d", "2", "--suite", "identity2"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.contains("two points") && l.contains(",40,40,true,")));
}

#[test]
fn count_rows_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.txt");
    let mut text = String::from("3 2\n");
    for i in 0..3 {
        for j in 0..3 {
            text.push_str(&format!("{i} {j}\n"));
        }
    }
    std::fs::write(&full, text).unwrap();
    let (code, out, _) = run(&["count", full.to_str().unwrap(), "--k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().nth(1).unwrap(), "3,2,1,9,3,,3,1,2");

    let two = dir.path().join("two.json");
    std::fs::write(&two, r#"{"q": 3, "d": 2, "points": [[0, 0], [1, 0]]}"#).unwrap();
    let inventory = dir.path().join("classes.csv");
    let (code, out, _) = run(&[
        "count",
        two.to_str().unwrap(),
        "--k",
        "1",
        "--mode",
        "exact",
        "--format",
        "json",
        "--inventory",
        inventory.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let rows: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rows[0]["t_fast"], 2);
    assert_eq!(rows[0]["t_exact"], 2);
    let inv = std::fs::read_to_string(&inventory).unwrap();
    assert!(inv.starts_with("class_id,representative_entries,mu,stabilizer_size,degenerate\n"));
    assert_eq!(inv.lines().count(), 3);

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3 2\n# comment\n0 0\n1 7\n").unwrap();
    let (code, _, err) = run(&["count", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn scan_is_reproducible_and_checks_sizes() {
    let args = ["scan", "--q", "7", "--d", "2", "--k", "2", "--sizes", "10,20,49", "--trials", "5", "--seed", "7"];
    let (code, a, _) = run(&args);
    assert_eq!(code, 0);
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
    let mut with_workers = args.to_vec();
    with_workers.extend(["--workers", "3"]);
    assert_eq!(run(&with_workers).1, a);
    assert_eq!(a.lines().count(), 1 + 5 + 5 + 1);
    assert!(a.starts_with("q,d,k,set_size,trial,seed,t_count,s_count,elapsed_ms\n"));
    let (code, _, err) = run(&["scan", "--q", "3", "--sizes", "10"]);
    assert_eq!(code, 2);
    assert!(err.contains("10"));
}

#[test]
fn construct_reports() {
    let (code, out, _) = run(&["construct", "--variant", "odd", "--q", "7", "--d", "3", "--len", "3"]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["name"], "sharpness_odd");
    assert_eq!(report["set_size"], 21);
    let (code, _, _) = run(&["construct", "--variant", "nullprod", "--q", "7"]);
    assert_eq!(code, 2);
    let (code, out, _) = run(&["construct", "--variant", "minkowski", "--q", "7", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("check,pass\n"));
    let (code, _, _) = run(&["construct", "--variant", "simplex", "--q", "13", "--eps", "0.9"]);
    assert_eq!(code, 2);
}

#[test]
fn binary_uses_environment_worker_count() {
    let exe = env!("CARGO_BIN_EXE_fqgeom");
    let args = ["scan", "--q", "5", "--sizes", "5,10", "--trials", "3"];
    let one = Command::new(exe).args(args).env("FQGEOM_WORKERS", "1").output().unwrap();
    let many = Command::new(exe).args(args).env("FQGEOM_WORKERS", "4").output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    let bad = Command::new(exe).args(args).env("FQGEOM_WORKERS", "lots").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.json");
    let (code, out, _) = run(&["verify", "--q", "3", "--suite", "sphere", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let rows: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 2);
}
