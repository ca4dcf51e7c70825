use qwalk::cli::run;
use serde_json::Value;

fn qwalk(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qwalk").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn simulate_csv() {
    let (code, out, _) = qwalk(&[
        "simulate", "--coin", "hadamard", "--state", "0.7071:0,0:0.7071", "--steps", "100",
        "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("x,prob"));
    let probs: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(probs.len(), 201);
    assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    assert!(!out.contains('\r'));
}

#[test]
fn jacobi_hadamard_rows() {
    let (code, out, _) = qwalk(&["jacobi", "--r", "0.70710678", "--c", "0", "--levels", "6"]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    for (row, expected) in rows.iter().zip([0.2928932, 0.1035534, 0.125]) {
        let gamma: f64 = row[2].parse().unwrap();
        assert!((gamma - expected).abs() < 1e-7, "{gamma} vs {expected}");
        let recovered: f64 = row[4].parse().unwrap();
        assert!((recovered - expected).abs() < 1e-7);
    }
}

#[test]
fn json_envelope() {
    let (code, out, _) = qwalk(&["moments", "--r", "0.6", "--c", "-0.5", "--max", "4", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["meta"]["command"], "moments");
    assert_eq!(v["meta"]["c"], -0.5);
    let data = v["data"].as_array().unwrap();
    assert_eq!(data.len(), 5);
    assert!(data.iter().all(|row| row["abs_diff"].as_f64().unwrap() < 1e-9));
}

#[test]
fn output_is_deterministic() {
    let args = ["stieltjes", "--gammas", "0.6,0.5,0.4", "--tail-gamma", "0.5", "--count", "9"];
    let (c1, a, _) = qwalk(&args);
    let (c2, b, _) = qwalk(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
}

#[test]
fn stieltjes_inversion_matches() {
    let (code, out, _) = qwalk(&["stieltjes", "--gammas", "2", "--tail-gamma", "1", "--count", "11"]);
    assert_eq!(code, 0);
    for line in out.lines().skip(1) {
        let diff: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(diff < 1e-6);
    }
}

#[test]
fn every_subcommand_runs() {
    let cases: [&[&str]; 7] = [
        &["density", "--r", "0.5", "--c", "1", "--count", "5"],
        &["poly", "--r", "0.7", "--c", "1", "--table", "gram", "--degree", "3"],
        &["poly", "--r", "0.7", "--table", "genfun"],
        &["poly", "--r", "0.7", "--degree", "4"],
        &["transform", "--r", "0.5", "--c", "0.3", "--count", "4", "--im", "0.5"],
        &["transform", "--gammas", "1,0.5", "--tail-gamma", "0.5", "--q0", "0.2", "--q", "0.1"],
        &["jacobi", "--r", "0.6", "--c", "0.7", "--levels", "3", "--format", "json"],
    ];
    for args in cases {
        let (code, out, err) = qwalk(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        assert!(!out.is_empty());
    }
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("qwalk-cli-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) = qwalk(&["simulate", "--steps", "2", "--output", p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn validation_errors_exit_one() {
    let cases: [&[&str]; 9] = [
        &["jacobi", "--r", "1.5"],
        &["simulate", "--steps", "3", "--bogus"],
        &["simulate", "--steps", "3", "--state", "1:0,1:0"],
        &["simulate", "--steps", "3", "--coin", "1:0,1:0,0:0,1:0"],
        &["density", "--r", "0.5", "--count", "1"],
        &["density", "--r", "0.5", "--c", "3"],
        &["stieltjes", "--r", "0.5", "--min", "-0.499", "--count", "3"],
        &["poly", "--r", "0.5", "--c", "0.3"],
        &["moments"],
    ];
    for args in cases {
        let (code, _, err) = qwalk(args);
        assert_eq!(code, 1, "{args:?}");
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn verify_reports_each_criterion() {
    let (code, out, _) = qwalk(&["verify"]);
    let lines: Vec<&str> = out.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).collect();
    assert_eq!(lines.len(), qwalk::acceptance::CRITERIA.len());
    let failing = lines.iter().any(|l| l.starts_with("FAIL"));
    assert_eq!(code, if failing { 2 } else { 0 });
}
