use std::process::Command;

use num_rational::Rational64;
use serde_json::Value;

use maeda_cli::{decimal_string, parse_rational, run};

fn maeda(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_maeda")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out) = maeda(args);
    assert_eq!(code, 0, "{args:?}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn trace_output_is_exact() {
    let (code, out) = maeda(&["trace", "--k", "12", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"k\":12,\"n\":1,\"trace\":\"1\"}\n");
    assert_eq!(json(&["trace", "--k", "12", "--n", "2"])["trace"], "-24");
}

#[test]
fn bound_report_dominates_pair_count() {
    let v = json(&["bound", "--k", "24", "--N", "1", "--p", "2"]);
    assert_eq!(v["pair_count_exact"], 2);
    assert!(v["key_rhs"].as_f64().unwrap() >= 2.0);
    let v = json(&["bound", "--k", "24", "--N", "1", "--p", "2", "--M", "5", "--delta", "1/10"]);
    assert_eq!(v["m_star"], 5);
    assert_eq!(v["delta"], "1/10");
}

#[test]
fn maeda_lines() {
    let (code, out) = maeda(&["maeda", "--k-range", "12:36", "--p", "2"]);
    assert_eq!(code, 0);
    let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 13);
    for l in &lines {
        assert_eq!(l["squarefree"], true);
        assert_eq!(l["pair_count"], l["dim"]);
    }
}

#[test]
fn hecke_and_basis() {
    let v = json(&["hecke", "--k", "24", "--n", "2"]);
    assert_eq!(v["charpoly"]["coeffs"], serde_json::json!(["-20468736", "-1080", "1"]));
    assert_eq!(v["cayley_hamilton"], true);
    let v = json(&["basis", "--k", "24", "--prec", "4"]);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["forms"][0], serde_json::json!(["0", "1", "0", "195660"]));
}

#[test]
fn angles_and_moments() {
    let v = json(&["angles", "--k", "12", "--p", "2"]);
    assert_eq!(v["eigenvalues"], serde_json::json!(["-24"]));
    let v = json(&["moments", "--k", "36", "--p", "3", "--m", "4"]);
    for row in v["moments"].as_array().unwrap() {
        let (e, t) = (row["empirical"].as_f64().unwrap(), row["trace_formula"].as_f64().unwrap());
        assert!((e - t).abs() <= 1e-9 * t.abs().max(1.0));
        assert!(row["deviation"].as_f64().unwrap() <= row["lemma1_bound"].as_f64().unwrap());
    }
}

#[test]
fn selberg_check_passes() {
    let v = json(&["selberg", "--a", "-1/3", "--b", "0.1", "--M", "50", "--check"]);
    assert_eq!(v["check"]["pass"], true);
    let v = json(&["selberg", "--a", "-1/4", "--b", "1/4", "--M", "3"]);
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 7);
}

#[test]
fn mc_json_and_csv() {
    let v = json(&["mc", "--p", "2", "--dims", "10,100", "--trials", "100", "--seed", "3"]);
    assert_eq!(v["per_dim"].as_array().unwrap().len(), 2);
    let (code, out) = maeda(&["mc", "--p", "2", "--dims", "10,100", "--trials", "100", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("dim,trial,deviation"));
    assert_eq!(out.lines().count(), 201);
}

#[test]
fn exit_codes() {
    assert_eq!(maeda(&["trace", "--k", "13", "--n", "1"]).0, 1);
    assert_eq!(maeda(&["angles", "--k", "12", "--p", "4"]).0, 1);
    assert_eq!(maeda(&["nonsense"]).0, 1);
    assert_eq!(maeda(&["trace", "--k", "12"]).0, 1);
    assert_eq!(maeda(&["selberg", "--a", "1/4", "--b", "-1/4", "--M", "3"]).0, 1);
    assert_eq!(maeda(&["mc", "--p", "2", "--dims", "100,10"]).0, 1);
    assert_eq!(maeda(&["--help"]).0, 0);
}

#[test]
fn reproducible_and_file_output() {
    let args = ["mc", "--p", "5", "--dims", "10,50,100", "--trials", "100", "--m", "3", "--seed", "9"];
    assert_eq!(maeda(&args), maeda(&args));
    let path = std::env::temp_dir().join(format!("maeda-cli-test-{}.json", std::process::id()));
    let mut buf = Vec::new();
    let mut with_output: Vec<&str> = vec!["maeda"];
    with_output.extend(args);
    with_output.extend(["--output", path.to_str().unwrap()]);
    assert_eq!(run(with_output, &mut buf), 0);
    assert!(buf.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), maeda(&args).1);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn helpers() {
    assert_eq!(parse_rational("-0.25"), Ok(Rational64::new(-1, 4)));
    assert_eq!(parse_rational("3/6"), Ok(Rational64::new(1, 2)));
    assert_eq!(parse_rational("2"), Ok(Rational64::new(2, 1)));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("abc").is_err());
    let r = num_rational::BigRational::new((-7).into(), 4.into());
    assert_eq!(decimal_string(&r, 3), "-1.75");
    let r = num_rational::BigRational::new(1.into(), 3.into());
    assert_eq!(decimal_string(&r, 5), "0.33333");
}
