use std::process::Command;

use clap::Parser;
use serde_json::Value;

use fregcheck::cli::{run, Cli, EXIT_BUDGET, EXIT_INVALID_INSTANCE, EXIT_OK, EXIT_USAGE};
use fregcheck::family::{VerificationReport, CLAIMS};

fn cli(args: &[&str]) -> (String, i32) {
    let parsed = Cli::try_parse_from(std::iter::once("fregcheck").chain(args.iter().copied())).unwrap();
    let o = run(&parsed);
    (o.output, o.status)
}

fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("timings");
            map.values_mut().for_each(strip_timings);
        }
        Value::Array(xs) => xs.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

#[test]
fn flagship_lemma() {
    let (out, status) = cli(&["verify", "lemma-4.2", "--p", "17", "--m", "4", "--n", "3", "--k", "2"]);
    assert_eq!(status, EXIT_OK);
    let reports: Vec<VerificationReport> = serde_json::from_str(&out).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].claim, "lemma-4.2");
    assert_eq!(reports[0].verdict.to_string(), "verified");
}

#[test]
fn report_schema() {
    let (out, _) = cli(&["verify", "rem-4.1-nzd", "--p", "5", "--m", "4", "--n", "3"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let obj = v[0].as_object().unwrap();
    for key in ["claim", "instance", "verdict", "witnesses", "stats", "timings"] {
        assert!(obj.contains_key(key), "{key}");
    }
    assert_eq!(v[0]["instance"], serde_json::json!({"p": 5, "m": 4, "n": 3}));
}

#[test]
fn deterministic_output() {
    let args = ["verify", "prop-4.4-not-fregular", "--p", "5", "--m", "4", "--n", "3"];
    let mut a: Value = serde_json::from_str(&cli(&args).0).unwrap();
    let mut b: Value = serde_json::from_str(&cli(&args).0).unwrap();
    strip_timings(&mut a);
    strip_timings(&mut b);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn sweep_rows() {
    let (out, status) = cli(&["sweep", "--m", "4", "--n", "3", "--primes", "3,5,7,11,13"]);
    assert_eq!(status, EXIT_OK);
    let reports: Vec<VerificationReport> = serde_json::from_str(&out).unwrap();
    assert_eq!(reports.len(), 5);
    let (text, _) = cli(&["sweep", "--m", "4", "--n", "3", "--primes", "2,5", "--format", "text"]);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(1).unwrap().contains("rejected"));
}

#[test]
fn divisor_calculators() {
    let (out, status) = cli(&["divisor", "dims", "--E", "1/2@VX,1/2@VY,1/4@VXY", "--up-to", "20"]);
    assert_eq!(status, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["calc"], "divisor dims");
    assert_eq!(v[0]["result"].as_array().unwrap().len(), 21);

    let (out, _) = cli(&["divisor", "identity", "--E", "1/2@VX,1/2@VY,1/4@VXY"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["result"], true);

    let (out, _) = cli(&["divisor", "floor", "--E", "3/2@P, -1/3@Q"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["result"]["floor"], "1@P, -1@Q");
    assert_eq!(v[0]["result"]["fractional_part"], "1/2@P, 2/3@Q");
    assert_eq!(v[0]["result"]["class"]["h0"], 1);

    let (_, status) = cli(&["divisor", "dims", "--E", "1/2@P, -1/2@Q"]);
    assert_ne!(status, EXIT_OK);
    let (_, status) = cli(&["divisor", "dims", "--E", "1/2"]);
    assert_eq!(status, EXIT_USAGE);
}

#[test]
fn gb_calculators() {
    let (out, _) = cli(&["gb", "basis", "--vars", "x,y", "--ideal", "x^2, x*y + y^2", "--order", "lex", "--p", "5"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["result"], serde_json::json!(["y^3", "x*y + y^2", "x^2"]));
    let (out, _) = cli(&["gb", "member", "--m", "4", "--n", "3", "--p", "17", "--f", "b^3*t^3"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["result"], false);
    let (out, _) = cli(&["gb", "dim", "--m", "4", "--n", "3", "--p", "5"]);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()[0]["result"], 3);
    let (out, _) = cli(&["gb", "hilbert", "--n", "2", "--up-to", "2"]);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()[0]["result"], serde_json::json!([1, 1, 3]));
    let (_, status) = cli(&["gb", "dim", "--vars", "x", "--ideal", "y"]);
    assert_eq!(status, EXIT_USAGE);
}

#[test]
fn exit_statuses() {
    let (_, s) = cli(&["verify", "lemma-4.2", "--p", "5", "--m", "3", "--n", "3", "--k", "1"]);
    assert_eq!(s, EXIT_INVALID_INSTANCE);
    let (_, s) = cli(&["verify", "thm-1.1", "--p", "5", "--m", "3", "--n", "3"]);
    assert_eq!(s, EXIT_INVALID_INSTANCE);
    let (_, s) = cli(&["--budget", "10", "verify", "lemma-4.2", "--p", "5", "--m", "4", "--n", "3", "--k", "2"]);
    assert_eq!(s, EXIT_BUDGET);
    let (_, s) = cli(&["verify", "nonexistent"]);
    assert_eq!(s, EXIT_USAGE);
    let (_, s) = cli(&["verify", "prop-4.4-not-fpure", "--p", "4", "--m", "5", "--n", "3"]);
    assert_eq!(s, EXIT_USAGE);
    assert!(Cli::try_parse_from(["fregcheck", "verify"]).is_err());
}

#[test]
fn catalog_listing() {
    let (out, _) = cli(&["list-claims"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, CLAIMS.iter().map(|c| c.id).collect::<Vec<_>>());
    assert!(ids.contains(&"lemma-4.2") && ids.contains(&"sec6-singular-locus"));
}

#[test]
fn binary_writes_out_file() {
    let dir = std::env::temp_dir().join(format!("fregcheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let status = Command::new(env!("CARGO_BIN_EXE_fregcheck"))
        .args(["verify", "lemma-4.2-replay", "--m", "4", "--n", "3", "--k", "2", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let reports: Vec<VerificationReport> = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(reports[0].claim, "lemma-4.2-replay");

    let out = Command::new(env!("CARGO_BIN_EXE_fregcheck"))
        .args(["verify", "rem-4.1-hsop", "--p", "5", "--m", "3", "--n", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INVALID_INSTANCE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hypothesis"));
    let out = Command::new(env!("CARGO_BIN_EXE_fregcheck")).args(["bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    std::fs::remove_dir_all(&dir).ok();
}
