use std::process::Command;

use lclm_cli::app::{EXIT_HYPOTHESIS, EXIT_OK, EXIT_PARSE};
use lclm_cli::parse::parse_operator;
use lclm_core::display::fmt_operator;
use lclm_core::fieldkit::{Fq, RatField};
use lclm_core::ore::OreRing;
use lclm_core::Field;
use proptest::prelude::*;
use serde_json::Value;

fn run(args: &[&str], input: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lclm").chain(args.iter().copied());
    let code = lclm_cli::run(argv, &mut input.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args, "");
    assert_eq!(code, EXIT_OK, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn decompose_two_factors() {
    let v = json(&["decompose", "--p", "5", "--expr", "D^4+t^4", "--no-timings"]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["timings_ms"], Value::Null);
    let f = v["factors"].as_array().unwrap();
    assert_eq!(f.len(), 2);
    for x in f {
        assert_eq!(x["order"], 2);
        assert_eq!(x["indecomposable"], true);
    }
    assert_eq!(v["invariants"][0], "Y^4+t^20");
}

#[test]
fn documented_examples() {
    let v = json(&["decompose", "--p", "3", "--n", "1", "--expr", "D^2 - D", "--no-timings"]);
    assert_eq!(v["verified"], true);
    let orders: Vec<_> = v["factors"].as_array().unwrap().iter().map(|f| f["order"].as_u64().unwrap()).collect();
    assert_eq!(orders, [1, 1]);
    let v = json(&["pcurvature", "--p", "3", "--n", "1", "--expr", "D", "--no-timings"]);
    assert_eq!(v["char_poly"], "Y");
    assert_eq!(v["invariants"], serde_json::json!(["Y"]));
    let keys: Vec<_> = json(&["decompose", "--p", "3", "--expr", "D", "--verify", "--no-timings"])
        .as_object()
        .unwrap()
        .keys()
        .cloned()
        .collect();
    for k in ["input", "field", "monic_input", "char_poly", "invariants", "invariant_roots", "factors", "iso_witness", "verified", "seed", "timings_ms"] {
        assert!(keys.iter().any(|x| x == k), "missing {k}");
    }
    assert_eq!(json(&["decompose", "--p", "3", "--expr", "D", "--no-verify"])["verified"], true);
}

#[test]
fn decompose_reproducible() {
    let args = ["decompose", "--p", "3", "--expr", "D^3+t*D+1", "--seed", "7", "--no-timings"];
    let a = run(&args, "");
    let b = run(&args, "");
    assert_eq!(a.0, EXIT_OK);
    assert_eq!(a.1, b.1);
}

#[test]
fn timings_reported_by_default() {
    let v = json(&["decompose", "--p", "3", "--expr", "D^2+t"]);
    assert!(v["timings_ms"]["total"].is_number());
}

#[test]
fn stdin_and_json_out() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["decompose", "--p", "3", "--expr", "-", "--no-timings", "--json-out", p], "D^2+t\n");
    assert_eq!(code, EXIT_OK);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), out);
}

#[test]
fn other_subcommands() {
    let v = json(&["gcrd", "--p", "3", "--expr", "D^2+D", "--expr", "D*(D+1)", "--no-timings"]);
    assert_eq!(v["result"], "D^2+D");
    let v = json(&["lclm", "--p", "5", "--expr", "D", "--expr", "D+1", "--no-timings"]);
    assert_eq!(v["order"], 2);
    let v = json(&["apply", "--p", "5", "--expr", "D+t", "--to", "t^2", "--no-timings"]);
    assert_eq!(v["result"], "t^3+2*t");
    let v = json(&["equivalent", "--p", "5", "--expr", "D", "--expr", "D+1/t", "--no-timings"]);
    assert_eq!(v["equivalent"], true);
    let v = json(&["equivalent", "--p", "5", "--expr", "D", "--expr", "D+1", "--no-timings"]);
    assert_eq!(v["equivalent"], false);
    let v = json(&["pcurvature", "--p", "3", "--expr", "D^2+t", "--no-timings"]);
    assert_eq!(v["matrix"].as_array().unwrap().len(), 2);
    let v = json(&["repr", "--p", "3", "--invariants", "Y-t;Y-t", "--no-timings"]);
    assert_eq!(v["pieces"].as_array().unwrap().len(), 2);
    let v = json(&["decompose", "--p", "3", "--n", "2", "--expr", "D^2+g*t", "--no-timings"]);
    assert_eq!(v["field"]["p"], 3);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["decompose", "--expr", "D"], "").0, EXIT_PARSE);
    assert_eq!(run(&["decompose", "--p", "4", "--expr", "D"], "").0, EXIT_PARSE);
    assert_eq!(run(&["decompose", "--p", "3", "--expr", "D/D"], "").0, EXIT_PARSE);
    assert_eq!(run(&["decompose", "--p", "3", "--expr", "D+", "--expr", "D"], "").0, EXIT_PARSE);
    assert_eq!(run(&["frobnicate"], "").0, EXIT_PARSE);
    let (code, _, err) = run(&["decompose", "--p", "3", "--expr", "D^3-t"], "");
    assert_eq!(code, EXIT_HYPOTHESIS);
    assert!(err.contains("inseparable"));
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_lclm"))
        .args(["decompose", "--p", "5", "--expr", "D^2+t", "--no-timings"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verified"], true);
    let out = Command::new(env!("CARGO_BIN_EXE_lclm")).args(["decompose", "--p", "3", "--expr", "D^3-t"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_HYPOTHESIS));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_parse_roundtrip(
        p in prop::sample::select(vec![2u32, 3, 5, 7]),
        coeffs in prop::collection::vec((prop::collection::vec(0u32..50, 0..4), prop::collection::vec(0u32..50, 1..3)), 0..5),
    ) {
        let fq = Fq::prime(p).unwrap();
        let k = RatField::new(fq.clone());
        let ring = OreRing::new(k.clone());
        let poly = |v: &[u32]| v.iter().map(|&c| fq.elem(c % p)).collect::<Vec<_>>();
        let cs = coeffs
            .iter()
            .map(|(n, d)| {
                let mut d = poly(d);
                d.push(fq.one());
                k.frac(poly(n), d).unwrap_or_else(|_| k.zero())
            })
            .collect();
        let op = ring.from_coeffs(cs);
        let text = fmt_operator(&k, &op);
        prop_assert_eq!(parse_operator(&text, &ring).unwrap(), op);
    }
}
