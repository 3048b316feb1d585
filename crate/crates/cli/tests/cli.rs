use std::process::Command;

use carlitz_cli::{run, CommandResult, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use serde_json::Value;

fn carlitz(args: &str) -> CommandResult {
    run(std::iter::once("carlitz").chain(args.split_whitespace()))
}

fn json(args: &str) -> (i32, Value) {
    let r = carlitz(&format!("--json {args}"));
    let v: Value = serde_json::from_str(&r.payload).expect("payload is JSON");
    assert_eq!(v["schema"], 1);
    (r.exit_code, v)
}

#[test]
fn carlitz_verify_q8() {
    let (code, v) = json("carlitz-verify --q 8 --k-max 8");
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["results"].as_array().unwrap().len(), 8);
}

#[test]
fn classify_q5_form36() {
    let (code, v) = json("classify --q 5 --degree 4 --form 3.6");
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["command"], "classify");
    assert_eq!(v["class_representatives"].as_array().unwrap().len(), 2);
    for r in v["references"].as_array().unwrap() {
        assert!(r["class_index"].is_u64());
        assert!(r["witness"]["phi"].is_string());
    }
}

#[test]
fn verify_t33_q16() {
    let (code, v) = json("verify --theorem T3.3 --q 16");
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["exhaustive"], true);
}

#[test]
fn powersum_methods_agree() {
    // x^2 over GF(7): sum of x^4 is 0, sum of x^6 is -1
    let (code, v) = json("powersum --q 7 --f x^2 --s 3");
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["closed"], v["brute"]);
    assert_eq!(v["closed"], "6");
    let (_, v) = json("powersum --q 7 --f x^2 --s 2");
    assert_eq!(v["brute"], "0");
}

#[test]
fn powersum_decompose() {
    let (code, v) = json("powersum --q 7 --f x^3/(x^2+1) --s 2 --decompose");
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["agree"], true);
    assert_eq!(v["splitting_field"], "7^2");
}

#[test]
fn is_pr_cube() {
    let (code, v) = json("is-pr --q 5 --f x^3");
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["is_pr"], true);
    let (code, v) = json("is-pr --q 7 --f x^3");
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["is_pr"], false);
    assert_eq!(v["agree"], true);
}

#[test]
fn equiv_witness_round_trip() {
    let r = run([
        "carlitz",
        "--json",
        "equiv",
        "--q",
        "5",
        "--f",
        "x^2 + 2*x/(x^2 + 3)",
        "--g",
        "x^2 + x/(x^2 + 2)",
    ]);
    assert_eq!(r.exit_code, EXIT_PASS);
    let v: Value = serde_json::from_str(&r.payload).unwrap();
    assert_eq!(v["equivalent"], true);
    assert!(v["phi"].is_string() && v["psi"].is_string());
    let (_, v) = json("equiv --q 7 --f x^3 --g x");
    assert_eq!(v["equivalent"], false);
}

#[test]
fn field_selection() {
    let (_, a) = json("field --q 3^2");
    let (_, b) = json("field --p 3 --n 2");
    assert_eq!(a, b);
    assert_eq!(a["q"], 9);
    let (code, v) = json("field --p 2 --modulus 1,0,1,1");
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["canonical"], false);
    assert_eq!(v["modulus_text"], "x^3 + x^2 + 1");
    assert_eq!(carlitz("field --q 9 --p 2").exit_code, EXIT_USAGE);
    assert_eq!(carlitz("field --p 2 --modulus 1,0,1").exit_code, EXIT_USAGE);
}

#[test]
fn resultant_mismatch_is_reported() {
    let (code, v) = json("resultants");
    assert_eq!(code, EXIT_FAIL);
    let rows = v["resultants"].as_array().unwrap();
    assert_eq!(rows[0]["resultant"], "972*a^2*r2^12");
    assert_eq!(rows[0]["matches"], false);
    assert_eq!(rows[1]["resultant"], "5103*r2^12");
    assert_eq!(rows[1]["matches"], true);
}

#[test]
fn paper_check_subset() {
    let (code, v) = json("paper-check --item 1 --item instantiation");
    assert_eq!(code, EXIT_PASS);
    let items = v["items"].as_array().unwrap();
    assert_eq!(items.len(), 2);
    assert_eq!(items[1]["item"], "instantiation");
    let (code, _) = json("paper-check --item resultants");
    assert_eq!(code, EXIT_FAIL);
}

#[test]
fn usage_errors() {
    let r = carlitz("bogus");
    assert_eq!(r.exit_code, EXIT_USAGE);
    assert!(r.diagnostics[0].contains("Usage"));
    assert_eq!(carlitz("powersum --q 7 --s 2").exit_code, EXIT_USAGE);
    assert_eq!(carlitz("field --q 6").exit_code, EXIT_USAGE);
    assert_eq!(carlitz("verify --theorem T9.9 --q 8").exit_code, EXIT_USAGE);
    assert_eq!(carlitz("classify --q 5 --degree 3 --form 3.6").exit_code, EXIT_USAGE);
    assert_eq!(carlitz("carlitz-verify --q 4 --k-max 9").exit_code, EXIT_USAGE);
    let (code, v) = json("powersum --q 7 --f x^( --s 2");
    assert_eq!(code, EXIT_USAGE);
    assert_eq!(v["error"]["kind"], "Parse");
    assert_eq!(carlitz("--help").exit_code, EXIT_PASS);
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        "--json classify --q 4 --degree 4 --form 3.6",
        "--json verify --theorem T3.4 --q 7 --seed 3",
        "powersum --q 9 --f x^3/(x^2+1) --s 4 --decompose",
        "--jobs 1 --json classify --q 3 --degree 3 --form deg3",
    ] {
        let a = carlitz(args);
        let b = carlitz(args);
        assert_eq!(a.payload, b.payload, "{args}");
    }
    let one = carlitz("--jobs 1 --json classify --q 8 --degree 4 --form 3.6");
    let two = carlitz("--jobs 2 --json classify --q 8 --degree 4 --form 3.6");
    assert_eq!(one.payload, two.payload);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_carlitz");
    let ok = Command::new(bin)
        .args(["carlitz-verify", "--q", "4"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("verdict: pass"));
    let bad = Command::new(bin).args(["is-pr", "--q", "5"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
    let fail = Command::new(bin).arg("resultants").output().unwrap();
    assert_eq!(fail.status.code(), Some(1));
}
