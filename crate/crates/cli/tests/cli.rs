use std::process::{Command, Output};

use serde_json::Value;

fn cyclo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclo"))
        .args(args)
        .env_remove("CYCLO_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    })
}

#[test]
fn family_welch_m5() {
    let out = cyclo(&["family", "--name", "welch", "--m", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["payload"]["report"]["match"], true);
    let code = &v["payload"]["code"];
    assert_eq!((code["n"].as_u64(), code["k"].as_u64()), (Some(31), Some(15)));
    assert_eq!(code["distance"]["exact"], true);
    assert_eq!(code["distance"]["upper"], 8);
}

#[test]
fn family_trinomial() {
    let out = cyclo(&["family", "--name", "trinomial", "--m", "4", "--r", "14", "--h", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["payload"]["report"]["match"], true);
    assert_eq!(v["payload"]["code"]["k"], 7);
    assert_eq!(v["payload"]["code"]["distance"]["upper"], 5);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        cyclo(&["family", "--name", "kasami", "--m", "4", "--h", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cyclo(&["family", "--name", "kasami", "--m", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(cyclo(&["family", "--name", "welch", "--m", "6"]).status.code(), Some(2));
    assert_eq!(cyclo(&["generic", "--m", "6"]).status.code(), Some(2));
    assert_eq!(cyclo(&["generic", "--m", "40", "--exp", "3"]).status.code(), Some(2));
    assert_eq!(
        cyclo(&["generic", "--m", "4", "--exp", "1", "--modulus", "1+x+x^2+x^3+x^4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(cyclo(&["verify-paper", "--only", "nope"]).status.code(), Some(2));
    assert_eq!(cyclo(&["--threads", "0", "cosets", "--m", "4"]).status.code(), Some(2));
}

#[test]
fn generic_examples() {
    for (m, e, k) in [("6", "7", 45), ("6", "5", 57), ("4", "1", 11)] {
        let out = cyclo(&["generic", "--m", m, "--exp", e]);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        assert_eq!(v["payload"]["code"]["k"], k, "m={m} e={e}");
        assert_eq!(v["payload"]["code"]["distance"]["upper"], 3);
    }
}

#[test]
fn generic_with_explicit_modulus() {
    let a = json(&cyclo(&["generic", "--m", "4", "--exp", "1", "--modulus", "1+x^3+x^4"]));
    let b = json(&cyclo(&["generic", "--m", "4", "--exp", "1", "--modulus", "0x19"]));
    assert_eq!(a["payload"]["code"], b["payload"]["code"]);
    assert_eq!(a["payload"]["code"]["k"], 11);
}

#[test]
fn sequence_spans_and_file() {
    let v = json(&cyclo(&["sequence", "--m", "4", "--exp", "1"]));
    assert_eq!(v["payload"]["span"], 4);
    assert_eq!(v["payload"]["agree"], true);
    for s in v["payload"]["spans"].as_array().unwrap() {
        assert_eq!(s["linear_span"], 4);
    }

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.hex");
    let out = cyclo(&["sequence", "--m", "5", "--exp", "7", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["payload"]["span"], 16);
    let hex = std::fs::read_to_string(&path).unwrap();
    let bytes = hex::decode(hex.trim()).unwrap();
    assert_eq!(bytes.len(), 4);
    assert_eq!(bytes[3] >> 7, 0, "31 bits, top bit unused");
}

#[test]
fn cosets_dump() {
    let v = json(&cyclo(&["cosets", "--m", "4"]));
    let cosets = v["payload"].as_array().unwrap();
    assert_eq!(cosets.len(), 5);
    let c7 = cosets.iter().find(|c| c["leader"] == 7).unwrap();
    assert_eq!(c7["members"], serde_json::json!([7, 14, 13, 11]));
    assert_eq!(c7["rho"], 1);
    assert_eq!(c7["v"], 1);
}

#[test]
fn verify_paper_filter_and_json() {
    let out = cyclo(&["verify-paper", "--only", "welch"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim_end().ends_with("2/2 pass"), "{text}");

    let out = cyclo(&["--threads", "2", "verify-paper", "--only", "trinomial", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["payload"]["rows"].as_array().unwrap().len(), 5);
}

#[test]
fn verify_paper_full() {
    let out = cyclo(&["verify-paper"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.trim_end().ends_with("18/18 pass"));
}

#[test]
fn deterministic_output() {
    let args = ["family", "--name", "niho", "--m", "9"];
    let strip = |mut v: Value| {
        v["elapsed_s"] = Value::Null;
        v
    };
    let a = strip(json(&cyclo(&args)));
    let b = strip(json(&cyclo(&args)));
    assert_eq!(a["payload"]["report"], b["payload"]["report"]);
    assert_eq!(a["payload"]["code"]["generator"], b["payload"]["code"]["generator"]);
    assert_eq!(a["payload"]["code"]["distance"], b["payload"]["code"]["distance"]);
}
