use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn m4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_m4")).args(args).output().expect("run m4")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

const INSTANCE: &str = "X(2,4) # Y(3) # Sigma(3)xSigma(3) # 1*S1xS3";

#[test]
fn invariants_of_gompf_block() {
    let o = m4(&["invariants", "X(2,4)", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["invariants"]["chi"], 64);
    assert_eq!(v["invariants"]["tau"], -32);
    assert_eq!(v["fingerprint"]["parity"], "even");

    let text = stdout(&m4(&["invariants", "X(2,4)"]));
    assert!(text.contains("χ                  64"), "{text}");
}

#[test]
fn invariants_of_double_k3() {
    let v = json_of(&m4(&["invariants", "K3 # K3", "--json"]));
    assert_eq!(v["invariants"]["chi"], 46);
    assert_eq!(v["invariants"]["tau"], -32);
    assert_eq!(v["expression"], "2*K3");
}

#[test]
fn malformed_input_is_exit_2() {
    for expr in ["X(2,", "", "K3 # Foo", "X(2,-4)", "Block{chi=1}"] {
        let o = m4(&["invariants", expr]);
        assert_eq!(o.status.code(), Some(2), "{expr}");
        assert!(o.stdout.is_empty(), "{expr}");
        assert!(!o.stderr.is_empty(), "{expr}");
    }
}

#[test]
fn check_family_instance() {
    let v = json_of(&m4(&["check", INSTANCE, "--json"]));
    let verdict = |name: &str| {
        v["checks"].as_array().unwrap().iter().find(|c| c["check"] == name).unwrap()["verdict"].clone()
    };
    assert_eq!(verdict("einstein"), "proven");
    assert_eq!(verdict("ght-entropy"), "proven");
    assert_eq!(v["entropy"]["lower"], serde_json::json!({"0": "64/1"}));
    assert_eq!(v["entropy"]["upper"], serde_json::json!({"2": "1024/1"}));
    let margin = v["checks"].as_array().unwrap().iter().find(|c| c["check"] == "ght-entropy").unwrap()["margin"].clone();
    assert_eq!(margin, serde_json::json!({"0": "892/27"}));
}

#[test]
fn check_k3_equality_and_two_cores() {
    let v = json_of(&m4(&["check", "K3", "--checks", "ht", "--json"]));
    assert_eq!(v["checks"][0]["outcome"], "equality");
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);

    let v = json_of(&m4(&["check", "Sigma(3)xSigma(3) # Sigma(3)xSigma(3)", "--checks", "ght-entropy", "--json"]));
    assert_eq!(v["checks"][0]["verdict"], "indeterminate");
    assert_eq!(v["entropy"]["upper"], "unbounded");
}

#[test]
fn unknown_check_is_exit_2() {
    let o = m4(&["check", "K3", "--checks", "ht,nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope"));
}

#[test]
fn enumerate_contains_reference_tuples() {
    let v = json_of(&m4(&["enumerate", "--kind", "spin", "--g", "3", "--h", "3", "--m-max", "3", "--n-max", "6", "--json"]));
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["params"] == serde_json::json!({"m": 2, "n": 4, "g": 3, "h": 3, "ell1": 1})));

    let v = json_of(&m4(&["enumerate", "--kind", "nonspin", "--g", "3", "--h", "3", "--m-max", "3", "--n-max", "6", "--json"]));
    let rows = v["rows"].as_array().unwrap();
    let hit = rows
        .iter()
        .find(|r| r["params"] == serde_json::json!({"m": 2, "n": 4, "g": 3, "h": 3, "ell2": 4}))
        .expect("non-spin reference tuple");
    assert_eq!(hit["margins"]["einstein_criterion"], "0/1");
}

#[test]
fn enumerate_limit_zero_and_bad_ranges() {
    let o = m4(&["enumerate", "--kind", "spin", "--m-max", "3", "--n-max", "6", "--limit", "0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["rows"], serde_json::json!([]));

    assert_eq!(m4(&["enumerate", "--kind", "spin", "--g", "9..3", "--m-max", "3", "--n-max", "6"]).status.code(), Some(2));
    assert_eq!(m4(&["enumerate", "--kind", "spin", "--g", "x", "--m-max", "3", "--n-max", "6"]).status.code(), Some(2));
    assert_eq!(m4(&["enumerate", "--kind", "both", "--m-max", "3", "--n-max", "6"]).status.code(), Some(2));
}

#[test]
fn enumerate_limit_matches_prefix() {
    let base = ["enumerate", "--kind", "nonspin", "--g", "3..5", "--h", "3..5", "--m-max", "3", "--n-max", "10", "--json"];
    let full = json_of(&m4(&base));
    let mut limited = base.to_vec();
    limited.extend(["--limit", "7"]);
    let part = json_of(&m4(&limited));
    assert_eq!(part["rows"].as_array().unwrap()[..], full["rows"].as_array().unwrap()[..7]);
    assert_eq!(part["truncated"], true);
}

#[test]
fn certify_valid_spin_family() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("spin.json");
    let manifest = dir.path().join("MANIFEST");
    let o = m4(&[
        "certify", "--kind", "spin", "--m", "2", "--n", "4", "--g", "3", "--h", "3", "--ell1", "1",
        "--ell-range", "0..5", "--out", out.to_str().unwrap(), "--manifest", manifest.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["members"].as_array().unwrap().len(), 6);
    for m in v["members"].as_array().unwrap() {
        assert_eq!(m["invariants"]["two_chi_plus_3tau"], 52);
        assert_eq!(m["checks"][0]["margin"], serde_json::json!({"0": "892/27"}));
    }
    let listed = fs::read_to_string(&manifest).unwrap();
    assert_eq!(listed.lines().count(), 1);
    assert!(listed.trim_end().ends_with(out.to_str().unwrap()));
    assert!(stdout(&o).contains(listed.split("  ").next().unwrap()));
}

#[test]
fn certify_valid_nonspin_family() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nonspin.json");
    let o = m4(&[
        "certify", "--kind", "nonspin", "--m", "2", "--n", "4", "--g", "3", "--h", "3", "--ell2", "4",
        "--ell-range", "0..5", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["family"], "nonspin");
}

#[test]
fn certify_invalid_params_is_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bad.json");
    let o = m4(&[
        "certify", "--kind", "spin", "--m", "2", "--n", "4", "--g", "3", "--h", "3", "--ell1", "5",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ght_plus_side"));
    assert!(!out.exists());

    let o = m4(&["certify", "--kind", "spin", "--m", "2", "--n", "4", "--g", "3", "--h", "3", "--ell2", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn certify_unwritable_is_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("c.json");
    let o = m4(&[
        "certify", "--kind", "spin", "--m", "2", "--n", "4", "--g", "3", "--h", "3", "--ell1", "1",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<(Vec<u8>, Vec<u8>)> = (0..2)
        .map(|i| {
            let out = dir.path().join(format!("c{i}.json"));
            let o = m4(&[
                "certify", "--kind", "nonspin", "--m", "2", "--n", "4", "--g", "3", "--h", "3", "--ell2", "5",
                "--ell-range", "0..3", "--out", out.to_str().unwrap(),
            ]);
            (fs::read(&out).unwrap(), o.stdout)
        })
        .collect();
    assert_eq!(runs[0].0, runs[1].0);
    // stdout differs only in the certificate path
    let a = String::from_utf8_lossy(&runs[0].1).replace("c0.json", "c.json");
    let b = String::from_utf8_lossy(&runs[1].1).replace("c1.json", "c.json");
    assert_eq!(a, b);

    for args in [
        vec!["check", INSTANCE, "--json"],
        vec!["enumerate", "--kind", "spin", "--g", "3..9", "--h", "3..9", "--m-max", "6", "--n-max", "20", "--json"],
    ] {
        assert_eq!(m4(&args).stdout, m4(&args).stdout);
    }
}
