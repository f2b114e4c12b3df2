//! End-to-end runs of the `chamber` binary.

use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output};

fn chamber(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chamber")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn phi_of_kronecker_v2() {
    let out = chamber(&["phi", "--scenario", "kronecker", "--module", "V2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["phi"], "t2*t1^2 + t4*t1^2 + 2*t4*t3*t1 + t4*t3^2");
    let first = &v["strata"][0];
    let keys: Vec<&str> = first.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["stratum", "samples", "chi"]);
}

#[test]
fn flags_and_grassmannians_give_the_same_phi() {
    let a = json(&chamber(&["phi", "--scenario", "A3-w0", "--module", "L1", "--method", "flags"]));
    let b = json(&chamber(&["phi", "--scenario", "A3-w0", "--module", "L1"]));
    assert_eq!(a["phi"], b["phi"]);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["verify-all", "--scenario", "kronecker"];
    let (a, b) = (chamber(&args), chamber(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_layout() {
    let out = chamber(&["verify-all", "--scenario", "loop-1111"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    let top: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(top, ["checks"]);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert_eq!(c["status"], "pass");
        let keys: Vec<&str> = c.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys[..2], ["claim", "status"]);
        assert_eq!(*keys.last().unwrap(), "provenance");
    }
    let chi = checks.iter().find(|c| c["claim"] == "chi=3").expect("chi check");
    assert_eq!(chi["samples"], serde_json::json!({"2": 5, "3": 7, "5": 11}));
}

#[test]
fn text_output() {
    let out = chamber(&["chamber", "verify", "--scenario", "A3-w0", "--text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "pass  phi'_1 = t1^-1"), "{text}");
}

#[test]
fn theta_matches_phi_for_both_tilting_modules() {
    for t in ["v", "w"] {
        let v = json(&chamber(&["character", "theta", "--scenario", "kronecker", "--tilting", t, "--module", "Xlambda"]));
        assert_eq!(v["matches_phi"], true);
        assert_eq!(v["phi"], "t3*t2^3*t1^4 + t4*t3*t2^2*t1^4 + t4*t3^2*t2^2*t1^3");
    }
    let v = json(&chamber(&["character", "theta", "--scenario", "kronecker", "--tilting", "w", "--module", "Xlambda"]));
    assert_eq!(v["g"], serde_json::json!([1, -1, 0, 0]));
}

#[test]
fn mutation_twice_returns_the_initial_seed() {
    let out = chamber(&["mutate", "--quiver", "kronecker", "--at", "1", "--at", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["equals_initial"], true);
    let once = json(&chamber(&["mutate", "--quiver", "kronecker", "--at", "1"]));
    assert_eq!(once["equals_initial"], false);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["verify", "--scenario", "no-such-scenario"],
        vec!["phi", "--scenario", "A3-w0", "--module", "Z9"],
        vec!["mutate", "--quiver", "A3", "--at", "7"],
        vec!["frobnicate"],
        vec!["phi", "--scenario", "A3-w0"],
    ] {
        let out = chamber(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn malformed_scenario_file_is_a_usage_error() {
    let dir = std::env::temp_dir().join(format!("chamber-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::File::create(&path).unwrap().write_all(b"{\"cartan\": {\"vertices\": 2,").unwrap();
    let out = chamber(&["verify", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    let good = dir.join("a2.json");
    std::fs::write(&good, r#"{"cartan": {"vertices": 2, "edges": [[1, 2, 1]]}, "word": [1, 2, 1]}"#).unwrap();
    let out = chamber(&["verify", "--scenario", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn library_entry_point_matches_binary() {
    let (code, stdout, _) = chamber_cli::run(["chamber", "phi", "--scenario", "kronecker", "--module", "V2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.as_bytes(), chamber(&["phi", "--scenario", "kronecker", "--module", "V2"]).stdout);
}
