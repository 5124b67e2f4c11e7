use std::process::{Command, Output};

fn hmcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hmcm"))
        .args(args)
        .env_remove("HMCM_PRIME")
        .env_remove("HMCM_SEED")
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("spawn hmcm")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn input_doc() -> String {
    format!("{}/../../inputs/depth-zero.json", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn hf_golden_for_builtin() {
    let out = hmcm(&["--format", "json", "hf", "--example", "hyper-y3", "--nmax", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["hilbert"], serde_json::json!([1, 2, 3, 3, 3, 3, 3]));
    assert_eq!(v["config"]["n_max"], 6);
}

#[test]
fn hf_from_input_document() {
    let doc = input_doc();
    let out = hmcm(&["--format", "json", "hf", "--input", &doc, "--module", "M", "--nmax", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["result"]["hilbert"], serde_json::json!([2, 2, 3, 3, 3]));
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(hmcm(&["--bogus"]).status.code(), Some(2));
    assert_eq!(hmcm(&["hf", "--input", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(hmcm(&["hf", "--example", "no-such-example"]).status.code(), Some(2));
    assert_eq!(hmcm(&["--prime", "12", "hf", "--example", "hyper-y3"]).status.code(), Some(2));
    assert_eq!(hmcm(&["--help"]).status.code(), Some(0));
}

#[test]
fn env_prime_applies_and_flag_wins() {
    let run = |env: &str, extra: &[&str]| {
        let mut args = vec!["--format", "json"];
        args.extend_from_slice(extra);
        args.extend_from_slice(&["hf", "--example", "hyper-y3", "--nmax", "2"]);
        let out = Command::new(env!("CARGO_BIN_EXE_hmcm"))
            .args(&args)
            .env("HMCM_PRIME", env)
            .env_remove("HMCM_SEED")
            .output()
            .unwrap();
        json(&out)["config"]["prime"].as_u64().unwrap()
    };
    assert_eq!(run("32003", &[]), 32003);
    assert_eq!(run("32003", &["--prime", "101"]), 101);
}

#[test]
fn verify_reports_json_and_is_deterministic() {
    let args = [
        "--format", "json", "verify", "--example", "hyper-y3", "--checks", "thm1-monotone,Beqn,U3",
    ];
    let a = hmcm(&args);
    let b = hmcm(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let checks = v["result"]["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["verdict"] != "fails"));
}

#[test]
fn examples_check_all_match() {
    let out = hmcm(&["--format", "json", "--nmax", "14", "examples", "--check", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
