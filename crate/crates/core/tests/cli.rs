use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Stdio};

use berkdyn::cli::{invoke, Cli, Outcome, OPERATIONS};
use clap::CommandFactory;
use serde_json::{json, Value};

fn run(args: &[&str]) -> Outcome {
    invoke(std::iter::once("berkdyn").chain(args.iter().copied()))
}

fn json_of(out: &Outcome) -> Value {
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn classify_reports_the_type() {
    let out = run(&[
        "classify",
        "--prime",
        "2",
        r#"{"kind":"ball","a":"0","r":{"e":"-1","delta":0}}"#,
    ]);
    assert_eq!(out.stdout, "{\"type\":\"II\"}\n");
}

#[test]
fn green_eval_of_the_squaring_map() {
    let out = run(&[
        "green-eval",
        "--prime",
        "2",
        "--map",
        "z^2",
        "--point",
        "[1,2]",
        "--eps",
        "1/1024",
    ]);
    let v = json_of(&out);
    assert_eq!(v["value"], "0");
    assert_eq!(v["n_used"], 0);
    assert_eq!(v["C1"], "0");
}

#[test]
fn schema_errors_name_the_field() {
    let out = run(&[
        "classify",
        "--prime",
        "2",
        r#"{"kind":"ball","a":"0","r":{"e":"1/0"}}"#,
    ]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("`r.e`"), "{}", out.stderr);
    let out = run(&[
        "push",
        "--prime",
        "2",
        r#"{"map":"z","point":{"kind":"I","a":"1"}}"#,
        "--set",
        "map=[[]]",
    ]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("`map`"), "{}", out.stderr);
}

#[test]
fn missing_or_bad_prime_is_a_usage_error() {
    assert_eq!(run(&["classify", r#"{"kind":"I","a":"1"}"#]).code, 2);
    assert_eq!(
        run(&["classify", "--prime", "4", r#"{"kind":"I","a":"1"}"#]).code,
        2
    );
    let out = run(&["classify", r#"{"prime":3,"kind":"I","a":"1"}"#]);
    assert_eq!(json_of(&out), json!({"type": "I"}));
}

#[test]
fn mathematical_failures_exit_with_three() {
    let map = r#"{"map":[[{"coeff":"1","exps":[2,0]}],[{"coeff":"0","exps":[0,2]}]],"point":[1,1],"eps":"1/8"}"#;
    let out = run(&["green-eval", "--prime", "2", map]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("common"), "{}", out.stderr);
}

#[test]
fn unknown_subcommands_and_flags_are_rejected() {
    assert_eq!(run(&["frobnicate", "--prime", "2"]).code, 2);
    assert_eq!(run(&["classify", "--prime", "2", "--bogus", "{}"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn output_is_deterministic() {
    let args = ["reduce", "--prime", "3", "--map", "(z^2 + 3)/(z - 1)"];
    let first = run(&args);
    assert_eq!(first.code, 0, "{}", first.stderr);
    for _ in 0..3 {
        assert_eq!(run(&args), first);
    }
    let keys: Vec<String> = json_of(&first)
        .as_object()
        .unwrap()
        .keys()
        .cloned()
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn reduce_reports_good_reduction_of_squaring() {
    let v = json_of(&run(&["reduce", "--prime", "2", "--map", "z^2"]));
    assert_eq!(v["good_reduction"], true);
    assert_eq!(v["resultant_log"], "0");
    assert_eq!(v["gauss_fixed"], true);
    let v = json_of(&run(&["reduce", "--prime", "2", "--map", "z^2/2"]));
    assert_eq!(v["good_reduction"], false);
}

#[test]
fn hull_renders_as_dot() {
    let pts = r#"{"points":[{"kind":"ball","a":"0","r":{"e":"-1"}},{"kind":"ball","a":"1","r":{"e":"-1"}}]}"#;
    let out = run(&["hull", "--prime", "3", "--format", "dot", pts]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("digraph"));
    assert_eq!(out.stdout.matches("->").count(), 2);
    assert_eq!(
        run(&[
            "classify",
            "--prime",
            "3",
            "--format",
            "dot",
            r#"{"kind":"I","a":"1"}"#
        ])
        .code,
        2
    );
}

#[test]
fn exhaust_matches_the_annulus_schedule() {
    let tube =
        r#"{"tube":{"outer":{"a":"0","r":{"e":"0"}},"removed":[{"a":"0","r":{"e":"-2"}}]},"m":1}"#;
    let v = json_of(&run(&["exhaust", "--prime", "2", tube]));
    assert_eq!(v["x"]["outer"]["r"]["e"], "-1/2");
    assert_eq!(v["x"]["removed"][0]["r"]["e"], "-3/2");
}

#[test]
fn every_operation_has_a_subcommand() {
    let names: BTreeSet<String> = Cli::command()
        .get_subcommands()
        .map(|c| c.get_name().to_string())
        .collect();
    let used: BTreeSet<String> = OPERATIONS
        .iter()
        .map(|(_, c)| c.to_string())
        .filter(|c| c != "*")
        .collect();
    assert!(
        used.is_subset(&names),
        "unknown subcommands: {:?}",
        used.difference(&names).collect::<Vec<_>>()
    );
    assert_eq!(used, names, "subcommands without operations");
    let ops: BTreeSet<&str> = OPERATIONS.iter().map(|(o, _)| *o).collect();
    assert_eq!(ops.len(), OPERATIONS.len());
}

#[test]
fn binary_reads_stdin_and_sets_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_berkdyn");
    let mut child = Command::new(exe)
        .args(["orbit", "--prime", "2", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"map":"(z^2-z)/2","point":{"kind":"I","a":"1/2"},"n":2}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["orbit"][1], json!({"kind": "I", "a": "-1/8"}));
    let bad = Command::new(exe)
        .args(["classify", "--prime", "2", "[]"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let env = Command::new(exe)
        .env("BERKDYN_PRIME", "5")
        .args([
            "classify",
            r#"{"kind":"ball","a":"0","r":{"e":"1/2","delta":1}}"#,
        ])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8_lossy(&env.stdout), "{\"type\":\"III\"}\n");
}
