use std::process::{Command, Output};

use serde_json::Value;

fn spinhl(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spinhl"));
    cmd.args(args);
    match threads {
        Some(n) => cmd.env("SPINHL_THREADS", n),
        None => cmd.env_remove("SPINHL_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn compute_single_variable_f() {
    let out = spinhl(&["compute", "--family", "F", "--m", "1", "--x", "2", "--q", "3", "--s", "5"], None);
    assert!(out.status.success());
    assert_eq!(json(&out)["value"], "2/3");
}

#[test]
fn compute_accepts_negative_rationals() {
    let out = spinhl(&["compute", "--family", "H", "--m", "10", "--x", "-1/2", "--q", "-3"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(json(&out)["value"].is_string());
}

#[test]
fn bad_input_exits_2() {
    for args in [
        &["compute", "--family", "Q", "--m", "1", "--q", "2"][..],
        &["compute", "--family", "F", "--m", "1", "--x", "2", "--q", "3"],
        &["expand", "--family", "six-vertex", "--m", "012", "--l", "1"],
        &["verify", "ybe", "--trials", "0"],
        &["frobnicate"],
    ] {
        let out = spinhl(args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    assert_eq!(spinhl(&["verify", "ybe", "--trials", "1"], Some("zero")).status.code(), Some(2));
}

#[test]
fn puzzles_list_matches_count() {
    let args = ["puzzles", "--family", "six-vertex", "--m", "01000", "--l", "101", "--w", "010", "--k", "00100", "--list"];
    let v = json(&spinhl(&args, None));
    assert_eq!(v["count"], 3);
    assert_eq!(v["puzzles"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_is_deterministic_across_thread_counts() {
    let args = ["verify", "ybe", "--trials", "1", "--seed", "42"];
    let a = spinhl(&args, None);
    let b = spinhl(&args, Some("1"));
    let c = spinhl(&args, Some("3"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let v = json(&a);
    assert_eq!(v["trials"], 54);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}
