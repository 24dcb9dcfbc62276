use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qbn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbn"))
        .args(args)
        .output()
        .expect("qbn runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qbn-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn jordan_file() -> PathBuf {
    let path = scratch("jordan.json");
    std::fs::write(&path, quiver_bn::Quiver::jordan().to_json().to_string()).unwrap();
    path
}

#[test]
fn dim_bn_jordan() {
    let q = jordan_file();
    let out = qbn(&[
        "dim",
        "bn",
        "--quiver",
        q.to_str().unwrap(),
        "--d",
        "3",
        "--f",
        "1",
        "--k",
        "1",
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["dim"], 4);
    assert_eq!(v["effective_k"]["v"], 1);
}

#[test]
fn dim_bn_reports_clamped_k() {
    let out = qbn(&["dim", "bn", "--preset", "a1", "--d", "2", "--f", "3", "--k", "0"]);
    let v = json_of(&out);
    assert_eq!(v["effective_k"]["v"], 1);
    assert_eq!(v["k"]["v"], 0);
}

#[test]
fn dim_nakajima_zero() {
    let out = qbn(&["dim", "nakajima", "--d", "0"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["dim"], 0);
}

#[test]
fn dim_chain_two_steps() {
    let q = jordan_file();
    for d in 3..7 {
        let (a, b, c) = (d.to_string(), (d - 1).to_string(), (d - 2).to_string());
        let out = qbn(&[
            "dim",
            "chain",
            "--quiver",
            q.to_str().unwrap(),
            "--level",
            &a,
            "--level",
            &b,
            "--level",
            &c,
            "--f",
            "1",
        ]);
        assert_eq!(json_of(&out)["dim"], 2 * d - 5);
    }
}

#[test]
fn dim_other_modes() {
    let out = qbn(&["dim", "parabolic", "--d", "4", "--k", "2", "--f", "1"]);
    assert_eq!(json_of(&out)["dim"], 2);
    let out = qbn(&["dim", "parabolic-full", "--d", "4", "--k", "2", "--f", "1"]);
    assert_eq!(json_of(&out)["dim"], 3);
    let out = qbn(&["dim", "stratum", "--d", "4", "--f", "1", "--r", "1"]);
    assert_eq!(json_of(&out)["dim"], 6);
}

#[test]
fn input_errors_exit_two() {
    let out = qbn(&["dim", "nakajima", "--d", "w=3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    let out = qbn(&["dim", "nakajima", "--preset", "b7", "--d", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qbn(&["verify", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn nonempty_verdicts() {
    let out = qbn(&["nonempty", "--d", "2", "--k", "2", "--f", "1", "--trace"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["verdict"], "empty");
    assert!(v["trace"].as_array().unwrap().len() >= 2);

    let out = qbn(&["nonempty", "--d", "3", "--k", "2", "--f", "1"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["verdict"], "nonempty");
    assert!(v.get("trace").is_none());

    let out = qbn(&["nonempty", "--preset", "a1", "--d", "3", "--f", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn root_check_a2() {
    let out = qbn(&["root-check", "--preset", "a2", "--alpha", "v0=1,v1=1"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["verdict"], "RealRoot");
}

#[test]
fn strata_tsv_and_cap() {
    let out = qbn(&["strata", "--d", "4", "--f", "1", "--k", "1", "--tsv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "r\tstratum_dim\tfiber_dim\tpreimage_dim\tnonempty"
    );
    assert_eq!(lines.next().unwrap(), "(1)\t6\t0\t6\ttrue");

    let out = qbn(&["strata", "--d", "6", "--f", "1", "--cap", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn excess_unit_steps() {
    let out = qbn(&["excess", "--level", "5", "--level", "4", "--level", "3"]);
    let v = json_of(&out);
    assert_eq!((v["R1"].as_i64(), v["R2"].as_i64()), (Some(1), Some(2)));
}

#[test]
fn example_then_verify() {
    let path = scratch("hilb21.json");
    let out = qbn(&[
        "example",
        "hilb",
        "--partition",
        "2,1",
        "--k",
        "1",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = qbn(&["verify", path.to_str().unwrap(), "--tangent"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json_of(&out);
    assert_eq!(v["tangent"]["h_dim"], 4);
    assert_eq!(v["pass"], true);

    let path = scratch("a1.json");
    qbn(&[
        "example",
        "a1",
        "--d",
        "2",
        "--f",
        "5",
        "--k",
        "1",
        "-o",
        path.to_str().unwrap(),
    ]);
    let out = qbn(&["verify", path.to_str().unwrap(), "--tangent"]);
    assert!(out.status.success());
}

#[test]
fn empty_partition_is_zero_rep() {
    let out = qbn(&["example", "hilb", "--partition", ""]);
    let v = json_of(&out);
    assert_eq!(v["d"]["v"], 0);
    let path = scratch("empty.json");
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    assert!(qbn(&["verify", path.to_str().unwrap()]).status.success());
}

#[test]
fn corrupted_flag_fails() {
    let out = qbn(&["example", "hilb", "--partition", "2,1", "--k", "1"]);
    let mut v = json_of(&out);
    // (0,0) is not killed by X
    v["flags"]["v"] = serde_json::json!([[["1"], ["0"], ["0"]]]);
    let path = scratch("bad.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let out = qbn(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    let failed: Vec<&Value> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["ok"] == false)
        .collect();
    assert!(failed
        .iter()
        .any(|c| c["check"].as_str().unwrap().contains("annihilated")));
}

#[test]
fn random_examples_are_reproducible() {
    let a = qbn(&["example", "random", "--family", "a1", "--seed", "5"]);
    let b = qbn(&["example", "random", "--family", "a1", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["generator"]["seed"], 5);
    let path = scratch("rand.json");
    std::fs::write(&path, &a.stdout).unwrap();
    assert!(qbn(&["verify", path.to_str().unwrap(), "--tangent"]).status.success());
}

#[test]
fn selftest_passes_and_repeats() {
    let a = qbn(&["selftest", "--seed", "3"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = qbn(&["selftest", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["pass"], true);
}
