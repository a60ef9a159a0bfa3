use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tqftwb"))
        .args(args)
        .env_remove("TQFTWB_SEED")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn passing_suites_exit_zero() {
    assert_eq!(code(&["cob", "normalize", "--term", "mu . delta"]), 0);
    assert_eq!(
        code(&[
            "tqft",
            "eval",
            "--model",
            &data("z2.json"),
            "--term",
            "mu . (eta * id(1))"
        ]),
        0
    );
    assert_eq!(
        code(&[
            "tqft",
            "eval",
            "--model",
            &data("z2z3.json"),
            "--term",
            "mu . tau",
            "--expect",
            "genus0"
        ]),
        0
    );
    assert_eq!(
        code(&["frobenius", "check", "--model", &data("z2z3.json"), "--seed", "7"]),
        0
    );
    assert_eq!(code(&["lie", "sln", "--n", "3", "--trials", "5"]), 0);
}

#[test]
fn eval_verdict_names_the_identity() {
    let out = run(&[
        "tqft",
        "eval",
        "--model",
        &data("z2.json"),
        "--term",
        "mu . (eta * id(1))",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["verdict"], "fingerprint-equal: id(1)");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn failed_expectation_exits_one() {
    let out = run(&[
        "tqft",
        "eval",
        "--model",
        &data("z2.json"),
        "--term",
        "delta . mu",
        "--expect",
        "id",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn bad_input_exits_two() {
    let cases: Vec<Vec<String>> = vec![
        vec![
            "tqft".into(),
            "eval".into(),
            "--model".into(),
            data("truncated.json"),
            "--term".into(),
            "mu".into(),
        ],
        vec![
            "tqft".into(),
            "eval".into(),
            "--model".into(),
            data("bad_factor.json"),
            "--term".into(),
            "mu".into(),
        ],
        vec![
            "tqft".into(),
            "eval".into(),
            "--model".into(),
            data("missing.json"),
            "--term".into(),
            "mu".into(),
        ],
        vec![
            "tqft".into(),
            "eval".into(),
            "--model".into(),
            data("z2.json"),
            "--term".into(),
            "mu . mu".into(),
        ],
        vec![
            "tqft".into(),
            "eval".into(),
            "--model".into(),
            data("z2.json"),
            "--term".into(),
            "mu . (".into(),
        ],
        vec![
            "frobenius".into(),
            "check".into(),
            "--model".into(),
            data("truncated.json"),
        ],
        vec!["cob".into(), "normalize".into(), "--term".into(), "eta *".into()],
        vec!["lie".into(), "sln".into()],
        vec!["lie".into(), "sln".into(), "--n".into(), "40".into()],
        vec!["lie".into(), "sl2-semidirect".into(), "--n".into(), "3".into()],
        vec!["lie".into(), "so3".into()],
        vec!["lie".into(), "sl3-centralizer".into(), "--trials".into(), "0".into()],
        vec!["frobenius".into()],
    ];
    for c in cases {
        let args: Vec<&str> = c.iter().map(String::as_str).collect();
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn json_flag_writes_report() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-out.json");
    let _ = std::fs::remove_file(&path);
    let out = run(&[
        "lie",
        "sl3-centralizer",
        "--trials",
        "25",
        "--seed",
        "1",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["options"]["seed"], 1);
    assert_eq!(v["result"]["family"], "sl3-centralizer");
}

#[test]
fn seed_falls_back_to_environment() {
    let with_flag = run(&["lie", "sl2-semidirect", "--trials", "3", "--seed", "42"]).stdout;
    let with_env = Command::new(env!("CARGO_BIN_EXE_tqftwb"))
        .args(["lie", "sl2-semidirect", "--trials", "3"])
        .env("TQFTWB_SEED", "42")
        .output()
        .unwrap()
        .stdout;
    assert_eq!(with_flag, with_env);
    assert_ne!(with_flag, run(&["lie", "sl2-semidirect", "--trials", "3"]).stdout);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let z2z3 = data("z2z3.json");
    let invocations: Vec<Vec<&str>> = vec![
        vec!["frobenius", "check", "--model", &z2z3, "--seed", "7"],
        vec!["lie", "sln", "--n", "4", "--trials", "4", "--seed", "3"],
    ];
    for args in invocations {
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
}
