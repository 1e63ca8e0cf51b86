use std::process::{Command, Output};

fn degen_bell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_degen-bell"))
        .args(args)
        .env_remove("DEGEN_BELL_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn table_examples() {
    let out = degen_bell(&["table", "--family", "s2", "--max-n", "4", "--format", "csv"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().any(|l| l == "4,2,7"));

    let out = degen_bell(&[
        "table", "--family", "s2deg", "--lambda", "1", "--max-n", "3", "--format", "json",
    ]);
    assert_eq!(
        stdout(&out),
        "[[\"1\"],[\"0\",\"1\"],[\"0\",\"0\",\"1\"],[\"0\",\"0\",\"0\",\"1\"]]\n"
    );

    let degenerate = degen_bell(&[
        "table", "--family", "s2deg", "--lambda", "0", "--max-n", "6",
    ]);
    let classical = degen_bell(&["table", "--family", "s2", "--max-n", "6"]);
    assert_eq!(degenerate.stdout, classical.stdout);
}

#[test]
fn eval_examples() {
    let cases: [(&[&str], &str); 4] = [
        (
            &[
                "eval", "--family", "bell2", "--n", "0", "--lambda", "1/2", "--alpha", "3",
                "--beta", "1",
            ],
            "1\n",
        ),
        (
            &[
                "eval", "--family", "charlier", "--n", "1", "--x", "3", "--alpha", "1",
            ],
            "2\n",
        ),
        (
            &[
                "eval", "--family", "bell2", "--n", "2", "--lambda", "0", "--alpha", "1", "--beta",
                "1",
            ],
            "2\n",
        ),
        (
            &["eval", "--family", "bell", "--n", "5", "--x", "1"],
            "52\n",
        ),
    ];
    for (args, expected) in cases {
        let out = degen_bell(args);
        assert!(out.status.success(), "{args:?}");
        assert_eq!(stdout(&out), expected, "{args:?}");
    }
}

#[test]
fn verify_t1_passes() {
    let out = degen_bell(&["verify", "--suite", "t1"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["cases_failed"], 0);
    assert_eq!(report["suite"], "t1");
}

#[test]
fn corrupted_entry_fails_all_with_location() {
    let out = Command::new(env!("CARGO_BIN_EXE_degen-bell"))
        .args([
            "verify",
            "--suite",
            "all",
            "--corrupt",
            "5,3",
            "--samples",
            "20000",
        ])
        .env("DEGEN_BELL_MAX_N", "7")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let failures = report["failures"].as_array().unwrap();
    assert_eq!(
        report["cases_failed"].as_u64().unwrap() as usize,
        failures.len()
    );
    assert!(failures.iter().any(|f| {
        f["identity"] == "degeneration.stirling"
            && f["params"]["n"] == "5"
            && f["params"]["k"] == "3"
    }));
}

#[test]
fn env_cap_shrinks_the_grid() {
    let run = |cap: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_degen-bell"))
            .args(["verify", "--suite", "inversion"])
            .env("DEGEN_BELL_MAX_N", cap)
            .output()
            .unwrap();
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        report["cases_total"].as_u64().unwrap()
    };
    assert!(run("3") < run("6"));
    let bad = Command::new(env!("CARGO_BIN_EXE_degen-bell"))
        .args(["verify", "--suite", "inversion"])
        .env("DEGEN_BELL_MAX_N", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn identical_commands_give_identical_bytes() {
    let args = [
        "verify",
        "--suite",
        "poisson",
        "--seed",
        "9",
        "--max-n",
        "3",
        "--samples",
        "50000",
    ];
    let a = degen_bell(&args);
    let b = degen_bell(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let mc = [
        "eval",
        "--family",
        "moment-mc",
        "--n",
        "3",
        "--lambda",
        "1/2",
        "--alpha",
        "1",
        "--beta",
        "0",
        "--seed",
        "3",
    ];
    assert_eq!(degen_bell(&mc).stdout, degen_bell(&mc).stdout);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["eval", "--family", "charlier", "--n", "1", "--x", "3"][..],
        &["table", "--family", "s2", "--lambda", "x/2"][..],
        &["verify", "--suite", "t0"][..],
        &["frobnicate"][..],
    ] {
        let out = degen_bell(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
}
