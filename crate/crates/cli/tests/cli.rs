use std::fs;
use std::process::{Command, Output};

fn heckd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heckd"))
        .args(args)
        .env_remove("HECKD_CACHE")
        .output()
        .expect("spawn heckd")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap().trim_end().to_string()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn mult_examples() {
    assert_eq!(stdout(&heckd(&["mult", "--d", "3", "Trho * T1 * Trho"])), "[T0]");
    assert_eq!(stdout(&heckd(&["mult", "--d", "3", "T1 * T1"])), "v^2·[e] + (v^2-1)·[T1]");
    assert_eq!(stdout(&heckd(&["mult", "--d", "3", "[w=1,2,3,4,5,6] * T2"])), "[T2]");
    assert_eq!(stdout(&heckd(&["mult", "T1", "T2"])), stdout(&heckd(&["mult", "T1*T2"])));
}

#[test]
fn factor_examples() {
    let out = heckd(&["factor", "--d", "3", "--w", "7,2,3,4,5,0", "--replay"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "T1 * T2 * T3 * T1 * Trho");
    let unit = heckd(&["--machine", "factor", "--w", "1,2,3,4,5,6"]);
    assert_eq!(stdout(&unit), r#"{"d":3,"length":0,"rho":false,"w":[1,2,3,4,5,6],"word":[]}"#);
    assert_eq!(stdout(&heckd(&["factor", "--w", "0,2,4,3,5,7"])), "Trho");
    let negative = heckd(&["factor", "--w", "-1,0,3,4,7,8"]);
    assert_eq!(stdout(&negative), "T0");
}

#[test]
fn length_and_compositions() {
    let out = heckd(&["length", "--d", "3", "--w", "7,2,3,4,5,0", "--verify"]);
    assert_eq!((code(&out), stdout(&out)), (0, "4".to_string()));
    let out = heckd(&["compositions", "--n", "4", "--d", "3"]);
    assert_eq!(stdout(&out).lines().count(), 4);
    assert_eq!(code(&out), 0);
}

#[test]
fn check_exit_codes() {
    let ok = heckd(&["check", "--d", "4"]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).lines().all(|l| l.starts_with("PASS ")));
    // At d = 3 the relation T0T3 = T3T0 does not hold in this model.
    let red = heckd(&["--machine", "check", "--d", "3"]);
    assert_eq!(code(&red), 4);
    let record: serde_json::Value = serde_json::from_str(&stdout(&red)).unwrap();
    assert_eq!(record["passed"], false);
    let failing: Vec<_> = record["relations"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["holds"] == false)
        .map(|r| r["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(failing, ["T0T3 = T3T0"]);
}

#[test]
fn error_records() {
    let parse = heckd(&["--machine", "mult", "T1 * T9"]);
    assert_eq!(code(&parse), 2);
    let rec: serde_json::Value = serde_json::from_str(&stdout(&parse)).unwrap();
    assert_eq!(rec["error"]["kind"], "parse");
    assert_eq!(rec["error"]["column"], 6);

    let invariant = heckd(&["--machine", "length", "--w", "2,1,3,4,5,6"]);
    assert_eq!(code(&invariant), 3);
    let rec: serde_json::Value = serde_json::from_str(&stdout(&invariant)).unwrap();
    assert_eq!(rec["error"]["kind"], "invariant");

    assert_eq!(code(&heckd(&["length", "--d", "2", "--w", "1,2,3,4"])), 2);
    assert_eq!(code(&heckd(&["length", "--w", "1,x"])), 2);
    assert_eq!(code(&heckd(&["frobnicate"])), 2);
    assert_eq!(code(&heckd(&["--machine", "bruhat", "--w", "1,2,3,4,5,6"])), 2);
}

#[test]
fn bruhat_verdicts() {
    let out = heckd(&["bruhat", "--w", "1,2,3,4,5,6", "--w", "7,2,3,4,5,0"]);
    assert_eq!(stdout(&out), "incomparable");
    let out = heckd(&["bruhat", "--w", "0,2,4,3,5,7", "--w", "7,2,3,4,5,0", "--verify"]);
    assert_eq!((code(&out), stdout(&out)), (0, "below".to_string()));
}

#[test]
fn machine_output_is_byte_identical_across_runs() {
    for args in [
        &["--machine", "mult", "(T0 + v) * T2 * T0 * Trho"][..],
        &["--machine", "kl", "--upto-length", "3"][..],
        &["--machine", "kl", "--upto-length", "2", "--w", "7,2,3,4,5,0"][..],
        &["--machine", "check", "--d", "4", "--verify", "--upto-length", "1"][..],
    ] {
        let (a, b) = (heckd(args), heckd(args));
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn kl_cache_roundtrip_and_merge() {
    let dir = tempfile::tempdir().unwrap();
    let small = dir.path().join("small.jsonl");
    let big = dir.path().join("big.jsonl");
    let s = small.to_str().unwrap();
    let b = big.to_str().unwrap();

    assert_eq!(code(&heckd(&["kl", "--upto-length", "2", "--cache", s])), 0);
    let first = fs::read(&small).unwrap();
    assert_eq!(code(&heckd(&["kl", "--upto-length", "2", "--cache", s])), 0);
    assert_eq!(fs::read(&small).unwrap(), first);

    let out = Command::new(env!("CARGO_BIN_EXE_heckd"))
        .args(["kl", "--upto-length", "3"])
        .env("HECKD_CACHE", &big)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(code(&heckd(&["cache", "validate", "--cache", b])), 0);

    let merged = dir.path().join("merged.jsonl");
    let m = merged.to_str().unwrap();
    assert_eq!(code(&heckd(&["cache", "merge", "--cache", m, s, b])), 0);
    assert_eq!(fs::read(&merged).unwrap(), fs::read(&big).unwrap());

    let text = fs::read_to_string(&big).unwrap();
    let truncated = dir.path().join("truncated.jsonl");
    fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    let out = heckd(&["--machine", "cache", "validate", "--cache", truncated.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("malformed record at line"));

    let wrong_rank = heckd(&["cache", "validate", "--d", "4", "--cache", s]);
    assert_ne!(code(&wrong_rank), 0);
}
