use std::process::{Command, Output};

use dimon::{card, close, standard_generators, MonoidKind};

fn dimon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn card_with_enumeration() {
    let out = dimon(&["card", "odi", "4", "--enumerate"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "formula=44 enumerated=44 PASS\n");

    let out = dimon(&["card", "mdi", "6", "--enumerate", "--workers", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("PASS\n"));
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        &["card", "odi", "2"][..],
        &["card", "xyz", "5"],
        &["card", "di", "5"],
        &["classify", "n=5;1>1,1>2"],
        &["classify", "n=5; 1>1"],
        &["factorize", "odi", "n=5;1>2,2>1"],
        &["verify", "--max-n", "2"],
        &["enumerate", "odi", "3", "--out", "/nonexistent-dir/x.jsonl"],
    ] {
        let out = dimon(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn enumerate_is_sorted_and_deterministic() {
    let a = dimon(&["enumerate", "odi", "3"]);
    let b = dimon(&["enumerate", "odi", "3", "--workers", "1"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 20);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("odi5.txt");
    let out = dimon(&[
        "enumerate",
        "odi",
        "5",
        "--format",
        "txt",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let file = std::fs::read_to_string(&path).unwrap();
    let monoid = close(5, &standard_generators(MonoidKind::Odi, 5).unwrap().values()).unwrap();
    let expected: Vec<String> = monoid.elements().iter().map(ToString::to_string).collect();
    assert_eq!(file.lines().collect::<Vec<_>>(), expected);
    assert_eq!(expected.len() as u128, card(MonoidKind::Odi, 5).unwrap());
}

#[test]
fn classify_reports_membership() {
    let out = dimon(&["classify", "n=5;2>1,4>3,5>4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("in_ODI=true"));
    assert!(text.contains("extensions=g^4\n"));

    let out = dimon(&["--json", "classify", "n=5;1>3,2>4,3>5,5>2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["membership"]["in_opdi"], true);
    assert_eq!(v["membership"]["in_odi"], false);
}

#[test]
fn extensions_of_empty_map() {
    let out = dimon(&["extensions", "n=4;"]);
    assert!(stdout(&out).starts_with("count=8\n"));
}

#[test]
fn factorize_round_trips() {
    let out = dimon(&["factorize", "odi", "n=5;"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("evaluates_to=n=5;\n"));
    assert!(text.contains("roundtrip=PASS"));

    let out = dimon(&["--json", "factorize", "mdi", "n=6;1>6,2>5"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["roundtrip"], true);
    let word: dimon::Word = v["word"].as_str().unwrap().parse().unwrap();
    assert_eq!(word.evaluate(6).unwrap().to_string(), "n=6;1>6,2>5");
}

#[test]
fn gens_and_greens_tables() {
    let out = dimon(&["gens", "opdi", "5"]);
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("name,element"));
    assert_eq!(text.lines().count(), 1 + 4);

    let out = dimon(&["greens", "odi", "4"]);
    let text = stdout(&out);
    assert!(text.starts_with("kind=ODI n=4 relation=J elements=44 classes=8\nsize,count\n"));
    assert!(text.contains("16,2\n"));

    let out = dimon(&["--json", "greens", "mdi", "5", "--relation", "L"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["classes"], 32);
}

#[test]
fn rank_certification() {
    let out = dimon(&["rank", "opdi", "5", "--certify"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("rank=4 CERTIFIED\n"));
    let out = dimon(&["rank", "mdi", "3", "--certify"]);
    assert!(stdout(&out).starts_with("rank=3 CERTIFIED\n"));
    assert_eq!(stdout(&dimon(&["rank", "odi", "6"])), "rank=10\n");
}

#[test]
fn verify_exit_codes() {
    let out = dimon(&["verify", "--max-n", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 12);

    let out = dimon(&["verify", "--max-n", "5", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).lines().next().unwrap().starts_with("FAIL"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("criterion 1"));
}
