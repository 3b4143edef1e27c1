use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_dkoszul"))
        .args(args)
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exit code");
    let text = String::from_utf8(out.stdout).expect("utf-8");
    let report = if text.trim().is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"))
    };
    (code, report)
}

/// Compare with `tests/golden/<name>.json`; `DKOSZUL_BLESS=1` rewrites it.
fn golden(name: &str, args: &[&str]) {
    let (code, report) = run(args);
    assert_eq!(code, 0, "{args:?}: {report}");
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    let text = serde_json::to_string_pretty(&report).unwrap() + "\n";
    if std::env::var_os("DKOSZUL_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &text).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(text, expected, "{name} differs from golden");
}

#[test]
fn golden_reports() {
    golden("dims", &["dims", "--max", "6"]);
    golden("verify_hecke", &["verify-hecke"]);
    golden("ct3_1_1", &["identity", "ct3", "--k", "1", "--l", "1"]);
    golden("ct60_2_1", &["identity", "ct60", "--p", "2", "--r", "1"]);
    golden("loop_s_1_0", &["eigen", "loop-s", "--i", "1", "--a", "0"]);
    golden("irrep_2_1_m1_0", &["irrep", "--weight", "2,1,-1,0"]);
    golden("homology_a1", &["homology", "--a", "1", "--window", "4"]);
}

#[test]
fn golden_dispatch_table() {
    golden("dispatch_table", &["char-table", "--min", "-3", "--max", "3", "--no-characters"]);
    golden("char_table_small", &["char-table", "--min", "-1", "--max", "1", "--t", "1"]);
}

#[test]
fn dispatch_table_covers_every_case() {
    let (_, report) = run(&["char-table", "--min", "-3", "--max", "3", "--no-characters"]);
    let rows = report["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 84);
    let cases: std::collections::BTreeSet<&str> = rows.iter().map(|r| r["case"].as_str().unwrap()).collect();
    assert_eq!(cases.len(), 9, "{cases:?}");
    assert!(rows.iter().all(|r| r["highest_weight_ok"] == true));
}

#[test]
fn reports_are_deterministic() {
    let args = ["irrep", "--weight", "1,1,-1,0"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["irrep", "--weight", "0,1,0,0"]).0, 2);
    assert_eq!(run(&["irrep", "--weight", "nonsense"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["--exact-budget", "0", "dims"]).0, 2);
    let (code, report) = run(&["identity", "ct3", "--k", "1", "--l", "1", "--sign", "r-s"]);
    assert_eq!(code, 1);
    assert_eq!(report["status"], "fail");
    let (code, report) = run(&["irrep", "--weight", "0,0,-1,0"]);
    assert_eq!(code, 3);
    assert_eq!(report["result"]["needed"], 9);
    assert_eq!(report["result"]["case"], "equal_top");
    assert_eq!(run(&["--backend", "exact", "eigen", "loop-s", "--i", "2"]).0, 3);
}

#[test]
fn auto_backend_follows_budgets() {
    let (_, small) = run(&["eigen", "loop-s", "--i", "0", "--a", "1"]);
    assert_eq!(small["backend"], "exact");
    let (code, big) = run(&["summand", "x", "--i", "2", "--a", "0"]);
    assert_eq!(code, 0);
    assert_eq!(big["backend"], "evaluated@7/5");
    let (_, moved) = run(&["--q0", "9/4", "--exact-budget", "1", "summand", "x", "--i", "0", "--a", "0"]);
    assert_eq!(moved["backend"], "evaluated@9/4");
}

#[test]
fn exact_and_evaluated_verdicts_agree() {
    let cases: &[&[&str]] = &[
        &["dims", "--max", "4"],
        &["identity", "ct3", "--k", "1", "--l", "2"],
        &["identity", "ct3", "--k", "2", "--l", "1", "--sign", "r-s"],
        &["identity", "ct60", "--p", "2", "--r", "2"],
        &["eigen", "loop-s", "--i", "1", "--a", "0"],
        &["eigen", "loop-ker", "--i", "0", "--k", "1", "--a", "0"],
        &["summand", "x", "--i", "0", "--a", "1"],
        &["irrep", "--weight", "1,1,-1,0"],
    ];
    for args in cases {
        let with = |b: &str| {
            let mut v = vec!["--exact-budget", "8", "--backend", b];
            v.extend_from_slice(args);
            run(&v)
        };
        let (ce, re) = with("exact");
        let (cv, rv) = with("evaluated");
        assert_eq!(ce, cv, "{args:?}");
        assert_eq!(re["status"], rv["status"], "{args:?}");
        assert_eq!(re["backend"], "exact");
        assert_eq!(rv["backend"], "evaluated@7/5");
    }
}

#[test]
fn config_file_and_out_path() {
    let dir = std::env::temp_dir().join(format!("dkoszul-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.conf");
    let out = dir.join("report.json");
    std::fs::write(&cfg, "backend = evaluated\nq0 = 5/3\n").unwrap();
    let (code, stdout) = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "dims",
        "--max",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, Value::Null);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["backend"], "evaluated@5/3");
    std::fs::remove_dir_all(&dir).unwrap();
}
