use std::process::{Command, Output};

use gt_core::render::parse_chartable_csv;
use gt_core::{CharTable, GroupParams};
use serde_json::Value;

fn gt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &["chartable", "--q", "5", "--format", "json"][..],
        &["tensor", "--q", "7", "--left", "W:0,3", "--right", "X:9", "--format", "csv"][..],
        &["induct", "--q", "4", "--pi", "V:2"][..],
        &["verify", "--q", "2", "--suite", "tensor-agree", "--format", "json"][..],
    ] {
        let a = gt(args);
        let b = gt(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn chartable_csv_round_trips() {
    let out = gt(&["chartable", "--q", "5", "--format", "csv"]);
    assert!(out.status.success());
    let g = GroupParams::new(5).unwrap();
    let parsed = parse_chartable_csv(&stdout(&out), &g).unwrap();
    let t = CharTable::new(g);
    assert_eq!(parsed.irreps, t.irreps());
    assert_eq!(parsed.classes, t.classes());
    for (i, row) in parsed.values.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            assert_eq!(v, t.value(i, j));
        }
    }
}

#[test]
fn tensor_json_example() {
    let out = gt(&["tensor", "--q", "5", "--left", "V:1", "--right", "W:0,2", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dim_check"], true);
    let total: u64 = v["constituents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let label = c["irrep"].as_str().unwrap();
            let dim = match &label[..1] {
                "U" => 1,
                "V" => 5,
                "W" => 6,
                _ => 4,
            };
            dim * c["mult"].as_u64().unwrap()
        })
        .sum();
    assert_eq!(total, 30);
}

#[test]
fn gelfand_lists_u_and_x() {
    let out = gt(&["gelfand", "--q", "7", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let labels: Vec<&str> = v["gelfand"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert!(labels.iter().all(|l| l.starts_with('U') || l.starts_with('X')));
    assert_eq!(labels.iter().filter(|l| l.starts_with('U')).count(), 6);
    assert_eq!(labels.iter().filter(|l| l.starts_with('X')).count(), 21);
}

#[test]
fn exit_codes() {
    assert_eq!(gt(&["verify", "--q", "3", "--suite", "all"]).status.code(), Some(0));
    let fail = gt(&["verify", "--q", "2", "--suite", "gelfand"]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&fail.stderr).contains("first counterexample"));
    assert!(stdout(&fail).contains("gelfand q=2: FAIL"));
    assert_eq!(gt(&["tensor", "--q", "5", "--left", "V:9", "--right", "U:0"]).status.code(), Some(2));
    assert_eq!(gt(&["tensor", "--q", "6", "--left", "V:0", "--right", "U:0"]).status.code(), Some(2));
    assert_eq!(gt(&["verify", "--q", "3", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(gt(&["verify", "--suite", "census"]).status.code(), Some(2));
    assert_eq!(gt(&["verify", "--q", "4", "--suite", "harmonic"]).status.code(), Some(2));
    assert_eq!(gt(&["frobnicate"]).status.code(), Some(2));
    let bad = gt(&["sl3-restrict", "--q", "4", "--irrep", "piT:9"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("piQS"));
}

#[test]
fn sl3_commands() {
    let out = gt(&["sl3-restrict", "--q", "4", "--irrep", "piRT:1", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let dims: u64 = v["constituents"].as_array().unwrap().len() as u64;
    assert!(dims > 0);
    let one = gt(&["sl3-restrict", "--q", "4", "--irrep", "piRT:11", "--to", "V:1"]);
    assert_eq!(stdout(&one), "[Res piRT:11 : V:1] = 4\n");
    let w = gt(&["sl3-witness", "--q", "7", "--format", "json"]);
    let v: Value = serde_json::from_slice(&w.stdout).unwrap();
    let ws = v["witnesses"].as_array().unwrap();
    assert_eq!(ws.len(), 48);
    assert!(ws.iter().all(|w| w["mult"].as_u64().unwrap() >= 2));
    assert!(ws.iter().any(|w| w["exceeds_two_for_x"] == true));
}

#[test]
fn verify_respects_budget_and_ranges() {
    let out = Command::new(env!("CARGO_BIN_EXE_gt"))
        .args(["verify", "--q", "3", "--suite", "all"])
        .env("GT_BUDGET_SECONDS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("SKIP (budget)"));
    let out = gt(&["verify", "--max-q", "4", "--suite", "all", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["skipped"].as_array().unwrap().iter().any(|s| s["suite"] == "harmonic" && s["q"] == 4));
}
