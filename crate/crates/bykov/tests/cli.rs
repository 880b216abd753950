use std::path::PathBuf;
use std::process::{Command, Output};

use bykov::tangency::fold_point;
use bykov::ModelConfig;

fn bykov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bykov")).args(args).output().unwrap()
}

fn scratch(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("bykov-cli-{}-{tag}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn data_rows(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).skip(1).collect()
}

#[test]
fn exit_codes() {
    assert_eq!(bykov(&["validate"]).status.code(), Some(0));
    assert_eq!(bykov(&["validate", "--config", "/no/such/file.cfg"]).status.code(), Some(2));
    assert_eq!(bykov(&["frobnicate"]).status.code(), Some(2));

    let d = scratch("invalid");
    let cfg = d.join("bad.cfg");
    std::fs::write(&cfg, "C_v = 1\nE_v = 2\n").unwrap();
    let out = bykov(&["validate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));

    let out = bykov(&["itinerary", "--word", "1+,3+"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("InvalidInput"));
    let _ = std::fs::remove_dir_all(d);
}

#[test]
fn curves_at_zero_unfolding() {
    let d = scratch("zero");
    let out = bykov(&["curves", "--lambda", "0", "--out", d.to_str().unwrap()]);
    assert!(out.status.success());
    for f in ["g.csv", "h.csv"] {
        let text = std::fs::read_to_string(d.join(f)).unwrap();
        let rows = data_rows(&text);
        assert!(!rows.is_empty());
        assert!(rows.iter().all(|r| r.split(',').nth(1).unwrap().parse::<f64>().unwrap() == 0.0));
    }
    for f in ["eta_h.csv", "fold.csv"] {
        let text = std::fs::read_to_string(d.join(f)).unwrap();
        assert!(text.starts_with("# bykov curves\n"));
        assert!(data_rows(&text).is_empty());
    }
    let _ = std::fs::remove_dir_all(d);
}

#[test]
fn fold_file_matches_library() {
    let d = scratch("fold");
    assert!(bykov(&["curves", "--out", d.to_str().unwrap()]).status.success());
    let text = std::fs::read_to_string(d.join("fold.csv")).unwrap();
    let row = data_rows(&text)[0];
    let v: Vec<f64> = row.split(',').map(|s| s.parse().unwrap()).collect();
    let f = fold_point(0.01, &ModelConfig::default()).unwrap();
    assert_eq!((v[0], v[1]), (f.a, f.b));
    let _ = std::fs::remove_dir_all(d);
}

#[test]
fn tangency_table_and_itinerary() {
    let out = bykov(&["tangency"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().filter(|l| l.starts_with("lambda=")).count() >= 3);

    let out = bykov(&["itinerary", "--word", "1+,1+,2+,1+"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("MATCH 4/4"));
}

#[test]
fn escape_without_returns() {
    let out = bykov(&["escape", "--samples", "200", "--horizon", "0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 1);
    assert!(rows.iter().all(|r| r.split(',').nth(2).unwrap().parse::<f64>().unwrap() == 1.0));
}

#[test]
fn seed_override_changes_escape_sample() {
    let a = bykov(&["escape", "--samples", "2000", "--horizon", "1", "--seed", "1"]).stdout;
    let b = bykov(&["escape", "--samples", "2000", "--horizon", "1", "--seed", "2"]).stdout;
    assert_ne!(a, b);
}
