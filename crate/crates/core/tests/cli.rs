use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bwo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bwo")).args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn book_shuffle_and_classify() {
    let dir = tempfile::tempdir().unwrap();
    let book = dir.path().join("book.json");
    let out = bwo(&["book", "new", "--pages", "4", "--genus", "1", "--out", path(&book)]);
    assert_eq!(out.status.code(), Some(0));

    let window = bwo(&["window", path(&book)]);
    assert_eq!(window.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&window.stdout).unwrap();
    assert_eq!(v["components"].as_array().unwrap().len(), 4);

    let shuffled = dir.path().join("shuffled.json");
    assert_eq!(bwo(&["shuffle", path(&book), "2,3,4,1", "--out", path(&shuffled)]).status.code(), Some(0));
    let class = bwo(&["classify-pair", path(&book), path(&shuffled)]);
    assert_eq!(class.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&class.stdout).contains("homeomorphic"));
}

#[test]
fn bad_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    let out = bwo(&["window", path(&missing)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{not json").unwrap();
    assert_eq!(bwo(&["dual-tree", path(&bad)]).status.code(), Some(1));
    assert_eq!(bwo(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn counterexample_report_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = bwo(&["verify-counterexample", "--seed", "3", "--iters", "10", "--out", path(p)]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (ra, rb) = (fs::read_to_string(&a).unwrap(), fs::read_to_string(&b).unwrap());
    assert_eq!(ra, rb);
    let v: serde_json::Value = serde_json::from_str(&ra).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(true));
    assert_eq!(v["rectification"]["sigma"], serde_json::json!([1, 3, 2, 4]));
}

#[test]
fn trace_orbit_emits_csv() {
    let out = bwo(&["trace-orbit", "a1 a2", "--seed", "1", "--iters", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("i,trace_re,trace_im,trlength,mu_i,normalized"));
    assert_eq!(lines.count(), 13);
}

#[test]
fn dual_tree_then_realize() {
    let dir = tempfile::tempdir().unwrap();
    let arcs = dir.path().join("arcs.json");
    fs::write(&arcs, r#"{"base":"disc","order":[1,2,3,4],"chords":[{"from":1,"to":3,"weight":"3/2"}],"spokes":[]}"#).unwrap();
    let tree = dir.path().join("tree.json");
    let out = bwo(&["dual-tree", path(&arcs), "--out", path(&tree)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let real = bwo(&["realize-tree", path(&tree)]);
    assert_eq!(real.status.code(), Some(0), "{}", String::from_utf8_lossy(&real.stderr));
    let v: serde_json::Value = serde_json::from_slice(&real.stdout).unwrap();
    assert_eq!(v["arcs"]["chords"].as_array().unwrap().len(), 1);
}
