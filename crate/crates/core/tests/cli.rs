use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const GOLDEN_THETA: &str = "n=6\n1 2 r\n2 3 r\n4 3 g\n4 1 r\n1 6 r\n2 5 r\n5 6 r\n";
/// Unique perfect matching, no cycle with exactly two pegs, yet b_12 = 2i.
const THETA_EIGHT: &str = "n=8\n1 5 r\n2 6 r\n3 4 r\n3 7 r\n4 8 r\n5 7 r\n5 8 g\n6 7 b\n6 8 g\n";

fn tricolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tricolor")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run_on(cmd: &str, path: &Path, extra: &[&str]) -> Output {
    let mut args = vec![cmd, "--input", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    tricolor(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, c) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, c, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Array(rows) if rows.iter().all(|r| r.as_array().is_some_and(|c| c.iter().all(Value::is_string))) && !rows.is_empty() => {
            for (k, r) in rows.iter().enumerate() {
                let cells: Vec<&str> = r.as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
                out.push((format!("{prefix}[{k}]"), cells.join(" ")));
            }
        }
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// `key: value` lines, with matrix rows indented under a bare `key:` line.
fn parse_text(text: &str) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let mut matrix: Option<(String, usize)> = None;
    for line in text.lines() {
        if let Some(row) = line.strip_prefix("  ") {
            let (key, k) = matrix.as_mut().expect("row under a matrix key");
            out.push((format!("{key}[{k}]"), row.to_string()));
            *k += 1;
        } else if let Some(key) = line.strip_suffix(':') {
            matrix = Some((key.to_string(), 0));
        } else {
            let (k, v) = line.split_once(": ").expect("key: value");
            out.push((k.to_string(), v.to_string()));
        }
    }
    out
}

#[test]
fn analyze_golden_theta() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.txt", GOLDEN_THETA);
    let out = run_on("analyze", &b, &["--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["shape"], "bicyclic_theta");
    assert_eq!(v["det"]["combinatorial"], -1);
    assert_eq!(v["det"]["exact"], "-1+0*i");
    assert_eq!(v["verdicts"]["nonsingular"]["holds"], true);
    assert_eq!(v["verdicts"]["zero_diagonal"]["holds"], true);
    assert_eq!(v["verdicts"]["unimodular"]["holds"], true);
    assert_eq!(v["verdicts"]["inverse_3colored"]["holds"], false);
}

#[test]
fn analyze_small_trees() {
    let dir = TempDir::new().unwrap();
    let k2 = run_on("analyze", &write(&dir, "k2.txt", "n=2\n1 2 r\n"), &["--format", "json"]);
    assert_eq!(k2.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&k2)).unwrap();
    assert_eq!((v["shape"].as_str(), v["det"]["combinatorial"].as_i64()), (Some("tree"), Some(-1)));
    let star = run_on("analyze", &write(&dir, "star.txt", "n=4\n1 2 r\n1 3 r\n1 4 r\n"), &["--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&star)).unwrap();
    assert_eq!(v["det"]["combinatorial"], 0);
}

#[test]
fn text_and_json_agree_on_every_field() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [("b.txt", GOLDEN_THETA), ("t.txt", THETA_EIGHT), ("c4.txt", "n=4\n1 2 g\n2 3 r\n3 4 r\n4 1 r\n")] {
        let p = write(&dir, name, text);
        for cmd in ["analyze", "classify", "invert"] {
            let json: Value = serde_json::from_str(&stdout(&run_on(cmd, &p, &["--format", "json"]))).unwrap();
            let mut fields = Vec::new();
            flatten("", &json, &mut fields);
            assert_eq!(parse_text(&stdout(&run_on(cmd, &p, &[]))), fields, "{cmd} {name}");
        }
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.txt", GOLDEN_THETA);
    for format in ["text", "json"] {
        let first = run_on("classify", &b, &["--format", format]);
        let second = run_on("classify", &b, &["--format", format]);
        assert_eq!(first.stdout, second.stdout);
    }
}

#[test]
fn invert_prints_the_exact_inverse() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.txt", GOLDEN_THETA);
    for method in ["combinatorial", "algebraic", "both"] {
        let out = run_on("invert", &b, &["--method", method, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0), "{method}");
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["inverse"][2][5], "-1+0*i");
        assert_eq!(v["inverse"][4][5], "1-1*i");
        assert_eq!(v["inverse"][5][4], "1+1*i");
    }
    let c4 = write(&dir, "c4.txt", "n=4\n1 2 g\n2 3 r\n3 4 r\n4 1 r\n");
    let v: Value = serde_json::from_str(&stdout(&run_on("invert", &c4, &["--format", "json"]))).unwrap();
    // every nonzero entry is (±1 ± i)/2
    let expected = [
        ["0+0*i", "-1/2+1/2*i", "0+0*i", "1/2-1/2*i"],
        ["-1/2-1/2*i", "0+0*i", "1/2+1/2*i", "0+0*i"],
        ["0+0*i", "1/2-1/2*i", "0+0*i", "1/2+1/2*i"],
        ["1/2+1/2*i", "0+0*i", "1/2-1/2*i", "0+0*i"],
    ];
    assert_eq!(v["det"], "2+0*i");
    assert_eq!(v["inverse"], serde_json::json!(expected));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "n=3\n1 2 x\n");
    assert_eq!(run_on("analyze", &bad, &[]).status.code(), Some(1));
    let disconnected = write(&dir, "disc.txt", "n=4\n1 2 r\n3 4 r\n");
    assert_eq!(run_on("analyze", &disconnected, &[]).status.code(), Some(1));
    let singular = write(&dir, "p3.txt", "n=3\n1 2 r\n2 3 r\n");
    assert_eq!(run_on("invert", &singular, &[]).status.code(), Some(1));
    let tree = write(&dir, "k2.txt", "n=2\n1 2 r\n");
    assert_eq!(run_on("classify", &tree, &[]).status.code(), Some(1));
    let theta = write(&dir, "t.txt", THETA_EIGHT);
    assert_eq!(run_on("classify", &theta, &[]).status.code(), Some(3));
    assert_eq!(tricolor(&["verify", "--family", "unicyclic", "--max-n", "99"]).status.code(), Some(1));
    assert_eq!(tricolor(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn verify_writes_a_report() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("report.json");
    let out = tricolor(&["verify", "--family", "unicyclic", "--max-n", "6", "--report-path", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("counterexamples: 0"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["counterexamples"], 0);
    assert!(v["total_instances"].as_u64().unwrap() > 0);
}

#[test]
fn sampled_verify_is_reproducible() {
    let args = ["verify", "--family", "binf", "--max-n", "7", "--coloring", "sample", "--samples", "40", "--seed", "1", "--format", "json"];
    let a = tricolor(&args);
    let b = tricolor(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_reports_the_first_counterexample() {
    let out = tricolor(&["verify", "--family", "btheta", "--max-n", "8", "--coloring", "sample", "--samples", "3000", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("counterexamples: 4\n"), "{text}");
    assert!(text.contains("first counterexample: predicate_inverse3colored (bicyclic_theta n=8 #398)"), "{text}");
    assert!(text.contains("  graph:\n    n=8\n"));
    assert!(text.contains("inverse_3colored: true"));
    assert!(text.contains("inverse_3colored false"));
}
