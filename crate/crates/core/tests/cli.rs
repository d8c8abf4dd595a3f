use std::process::Command;

use deligne_core::cli::run;
use deligne_core::delcat::cache_version;
use serde_json::Value;

fn deligne(args: &[&str]) -> (i32, Value) {
    let out = run(std::iter::once("deligne").chain(args.iter().copied()));
    let v = if out.stdout.is_empty() { Value::Null } else { serde_json::from_str(&out.stdout).expect("json report") };
    (out.code, v)
}

fn write_tmp(name: &str, v: &Value) -> String {
    let dir = std::env::temp_dir().join(format!("deligne-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn gram_report_for_one_point() {
    let (code, v) = deligne(&["cat", "gram", "--max-size", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["cache_version"], cache_version());
    let g = &v["gram"][1];
    assert_eq!(g["object"], "[1]");
    assert_eq!(g["determinant"], "T^3 - T^2");
    let roots: Vec<&str> = g["roots"].as_array().unwrap().iter().map(|r| r["root"].as_str().unwrap()).collect();
    assert_eq!(roots, ["0", "1"]);
}

#[test]
fn oracle_verify_small_sizes() {
    let (code, v) = deligne(&["oracle", "verify", "--sizes", "1,1,1", "--n-range", "3..6"]);
    assert_eq!(code, 0);
    assert_eq!(v["n"], serde_json::json!([3, 4, 5, 6]));
    for pair in v["pairs"].as_array().unwrap() {
        for t in pair["terms"].as_array().unwrap() {
            assert_eq!(t["values"], t["oracle"]);
        }
    }
    let (code, _) = deligne(&["oracle", "verify", "--sizes", "1,1", "--n-range", "3..6"]);
    assert_eq!(code, 2);
}

#[test]
fn corrupted_yobject_names_the_failing_component() {
    let (code, v) = deligne(&["daha", "ev", "--a", "0", "--sizes", "1"]);
    assert_eq!(code, 0);
    let mut y = v["yobject"].clone();
    let c = y["y"]["blocks"][0][0][0][1].as_str().unwrap().to_string();
    y["y"]["blocks"][0][0][0][1] = Value::String(format!("{c} + 1"));
    let path = write_tmp("bad_y.json", &y);
    let (code, v) = deligne(&["daha", "check", "--input", &path]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
    let w = &v["checks"][0]["witness"];
    assert_eq!(w["source_word"], "(1,1,1)");
    assert!(w["recollement"].as_str().unwrap().starts_with('{'));
}

#[test]
fn evaluation_report_surfaces_the_constants() {
    let (code, v) = deligne(&["daha", "ev", "--sizes", "2", "--check-n", "3..4"]);
    assert_eq!(code, 0);
    assert_eq!(v["ev_constants"]["transposition"], "1/2");
    assert_eq!(v["ev_constants"]["reconciled"], false);
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(run(["deligne", "nonsense"]).code, 2);
    assert_eq!(run(["deligne", "cat", "gram", "--max-size", "9"]).code, 2);
    assert_eq!(run(["deligne", "daha", "check", "--input", "/nonexistent/y.json"]).code, 2);
    assert_eq!(run(["deligne", "daha", "check", "--input", "{\"object\": 3}"]).code, 2);
    assert_eq!(run(["deligne", "--help"]).code, 0);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["deligne", "rec", "enumerate", "--src", "2", "--tgt", "1", "--group", "z2"],
        vec!["deligne", "knop", "compare", "--max", "1", "--format", "text"],
        vec!["deligne", "cat", "jm", "--sizes", "1,1"],
    ] {
        let a = run(args.clone());
        let b = run(args);
        assert_eq!(a, b);
        assert_eq!(a.code, 0);
    }
}

#[test]
fn text_tables_are_fixed_width() {
    let out = run(["deligne", "rec", "enumerate", "--src", "1", "--tgt", "2", "--format", "text"]);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[2], "#  recollement  ambient");
    assert_eq!(lines[3], "-  -----------  -------");
    assert!(lines.contains(&"0  1->2 {}      3"));
    assert_eq!(*lines.last().unwrap(), "status pass");
}

#[test]
fn wreath_and_knop_commands() {
    let (code, v) = deligne(&["wreath", "vchi", "--chi", "1,-1", "--sizes", "1", "--check-n", "3..4"]);
    assert_eq!(code, 0);
    let x = write_tmp("vchi.json", &v["wobject"]);
    assert_eq!(deligne(&["wreath", "dual", "--x", &x]).0, 0);
    assert_eq!(deligne(&["wreath", "tensor", "--x", &x, "--y", &x]).0, 0);
    let (code, v) = deligne(&["wreath", "vchi", "--chi", "1,-1", "--sizes", "0"]);
    assert_eq!(code, 0);
    let w = write_tmp("vchi0.json", &v["wobject"]);
    assert_eq!(deligne(&["wreath", "induce", "--w", &w, "--b", &x]).0, 0);
    let mut bad = v["wobject"].clone();
    bad["y"][1]["blocks"][0][0][0][1] = Value::String("2".into());
    let bad = write_tmp("bad_w.json", &bad);
    let (code, v) = deligne(&["wreath", "check", "--input", &bad]);
    assert_eq!(code, 1);
    assert_eq!(v["checks"][0]["witness"]["condition"], "Product");
    let (code, _) = deligne(&["wreath", "vchi", "--chi", "1,2", "--sizes", "1"]);
    assert_eq!(code, 2);
    let f = r#"{"src":1,"tgt":1,"terms":[{"rec":{"src":1,"tgt":1,"matches":[],"labels":[]},"coeff":"1"},{"rec":{"src":1,"tgt":1,"matches":[[0,0]],"labels":["g1"]},"coeff":"2"}]}"#;
    assert_eq!(deligne(&["knop", "compose", "--f", f, "--g", f, "--check-n", "3..4"]).0, 0);
    assert_eq!(deligne(&["knop", "functor", "--input", f]).0, 0);
    assert_eq!(deligne(&["knop", "functor", "--size", "1"]).0, 0);
    assert_eq!(deligne(&["oracle", "verify", "--sizes", "1,1,1", "--n-range", "4..5", "--group", "z2"]).0, 0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_deligne");
    let ok = Command::new(bin).args(["cat", "gram", "--max-size", "0"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().contains("\"status\": \"pass\""));
    let bad = Command::new(bin).args(["cat", "compose"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
