use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiveralg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

const A2: &str = "vertices 3\narrow b1 2 1\narrow b2 3 2\nrelation b1*b2\n";

fn file_with(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn analyze_canonical_a3() {
    let v = json(&["analyze", "fixture:A3"]);
    assert_eq!(v["gl_dim"], 3);
    assert!(v["auslander_order"].as_u64().unwrap() >= 2);
    assert_eq!(v["is_nakayama"], true);
    assert_eq!(v["admits_trivial_mos"]["holds"], true);
    assert_eq!(v["blocks"], serde_json::json!([[1, 2, 3, 4]]));
}

#[test]
fn enumerate_without_candidates() {
    let o = run(&["enumerate", "fixture:E410-2", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0 candidates"));
    let v = json(&["enumerate", "fixture:A2", "--n", "1"]);
    assert_eq!(v["candidates"].as_array().unwrap().len(), 1);
    assert_eq!(v["candidates"][0]["is_trivial"], true);
    assert_eq!(v["ext"].as_array().unwrap().len(), 1);
}

#[test]
fn resolve_e66_simple() {
    let o = run(&["resolve", "fixture:E66", "--module", "S2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 -> P(2) -> P(1) -> P(2) -> S2 -> 0"));
    let v = json(&["resolve", "fixture:E66", "--module", "S(2)"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    assert_eq!(v["exhausted"], true);
}

#[test]
fn ext_dimension() {
    let o = run(&["ext", "fixture:A2", "S2", "S1", "1"]);
    assert_eq!(stdout(&o), "dim Ext^1(S2, S1) = 1\n");
    assert_eq!(json(&["ext", "fixture:E64", "I3", "P3", "1"])["dim"], 1);
}

#[test]
fn verify_reports_and_skips() {
    let o = run(&["verify", "fixture:A2", "--theorem", "all"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
    let v = json(&["verify", "fixture:E64", "--theorem", "Prop6.2-contrapositive"]);
    assert_eq!(v["passed"], true);
    let o = run(&["verify", "fixture:E64", "--theorem", "Thm4.4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_is_deterministic() {
    for args in [
        vec!["analyze", "fixture:E65", "--format", "json"],
        vec!["enumerate", "fixture:REM", "--n", "1", "--format", "json"],
        vec!["verify", "fixture:A3", "--theorem", "all", "--format", "json"],
        vec!["fixtures", "--format", "json"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "fixture:A1"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "fixture:Nope"]).status.code(), Some(2));
    assert_eq!(run(&["resolve", "fixture:A2", "--module", "S9"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "fixture:A2", "--theorem", "Thm0.0"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    let broken = file_with("vertices 3\narrow b1 2\n");
    let o = run(&["analyze", broken.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let o = run(&["resolve", "fixture:E66", "--module", "S2", "--max-len", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn file_input_with_modules() {
    let text = format!("{A2}\nmodule M\n  dims = [1, 1, 0]\n  b1 = [[1]]\n  b2 = []\nend\n");
    let f = file_with(&text);
    let path = f.path().to_str().unwrap();
    let v = json(&["analyze", path]);
    assert_eq!(v["gl_dim"], 2);
    let o = run(&["ext", path, "M", "S1", "1"]);
    assert_eq!(stdout(&o), "dim Ext^1(M, S1) = 0\n");
    let o = run(&["resolve", path, "--module", "M"]);
    assert!(stdout(&o).contains("P_0 = P(2)"));
}

#[test]
fn fixtures_listing() {
    let o = run(&["fixtures"]);
    let text = stdout(&o);
    for tag in ["fixture:A2", "fixture:E410-2", "fixture:E65", "fixture:E66", "fixture:REM"] {
        assert!(text.contains(tag), "{tag}");
    }
}
