use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qsym_core::analyzer::{analyze, AnalysisConfig, AnalysisReport, Verdict};
use qsym_core::composition::{pullback, skeleton_count};
use qsym_core::equivalence::{automorphisms, GroupReport, Permutation};
use qsym_core::fixtures::{example_b, example_c, graph_fixture, EX_B_JSON, EX_C_JSON, GRAPHS};
use qsym_core::json::{parse_triple, triple_to_json};
use qsym_core::ncalgebra::SaturationDump;
use qsym_core::presentation::{canonicalize, generate, Presentation};
use serde_json::Value;
use tempfile::TempDir;

fn qsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsym")).args(args).output().expect("qsym runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let out = qsym(args);
    assert_eq!(out.status.code(), Some(0), "qsym {args:?}: {}", stderr(&out));
    stdout(&out)
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Files {
    _dir: TempDir,
    b: PathBuf,
    c: PathBuf,
    k4: PathBuf,
}

fn files() -> Files {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.json", &run_ok(&["fixtures", "export", "ex-b"]));
    let c = write(&dir, "c.json", &run_ok(&["fixtures", "export", "ex-c"]));
    let k4 = write(&dir, "k4.json", &run_ok(&["fixtures", "export", "k4"]));
    Files { _dir: dir, b, c, k4 }
}

#[test]
fn exported_fixtures_are_byte_identical() {
    assert_eq!(run_ok(&["fixtures", "export", "ex-b"]), EX_B_JSON);
    assert_eq!(run_ok(&["fixtures", "export", "ex-c"]), EX_C_JSON);
    for (name, text) in GRAPHS {
        assert_eq!(run_ok(&["fixtures", "export", name]), *text, "{name}");
    }
    let list: Value = serde_json::from_str(&run_ok(&["fixtures", "list", "--json"])).unwrap();
    assert_eq!(list["triples"], serde_json::json!(["ex-b", "ex-c", "pullback"]));
}

#[test]
fn unique_theta_for_the_two_cycle_example() {
    let f = files();
    assert_eq!(run_ok(&["theta-count", s(&f.b)]), "1\n");
    let doc: Value = serde_json::from_str(&run_ok(&["theta-count", s(&f.b), "--json"])).unwrap();
    assert_eq!(doc["theta_count"], "1");

    let listed: Value = serde_json::from_str(&run_ok(&["theta-enum", s(&f.b), "--json"])).unwrap();
    assert_eq!(listed["thetas"].as_array().unwrap().len(), 1);
    let shipped: Value = serde_json::from_str(EX_B_JSON).unwrap();
    assert_eq!(listed["thetas"][0], shipped["theta"]);
}

#[test]
fn thirty_six_pairs_in_the_twisted_example() {
    let f = files();
    assert_eq!(run_ok(&["pairs", s(&f.c)]).lines().count(), 36);
    let doc: Value = serde_json::from_str(&run_ok(&["pairs", s(&f.c), "--json"])).unwrap();
    let pairs = doc["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 36);
    let t = example_c();
    for (p, want) in pairs.iter().zip(t.pairs12()) {
        let (e, f) = t.ids12(want);
        assert_eq!(p, &serde_json::json!([e, f]));
    }
}

#[test]
fn analyze_json_round_trips() {
    let f = files();
    let text = run_ok(&["analyze", s(&f.b), "--degree-bound", "3", "--json", "--jobs", "2"]);
    let report: AnalysisReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report, analyze(&example_b(), AnalysisConfig::with_bound(3)).unwrap());
    assert_eq!(report.verdict, Verdict::ClassicalAndIdentified);
    assert_eq!(report.classical_group.name, "Z2 x Z2");
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
}

#[test]
fn analyze_text_and_ideal_dump() {
    let f = files();
    let dir = TempDir::new().unwrap();
    let dump = dir.path().join("ideal.json");
    let text = run_ok(&["analyze", s(&f.c), "--dump-ideal", s(&dump)]);
    assert!(text.contains("Commutativity: proved"), "{text}");
    assert!(text.contains("Zero entries: q01, q02, q10, q13, q20, q23, q31, q32"), "{text}");
    assert!(text.contains("Verdict: classical-and-identified"), "{text}");
    let parsed: SaturationDump = serde_json::from_str(&std::fs::read_to_string(&dump).unwrap()).unwrap();
    assert_eq!(parsed.degree_bound, 4);
    assert_eq!(parsed.rank, parsed.basis.len());
}

#[test]
fn inconclusive_analysis_still_succeeds() {
    let f = files();
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "pk4.json", &run_ok(&["pullback", s(&f.k4)]));
    let text = run_ok(&["analyze", s(&t), "--degree-bound", "2"]);
    assert!(text.contains("Verdict: inconclusive-possibly-quantum"), "{text}");
    assert!(text.contains("S4 (order 24)"), "{text}");
}

#[test]
fn aut_and_presentation_default_to_json() {
    let f = files();
    let g: GroupReport = serde_json::from_str(&run_ok(&["aut", s(&f.b)])).unwrap();
    assert_eq!(g, automorphisms(&example_b()).unwrap());
    assert!(run_ok(&["aut", s(&f.b), "--text"]).starts_with("Z2 x Z2 (order 4, abelian)"));

    let p = Presentation::from_json(&run_ok(&["presentation", s(&f.b)])).unwrap();
    assert_eq!(p, canonicalize(&generate(&example_b()).unwrap()));
    let raw = Presentation::from_json(&run_ok(&["presentation", s(&f.b), "--raw"])).unwrap();
    assert_eq!(raw, generate(&example_b()).unwrap());
}

#[test]
fn pullback_and_skeleton() {
    let f = files();
    let text = run_ok(&["pullback", s(&f.k4)]);
    let t = parse_triple(&text).unwrap();
    assert_eq!(t, pullback(&graph_fixture("k4").unwrap()).unwrap());
    assert_eq!(text, triple_to_json(&t));

    let doc: Value = serde_json::from_str(&run_ok(&["skeleton", s(&f.b), "--m", "2", "--n", "1", "--json"])).unwrap();
    let expected = skeleton_count(&example_b(), 2, 1).unwrap().rows();
    assert_eq!(doc["matrix"], serde_json::to_value(expected).unwrap());
}

#[test]
fn equivalence_exit_codes() {
    let f = files();
    let doc: Value = serde_json::from_str(&run_ok(&["equiv", s(&f.b), s(&f.b), "--all", "--json"])).unwrap();
    assert_eq!(doc["equivalent"], true);
    let witnesses: Vec<Permutation> = serde_json::from_value(doc["witnesses"].clone()).unwrap();
    assert_eq!(witnesses, automorphisms(&example_b()).unwrap().elements);

    let out = qsym(&["equiv", s(&f.b), s(&f.c)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "not equivalent\n");

    let dir = TempDir::new().unwrap();
    let one = write(&dir, "one.json", &run_ok(&["fixtures", "export", "pullback", "--graph", "loop"]));
    assert_eq!(qsym(&["equiv", s(&f.b), s(&one)]).status.code(), Some(1));
}

#[test]
fn validation_and_input_errors() {
    let f = files();
    assert_eq!(run_ok(&["validate", s(&f.c)]), "valid triple\n");

    let dir = TempDir::new().unwrap();
    let sink =
        write(&dir, "sink.json", r#"{"vertices": ["a", "b"], "edges": [{"id": "e", "source": "a", "target": "b"}]}"#);
    let out = qsym(&["validate", s(&sink), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["valid"], false);
    assert_eq!(doc["problems"].as_array().unwrap().len(), 2);

    let broken = write(&dir, "broken.json", "{\n  \"vertices\": [\"a\",\n");
    let out = qsym(&["validate", s(&broken)]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("broken.json") && err.contains("line 3"), "{err}");

    let out = qsym(&["aut", s(&f.k4)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("expected a triple"));

    let out = qsym(&["aut", s(&dir.path().join("missing.json"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("missing.json"));
}

#[test]
fn usage_errors_name_the_flag() {
    let out = qsym(&["analyze", "x.json", "--degree-bound", "zero"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--degree-bound"));
    let out = qsym(&["pairs", "x.json", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--frobnicate"));
    assert_eq!(qsym(&["fixtures", "export", "ex-b", "--graph", "k4"]).status.code(), Some(2));
    assert_eq!(qsym(&["fixtures", "export", "nope"]).status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_three() {
    let f = files();
    let out = qsym(&["analyze", s(&f.c), "--budget", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn random_fixtures_follow_the_seed() {
    let a = run_ok(&["fixtures", "random", "--n", "5", "--seed", "9"]);
    assert_eq!(a, run_ok(&["fixtures", "random", "--n", "5", "--seed", "9"]));
    let t = parse_triple(&a).unwrap();
    assert!(t.vertex_count() <= 5);
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "r.json", &a);
    assert!(run_ok(&["validate", s(&path)]).starts_with("valid triple\n"));
}
