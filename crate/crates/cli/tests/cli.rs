use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn grint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grint"))
        .args(args)
        .output()
        .expect("run grint")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path: PathBuf = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

const TWO_CYCLE: &str = "vertex v\nvertex w\nv -> w\nw -> v\n";
const FAMILY_3: &str = "v1 -> v0\nw1 -> v0\nv2 -> v1\nv3 -> v2\nw2 -> w1\n";

#[test]
fn two_cycle_ktheory() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c2.txt", TWO_CYCLE);
    let out = grint(&["ktheory", &f, "--presentation", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["K0"]["rank"], 1);
    assert_eq!(v["K1"]["rank"], 1);
    assert_eq!(v["pv_oracle_agrees"], true);
    assert_eq!(v["core_presentation"]["rank"], 2);
}

#[test]
fn family_graph_misses_exactly_its_parameter() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "fam.txt", FAMILY_3);
    let out = grint(&["powers", &f]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["members"], serde_json::json!([1, 2, 4, 5, 6]));
    assert_eq!(v["oracles_agree"], true);
    let note = v["family_note"].as_str().unwrap();
    assert!(note.contains("parameter n = 3"), "{note}");
    assert!(note.contains("except k = 3"), "{note}");
}

#[test]
fn injected_disagreement_exits_3() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c2.txt", TWO_CYCLE);
    let out = grint(&["powers", &f, "--inject-fault"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["oracles_agree"], false);
    assert!(String::from_utf8_lossy(&out.stderr).contains("interaction powers"));
}

#[test]
fn parse_errors_exit_1() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.txt", "a -> \n");
    let out = grint(&["analyze", &f]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    assert_eq!(grint(&["analyze", "/nonexistent/graph.txt"]).status.code(), Some(1));
    let f = write(&dir, "loose.txt", "vertex a\na -> b\n");
    assert_eq!(grint(&["--strict", "ktheory", &f]).status.code(), Some(1));
    assert_eq!(grint(&["ktheory", &f]).status.code(), Some(0));
}

#[test]
fn bad_arguments_exit_2() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c2.txt", TWO_CYCLE);
    assert_eq!(grint(&["verify", &f, "--level", "0"]).status.code(), Some(2));
    assert_eq!(grint(&["powers", &f, "--max-power", "0"]).status.code(), Some(2));
    assert_eq!(grint(&["dynamics", &f, "--point", "e1.e1!"]).status.code(), Some(2));
    assert_eq!(grint(&["analyze", &f, "--depth", "1"]).status.code(), Some(2));
}

#[test]
fn verify_passes_on_two_cycle() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c2.txt", TWO_CYCLE);
    let out = grint(&["verify", &f, "--level", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["ck_full_space_defect_detected"], true);
    assert_eq!(v["axioms"].as_array().unwrap().len(), 3);
}

#[test]
fn bratteli_dot_to_file_and_stdout() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c2.txt", TWO_CYCLE);
    let out = grint(&["bratteli", &f, "--levels", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph bratteli {"));
    assert!(dot.contains("n0_0 -> n1_1"));
    let target = dir.path().join("b.dot");
    let out = grint(&["bratteli", &f, "--levels", "2", "--dot", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(target).unwrap(), dot);
}

#[test]
fn dynamics_of_a_sink_path() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ch.txt", "u -> v\nv -> w\n");
    let out = grint(&["dynamics", &f, "--point", "e1.e2!"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["periodic_orbits"], serde_json::json!([]));
    assert_eq!(v["point"]["shift_class"], "e2!");
    assert_eq!(v["point"]["basis_sets"][0], serde_json::json!(["u"]));
}

#[test]
fn analyze_json_is_deterministic_and_text_summarizes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c2.txt", TWO_CYCLE);
    let a = grint(&["analyze", &f]);
    let b = grint(&["analyze", "--json", &f]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["failures"], serde_json::json!([]));
    assert_eq!(v["structure"]["condition_l"], false);
    let text = String::from_utf8(grint(&["analyze", "--text", &f]).stdout).unwrap();
    assert!(text.contains("K0 = Z, K1 = Z"), "{text}");
}

#[test]
fn json_graph_input() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "g.json",
        r#"{"vertices": ["v"], "edges": [{"src": "v", "dst": "v"}, {"src": "v", "dst": "v"}, {"src": "v", "dst": "v"}]}"#,
    );
    let out = grint(&["ktheory", &f]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["K0"]["rank"], 0);
    assert_eq!(v["K0"]["torsion"], serde_json::json!([2]));
}
