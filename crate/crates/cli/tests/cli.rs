use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    root.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semidist")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn payload(args: &[&str]) -> Value {
    let v: Value = serde_json::from_str(&stdout(args)).unwrap();
    v["payload"].clone()
}

fn error_code(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(1), "{args:?}");
    let v: Value = serde_json::from_slice(&out.stderr).expect("structured error");
    v["error"]["code"].as_str().unwrap().to_string()
}

fn temp_file(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("semidist-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn classify_semi_fig() {
    let p = payload(&["classify", &data("semi_fig.json")]);
    assert_eq!(p["two_acyclic"], true);
    assert_eq!(p["lattice"]["size"], 6);
    assert_eq!(p["lattice"]["semidistributive"], true);
    assert_eq!(p["lattice"]["extremal"], false);
}

#[test]
fn classify_text_format() {
    let s = stdout(&["classify", &data("semi_fig.json"), "--format", "text"]);
    assert!(s.contains("lattice.semidistributive: ✓"));
    assert!(s.contains("lattice.extremal: ✗"));
}

#[test]
fn pairs_count_of_ext_fig() {
    assert_eq!(stdout(&["pairs", &data("ext_fig.json"), "--count"]).trim(), "9");
}

#[test]
fn pairs_lists_torsion_sets() {
    let p = payload(&["pairs", &data("semi_fig.json")]);
    let mut torsion: Vec<String> = p["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|q| q["torsion"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect())
        .collect();
    torsion.sort();
    assert_eq!(torsion, ["", "1", "1234", "13", "24", "4"]);
}

#[test]
fn generate_then_roundtrip() {
    let doc = stdout(&["generate", "weak_order_sn", "--n", "3"]);
    let path = temp_file("s3.json", &doc);
    let s = stdout(&["roundtrip", &path, "--format", "text"]);
    assert_eq!(s.trim(), "isomorphism verified: 6 elements");
}

#[test]
fn generate_writes_output_file() {
    let path = std::env::temp_dir().join(format!("semidist-cli-{}-dr.json", std::process::id()));
    let p = path.to_string_lossy().into_owned();
    stdout(&["generate", "doubling_random", "--steps", "4", "--seed", "9", "-o", &p]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["kind"], "lattice");
    assert_eq!(v["meta"]["seed"], 9);
    let c = payload(&["classify", &p]);
    assert_eq!(c["congruence_uniform"], true);
}

#[test]
fn extract_gives_valid_system() {
    let doc = stdout(&["generate", "tamari", "--n", "3"]);
    let path = temp_file("t3.json", &doc);
    let sys = stdout(&["extract", &path]);
    let sys_path = temp_file("t3sys.json", &sys);
    assert_eq!(payload(&["validate", &sys_path])["valid"], true);
    assert_eq!(stdout(&["pairs", &sys_path, "--count"]).trim(), "5");
}

#[test]
fn covers_and_cjr_of_top() {
    let c = payload(&["covers", &data("semi_fig.json"), "--set", "1,2,3,4"]);
    assert_eq!(c["covers"][0]["cov"], serde_json::json!(["1", "4"]));
    let j = payload(&["cjr", &data("semi_fig.json"), "--set", "1,2,3,4"]);
    assert_eq!(j["cjr"][0]["cjr"], serde_json::json!([["1"], ["4"]]));
    assert_eq!(error_code(&["covers", &data("semi_fig.json"), "--set", "2"]), "not_closed");
}

#[test]
fn cjcomplex_edge() {
    let p = payload(&["cjcomplex", &data("semi_fig.json")]);
    assert_eq!(p["edges"], serde_json::json!([["1", "4"]]));
}

#[test]
fn forcing_and_congruences() {
    let f = payload(&["forcing", &data("semi_fig.json")]);
    assert_eq!(f["edges"].as_array().unwrap().len(), 4);
    assert_eq!(f["congruence_uniform"], true);
    let c = payload(&["con", &data("semi_fig.json"), "--brute"]);
    assert_eq!(c["size"], 7);
    assert_eq!(c["agree"], true);
    let f = payload(&["forcing", &data("sd_not_cu.json")]);
    assert_eq!(f["congruence_uniform"], false);
}

#[test]
fn quotients() {
    let q = payload(&["quotients", &data("semi_fig.json"), "--upset", "1,4"]);
    assert_eq!(q["quotient_size"], 4);
    let all = payload(&["quotients", &data("semi_fig.json")]);
    assert_eq!(all["count"], 7);
    assert_eq!(error_code(&["quotients", &data("semi_fig.json"), "--upset", "2,3"]), "not_a_forcing_upset");
}

#[test]
fn interval_and_double() {
    let iv = stdout(&["interval", &data("semi_fig.json"), "--lo", "4", "--hi", "2,4"]);
    let iv_path = temp_file("iv.json", &iv);
    assert_eq!(stdout(&["pairs", &iv_path, "--count"]).trim(), "2");
    let d = stdout(&["double", &data("semi_fig.json"), "--lo", "4", "--hi", "2,4"]);
    let d_path = temp_file("dbl.json", &d);
    assert_eq!(stdout(&["pairs", &d_path, "--count"]).trim(), "8");
    assert_eq!(error_code(&["double", &data("semi_fig.json"), "--lo", "1", "--hi", "4"]), "not_comparable");
    let l = stdout(&["generate", "chain", "--n", "2"]);
    let l_path = temp_file("c2.json", &l);
    let d = payload(&["double", &l_path, "--lo", "0", "--hi", "0"]);
    assert_eq!(d["size"], 3);
}

#[test]
fn markowsky_both_directions() {
    let l = stdout(&["generate", "boolean", "--n", "2"]);
    let l_path = temp_file("b2.json", &l);
    let two = stdout(&["markowsky", &l_path]);
    let two_path = temp_file("b2two.json", &two);
    assert_eq!(serde_json::from_str::<Value>(&two).unwrap()["kind"], "two_set_relation");
    assert_eq!(payload(&["markowsky", &two_path])["size"], 4);
}

#[test]
fn extremal_of_ext_fig() {
    let p = payload(&["extremal", &data("ext_fig.json")]);
    assert_eq!(p["extremal"], true);
    assert_eq!(p["chain_length"], 4);
    assert_eq!(p["mu"]["unique"], true);
}

#[test]
fn render_outputs() {
    let s = stdout(&["render", &data("semi_fig.json")]);
    assert_eq!(s.matches(" -> ").count(), 6);
    let l = stdout(&["generate", "chain", "--n", "2"]);
    let s = stdout(&["render", &temp_file("c2r.json", &l)]);
    assert_eq!(s.matches(" -> ").count(), 1);
}

#[test]
fn domain_errors_are_structured() {
    assert_eq!(error_code(&["validate", &data("ext_fig.json")]), "diagnostics_failure");
    assert_eq!(error_code(&["validate", "/nonexistent/file.json"]), "io_error");
    let bad = temp_file("bad.json", "{not json");
    assert_eq!(error_code(&["classify", &bad]), "parse_error");
    let report = stdout(&["con", &data("semi_fig.json")]);
    assert_eq!(error_code(&["render", &temp_file("rep.json", &report)]), "kind_mismatch");
    let m3 = temp_file("m3.json", r#"{"size": 5, "covers": [[0, 1], [0, 2], [0, 3], [1, 4], [2, 4], [3, 4]]}"#);
    assert_eq!(error_code(&["extract", &m3]), "not_semidistributive");
    assert_eq!(error_code(&["generate", "weak_order_sn", "--n", "12"]), "size_limit_exceeded");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["pairs"]).status.code(), Some(2));
    assert_eq!(run(&["generate", "nope"]).status.code(), Some(2));
}
