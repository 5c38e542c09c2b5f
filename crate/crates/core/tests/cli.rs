use std::process::{Command, Output};

use markov_core::cli::{ApproxReport, FlipStep, FormMinReport, TripleRow};

fn markov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_markov")).args(args).env_remove("MARKOV_PRECISION_BITS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn render_counts_ford_circles() {
    let o = markov(&["render", "--qmax", "5", "--window", "0,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("<circle").count(), 11);
}

#[test]
fn render_matches_golden() {
    let o = markov(&["render", "--qmax", "5", "--window", "0,1", "--triple", "1,1,2", "--scale", "200"]);
    assert_eq!(stdout(&o), include_str!("golden/render_q5.svg"));
}

#[test]
fn render_is_byte_stable_and_writes_files() {
    let dir = std::env::temp_dir().join(format!("markov-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.svg");
    let args = ["render", "--qmax", "9", "--window", "-1/2,3/2", "--geodesic", "1-sqrt(2),1+sqrt(2)", "--geodesic", "1/3,inf", "--svg"];
    let mut a: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    a.push(p);
    assert!(markov(&a).status.success());
    let first = std::fs::read(&path).unwrap();
    assert!(markov(&a).status.success());
    assert_eq!(first, std::fs::read(&path).unwrap());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn spectrum_has_five_rows_below_30() {
    let o = markov(&["spectrum", "--cmax", "29"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 5);
    let o = markov(&["spectrum", "--cmax", "29", "--csv"]);
    assert_eq!(stdout(&o).lines().count(), 6);
}

#[test]
fn tree_json_round_trip() {
    let o = markov(&["tree", "--cmax", "200", "--json"]);
    let rows: Vec<TripleRow> = serde_json::from_str(&stdout(&o)).unwrap();
    let cs: Vec<&str> = rows.iter().map(|r| r.c.as_str()).collect();
    assert_eq!(cs, ["1", "2", "5", "13", "29", "34", "89", "169", "194"]);
    assert_eq!(rows[2].form, "5p^2 - 9pq - 7q^2");
    let again = serde_json::to_string_pretty(&rows).unwrap();
    assert_eq!(again.trim_end(), stdout(&o).trim_end());
}

#[test]
fn precision_env_controls_digits() {
    let o = Command::new(env!("CARGO_BIN_EXE_markov"))
        .args(["tree", "--cmax", "1", "--json"])
        .env("MARKOV_PRECISION_BITS", "100")
        .output()
        .unwrap();
    let rows: Vec<TripleRow> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows[0].lambda_decimal, "2.236067977499789696409173668731");
    let bad = Command::new(env!("CARGO_BIN_EXE_markov")).args(["tree", "--cmax", "1"]).env("MARKOV_PRECISION_BITS", "lots").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn approx_json() {
    let o = markov(&["approx", "--triple", "1,1,1", "--lambda", "sqrt(5)-1/100", "--qmax", "30", "--json"]);
    let rep: ApproxReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep.count, 5);
    assert_eq!(rep.fractions[0], ("2".to_string(), "1".to_string()));
    let o = markov(&["approx", "--x", "sqrt(2)", "--lambda", "2", "--qmax", "100", "--json"]);
    let rep: ApproxReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(rep.fractions.contains(&("99".to_string(), "70".to_string())));
}

#[test]
fn forms_and_flips_json() {
    let o = markov(&["forms", "min", "--form", "1,1,1", "--json"]);
    let rep: FormMinReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep.kind, "definite");
    assert_eq!(rep.m, "2/3*sqrt(3)");
    let o = markov(&["teich", "flip", "--start", "1,1,1", "--moves", "1,2,3", "--json"]);
    let steps: Vec<FlipStep> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(steps.last().unwrap().weights, ["2", "5", "29"].map(String::from));
    assert_eq!(steps.last().unwrap().labels, [3, 4, 5]);
}

#[test]
fn exit_codes() {
    assert_eq!(markov(&["render", "--window", "1,0"]).status.code(), Some(2));
    assert_eq!(markov(&["teich", "flip", "--moves", "1,1"]).status.code(), Some(2));
    assert_eq!(markov(&["approx", "--x", "sqrt(", "--lambda", "2", "--qmax", "5"]).status.code(), Some(2));
    assert_eq!(markov(&["bogus"]).status.code(), Some(2));
    assert_eq!(markov(&["--help"]).status.code(), Some(0));
    let o = markov(&["verify", "--suite", "uniqueness"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("[PASS]"));
}

fn schema(name: &str) -> serde_json::Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/schema/");
    serde_json::from_str(&std::fs::read_to_string(format!("{path}{name}.schema.json")).unwrap()).unwrap()
}

// Keys emitted must be exactly the keys each schema requires.
fn assert_keys(obj: &serde_json::Value, object_schema: &serde_json::Value) {
    let mut have: Vec<&String> = obj.as_object().unwrap().keys().collect();
    let mut want: Vec<&str> = object_schema["required"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    have.sort();
    want.sort();
    assert_eq!(have, want);
}

#[test]
fn outputs_follow_documented_schemas() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&markov(&["tree", "--cmax", "13", "--json"]))).unwrap();
    assert_keys(&v[0], &schema("tree")["items"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&markov(&["spectrum", "--cmax", "13", "--json"]))).unwrap();
    assert_keys(&v[0], &schema("tree")["items"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&markov(&["approx", "--x", "sqrt(3)", "--lambda", "2", "--qmax", "9", "--json"]))).unwrap();
    assert_keys(&v, &schema("approx"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&markov(&["forms", "min", "--form", "1,0,-3", "--json"]))).unwrap();
    assert_keys(&v, &schema("form_min"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&markov(&["teich", "flip", "--moves", "2", "--json"]))).unwrap();
    assert_keys(&v[1], &schema("flip")["items"]);
    assert!(v[0]["edge"].is_null());
}
