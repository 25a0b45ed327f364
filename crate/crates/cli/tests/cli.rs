use std::process::{Command, Output};

fn ribbonlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ribbonlab"))
        .args(args)
        .env_remove("RIBBONLAB_MAX_EDGES")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn graph_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("ribbonlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

const TORUS_THETA: &str = r#"{"darts": 6, "sigma": [1, 2, 0, 4, 5, 3], "alpha": [3, 4, 5, 0, 1, 2]}"#;

#[test]
fn chi_one_one() {
    let out = ribbonlab(&["chi", "1", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1/12"), "{text}");
    assert!(text.contains("1/6"), "{text}");
}

#[test]
fn chi_json_has_exact_strings() {
    let out = ribbonlab(&["chi", "1", "2", "--closed-form", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["chi_plain"], "1/24");
    assert_eq!(v["closed_form"], "1/24");
}

#[test]
fn labeled_census_has_seven_classes() {
    let out = ribbonlab(&["census", "0", "3", "--labeled", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 7);
    assert_eq!(v["classes"].as_array().unwrap().len(), 7);
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(ribbonlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ribbonlab(&["chi", "one", "1"]).status.code(), Some(2));
    assert_eq!(ribbonlab(&["elliptic", "--case", "oblong"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one_with_their_name() {
    let out = ribbonlab(&["census", "3", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("TooLarge"));

    let out = ribbonlab(&["--max-edges", "5", "census", "1", "2"]);
    assert_eq!(out.status.code(), Some(1));

    let out = ribbonlab(&["strebel03", "1", "-1", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NonPositivePerimeter"));
}

#[test]
fn census_output_is_deterministic_across_jobs() {
    let one = ribbonlab(&["census", "1", "2", "--json", "--jobs", "1"]);
    let four = ribbonlab(&["census", "1", "2", "--json", "--jobs", "4"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn max_edges_environment_variable() {
    let out = Command::new(env!("CARGO_BIN_EXE_ribbonlab"))
        .args(["census", "1", "2"])
        .env("RIBBONLAB_MAX_EDGES", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn graph_commands() {
    let path = graph_file("torus_theta.json", TORUS_THETA);

    let v: serde_json::Value = serde_json::from_str(&stdout(&ribbonlab(&["aut", &path, "--json"]))).unwrap();
    assert_eq!(v["order"], 6);
    assert_eq!(v["exceptional"], true);

    let v: serde_json::Value =
        serde_json::from_str(&stdout(&ribbonlab(&["contract", &path, "--edge", "0", "--json"]))).unwrap();
    assert_eq!(v["darts"], 4);

    let out = ribbonlab(&["contract", &path, "--edge", "7"]);
    assert_eq!(out.status.code(), Some(2));

    let v: serde_json::Value = serde_json::from_str(&stdout(&ribbonlab(&["profile", &path, "--json"]))).unwrap();
    assert_eq!(v["over_infinity"], serde_json::json!([6]));
    assert_eq!(v["riemann_hurwitz"], serde_json::json!([0, 0]));

    let dot = graph_file("theta.dot", "");
    let out = ribbonlab(&["dessin", &path, "--dot", &dot]);
    assert!(out.status.success());
    let dot = std::fs::read_to_string(dot).unwrap();
    assert_eq!(dot.matches("fillcolor=black").count(), 2);
    assert_eq!(dot.matches("fillcolor=white").count(), 3);
}

#[test]
fn expand_star_vertex() {
    let path = graph_file(
        "one_vertex.json",
        r#"{"darts": 4, "sigma": [1, 2, 3, 0], "alpha": [2, 3, 0, 1]}"#,
    );
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&ribbonlab(&["expand", &path, "--vertex", "0", "--json"]))).unwrap();
    assert_eq!(v["count"], 2);
}

#[test]
fn belyi_values() {
    let path = graph_file("theta_unit.json", TORUS_THETA);
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&ribbonlab(&["belyi", &path, "--at", "0:0.5:0", "--json"]))).unwrap();
    let value = v["value"].as_array().unwrap();
    assert!((value[0].as_f64().unwrap() - 1.0).abs() < 1e-15);

    let bad = ribbonlab(&["belyi", &path, "--at", "0:0.5"]);
    assert_eq!(bad.status.code(), Some(2));

    let half = graph_file(
        "theta_half.json",
        r#"{"darts": 6, "sigma": [1, 2, 0, 4, 5, 3], "alpha": [3, 4, 5, 0, 1, 2], "lengths": ["1/2", "1", "1"]}"#,
    );
    let out = ribbonlab(&["belyi", &half, "--at", "0:0.25:0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NonIntegralLength"));
}

#[test]
fn strebel_json_roundtrips_lengths() {
    let out = ribbonlab(&["strebel03", "1", "2", "5/2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["case"], "positive");
    assert_eq!(v["lengths"], serde_json::json!(["3/4", "7/4", "1/4"]));
}

#[test]
fn elliptic_report() {
    let out = ribbonlab(&["elliptic", "--case", "square", "--report", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["pullback_residual"].as_f64().unwrap() < 1e-6);
    let g2 = v["g2"].as_array().unwrap();
    assert!((g2[0].as_f64().unwrap() - 4.0).abs() < 1e-9);
}

#[test]
fn json_to_file() {
    let path = graph_file("chi.json", "");
    let out = ribbonlab(&["chi", "1", "1", "--json", &path]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["chi_orbifold"], "1/6");
}
