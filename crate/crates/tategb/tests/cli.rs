//! End-to-end checks of the command-line binary: exit codes, determinism,
//! and the documented output shapes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn write_problem(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("tategb-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn tategb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tategb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn uagb_reproduces_the_worked_example() {
    let path = write_problem(
        "worked.json",
        r#"{"prime": 7, "variables": ["x", "y"], "generators": ["x - 7*y", "y - 7*y^2"]}"#,
    );
    let out = tategb(&["uagb", path.to_str().unwrap()]);
    let doc = stdout_json(&out);
    let gens: Vec<String> = doc["result"]["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert!(gens.contains(&"x^2 - x".to_string()));
    assert!(gens.contains(&"x - 7*y".to_string()));
}

#[test]
fn runs_are_byte_identical() {
    let path = write_problem(
        "det.json",
        r#"{"prime": 7, "variables": ["x", "y"], "generators": ["x - 7*y", "y - 7*y^2"]}"#,
    );
    let a = tategb(&["uagb", path.to_str().unwrap()]);
    let b = tategb(&["uagb", path.to_str().unwrap()]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let trop = write_problem(
        "trop.json",
        r#"{"prime": 2, "variables": ["x", "y", "z"], "generators": ["x + y + z"]}"#,
    );
    let c = tategb(&["tropical", trop.to_str().unwrap()]);
    let d = tategb(&["tropical", trop.to_str().unwrap()]);
    assert_eq!(c.stdout, d.stdout);
    let doc = stdout_json(&c);
    assert_eq!(doc["result"]["monomial_free_count"], 4);
}

#[test]
fn test_uagb_on_the_homogenized_pair() {
    let path = write_problem(
        "hompair.json",
        r#"{
            "prime": 7, "variables": ["x", "y", "t"],
            "generators": ["x - 7*y", "y*t - 7*y^2"]
        }"#,
    );
    let out = tategb(&["test-uagb", path.to_str().unwrap(), "--emit-certificates"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["verdict"], false);
    assert!(doc["result"]["witness"].is_array());
    assert!(doc["result"]["checks"].is_array());

    let complete = write_problem(
        "hompair3.json",
        r#"{
            "prime": 7, "variables": ["x", "y", "t"],
            "generators": ["x - 7*y", "y*t - 7*y^2", "x^2 - x*t"]
        }"#,
    );
    let out = tategb(&["test-uagb", complete.to_str().unwrap()]);
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["verdict"], true);
}

#[test]
fn jobs_flag_does_not_change_output() {
    let path = write_problem(
        "jobs.json",
        r#"{"prime": 7, "variables": ["x", "y"], "generators": ["x - 7*y", "y - 7*y^2"]}"#,
    );
    let serial = tategb(&["test-uagb", path.to_str().unwrap(), "--jobs", "1"]);
    let parallel = tategb(&["test-uagb", path.to_str().unwrap(), "--jobs", "4"]);
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn exit_code_two_on_parse_errors() {
    // bad JSON
    let bad_json = write_problem("bad.json", r#"{"prime": 7,"#);
    let out = tategb(&["gb", bad_json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // bad expression
    let bad_expr = write_problem(
        "badexpr.json",
        r#"{"prime": 7, "variables": ["x"], "generators": ["x + unknown"], "log_radii": ["0"]}"#,
    );
    let out = tategb(&["gb", bad_expr.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}

#[test]
fn exit_code_one_on_domain_errors() {
    // gb without log_radii
    let missing = write_problem(
        "missing.json",
        r#"{"prime": 7, "variables": ["x"], "generators": ["x"]}"#,
    );
    let out = tategb(&["gb", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    // non-homogeneous input to fan
    let nonhom = write_problem(
        "nonhom.json",
        r#"{"prime": 7, "variables": ["x", "y"], "generators": ["x - 7*y^2"]}"#,
    );
    let out = tategb(&["fan", nonhom.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    // radii outside the polyhedron
    let outside = write_problem(
        "outside.json",
        r#"{
            "prime": 7, "variables": ["x"],
            "generators": ["x^2", "x - 7*x^2"],
            "log_radii": ["1"],
            "polyhedron_vertices": [["0"]]
        }"#,
    );
    let out = tategb(&["wnf", outside.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    // composite prime
    let composite = write_problem(
        "composite.json",
        r#"{"prime": 91, "variables": ["x"], "generators": ["x"], "log_radii": ["0"]}"#,
    );
    let out = tategb(&["gb", composite.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn wnf_reports_cap_convergence_with_certificates() {
    let path = write_problem(
        "divergent.json",
        r#"{
            "prime": 7, "variables": ["x"],
            "generators": ["x^2", "x - 7*x^2"],
            "log_radii": ["-1"],
            "polyhedron_vertices": [["0"]],
            "cap": "50"
        }"#,
    );
    let out = tategb(&["wnf", path.to_str().unwrap(), "--emit-certificates"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["status"], "converged_to_zero_at_cap");
    assert!(doc["result"]["certificate"]["multiplier"].is_string());

    // --cap flag overrides the file
    let out2 = tategb(&["wnf", path.to_str().unwrap(), "--cap", "10"]);
    let doc2 = stdout_json(&out2);
    assert_eq!(doc2["result"]["cap"], "10");
}

#[test]
fn terms_p_command() {
    let path = write_problem(
        "termsp.json",
        r#"{
            "prime": 7, "variables": ["x"],
            "generators": ["x + 7"],
            "polyhedron_vertices": [["1"]]
        }"#,
    );
    let out = tategb(&["terms-p", path.to_str().unwrap()]);
    let doc = stdout_json(&out);
    let terms: Vec<String> = doc["result"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(terms, vec!["7".to_string(), "x".to_string()]);
}

#[test]
fn tie_break_flag_is_echoed() {
    let path = write_problem(
        "tie.json",
        r#"{"prime": 7, "variables": ["x"], "generators": ["x"], "log_radii": ["0"]}"#,
    );
    let out = tategb(&["gb", path.to_str().unwrap(), "--tie-break", "lex"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["tie_break"], "lex");
}
