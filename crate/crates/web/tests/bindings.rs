use serde_json::Value;
use spin7_web::{analyze_config, example_config, example_names, jacobian_hilbert, theta_convergence};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn examples_analyze() {
    let names = parse(example_names());
    assert_eq!(names.as_array().unwrap().len(), 3);
    let out = parse(analyze_config(&example_config("m1")));
    assert_eq!(out["admissible"], true);
    assert_eq!(out["analysis"]["invariants"]["moduli"], 352);
    assert!(out["invariant_block"].as_str().unwrap().starts_with("invariants\n"));
    assert_eq!(example_config("missing"), "");
}

#[test]
fn bad_config_is_an_error() {
    let out = parse(analyze_config("name = 3"));
    assert!(out["error"].as_str().unwrap().contains("parse"));
}

#[test]
fn quintic_jacobian() {
    let out = parse(jacobian_hilbert("1, 1, 1, 1, 1", 5));
    assert_eq!(out["socle_degree"], 15);
    assert_eq!(out["hilbert"][5], "101");
    assert_eq!(out["hodge"]["full"], serde_json::json!([1, 101, 101, 1]));
    assert!(parse(jacobian_hilbert("1 x", 5))["error"].is_string());
    assert!(parse(jacobian_hilbert("1 1 2", 5))["error"].is_string());
}

#[test]
fn theta_slopes() {
    let out = parse(theta_convergence(3, 1));
    assert_eq!(out["normal"]["directions"].as_array().unwrap().len(), 3);
    assert!(out["generic"]["min_psi_slope"].as_f64().unwrap() > 1.9);
    assert!(parse(theta_convergence(0, 1))["error"].is_string());
}
