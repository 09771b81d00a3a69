use std::path::PathBuf;

use spin7_core::analysis::{analyze, Analysis, AnalyzeOptions};
use spin7_core::config::Config;
use spin7_core::report::render_invariant_block;

fn config_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn run(name: &str) -> Analysis {
    let cfg = Config::load(&config_path(name)).unwrap();
    analyze(&cfg.validate().unwrap(), AnalyzeOptions::default())
}

#[test]
fn bundled_configs_are_canonical() {
    for name in [
        "m1.cfg",
        "m2.cfg",
        "m2_via_double_blowup.cfg",
        "negative/non_well_formed.cfg",
        "negative/non_isolated.cfg",
        "negative/wrong_parity.cfg",
    ] {
        let text = std::fs::read_to_string(config_path(name)).unwrap();
        assert_eq!(Config::from_toml(&text).unwrap().to_toml(), text, "{name}");
    }
}

#[test]
fn first_example() {
    let a = run("m1.cfg");
    assert!(a.passed(), "{:?}", a.failure);
    let r = a.invariants.as_ref().unwrap();
    assert_eq!((r.b4_0, r.b4, r.b3_y, r.b4_minus, r.moduli), (688, 839, 151, 200, 352));
    assert_eq!(a.get("chi(D)"), Some("-296"));
    assert_eq!(a.get("h21(D)"), Some("149"));
    assert_eq!(a.get("chi(Sigma_1)"), Some("1376"));
    assert_eq!(a.get("p_g(Sigma_1)"), Some("199"));
    assert_eq!(a.get("chi(V)"), Some("5"));
}

#[test]
fn second_example_and_double_blowup() {
    let a = run("m2.cfg");
    assert!(a.passed(), "{:?}", a.failure);
    let r = a.invariants.as_ref().unwrap();
    assert_eq!((r.b4, r.b4_0, r.b4_minus, r.moduli), (455, 304, 72, 224));
    assert_eq!(a.get("chi(Sigma_1)"), Some("304"));
    assert_eq!(a.get("p_g(Sigma_1)"), Some("35"));
    assert_eq!(a.get("chi(V)"), Some("306"));
    assert_eq!(a.get("chi_orb(V)"), Some("609/2"));
    assert_eq!(a.get("h31(V)"), Some("35"));
    let b = run("m2_via_double_blowup.cfg");
    assert!(b.passed(), "{:?}", b.failure);
    assert_eq!(
        render_invariant_block(b.invariants.as_ref().unwrap()),
        render_invariant_block(r)
    );
}

#[test]
fn negative_fixtures() {
    let a = run("negative/non_well_formed.cfg");
    assert!(a.failure.as_deref().unwrap().starts_with("V well-formed"), "{:?}", a.failure);
    let b = run("negative/non_isolated.cfg");
    assert!(b.failure.as_deref().unwrap().contains("positive-dimensional"), "{:?}", b.failure);
    let c = run("negative/wrong_parity.cfg");
    assert!(c.failure.as_deref().unwrap().contains("parity"), "{:?}", c.failure);
}
