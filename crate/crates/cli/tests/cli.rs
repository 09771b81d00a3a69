use std::path::PathBuf;
use std::process::{Command, Output};

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn spin7(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spin7"))
        .args(args)
        .output()
        .expect("spin7 runs")
}

fn cfg(name: &str) -> String {
    configs().join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// The lines from "invariants" up to the next unindented line.
fn invariant_block(text: &str) -> String {
    let mut lines = text.lines().skip_while(|l| *l != "invariants");
    let mut out = String::new();
    if let Some(head) = lines.next() {
        out.push_str(head);
        out.push('\n');
    }
    for l in lines.take_while(|l| l.starts_with(' ')) {
        out.push_str(l);
        out.push('\n');
    }
    out
}

#[test]
fn analyze_first_example() {
    let o = spin7(&["analyze", &cfg("m1.cfg")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("result: admissible"));
    for (label, value) in [("b4_0(M)", "688"), ("b4(M)", "839"), ("b4_-(M)", "200"), ("moduli dimension", "352")] {
        let line = text.lines().find(|l| l.trim_start().starts_with(label)).unwrap();
        assert!(line.split_whitespace().any(|w| w == value), "{line}");
    }
}

#[test]
fn double_blowup_block_is_identical() {
    let a = stdout(&spin7(&["analyze", &cfg("m2.cfg")]));
    let b = stdout(&spin7(&["analyze", &cfg("m2_via_double_blowup.cfg")]));
    let block = invariant_block(&a);
    assert!(block.lines().count() > 5);
    assert_eq!(block, invariant_block(&b));
}

#[test]
fn structured_output_is_json() {
    let o = spin7(&["--format", "structured", "analyze", &cfg("m2.cfg")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["invariants"]["b4"], 455);
    assert_eq!(v["invariants"]["moduli"], 224);
    assert_eq!(v["invariants"]["holonomy"], "Spin(7)");
}

#[test]
fn negative_fixtures_exit_one() {
    for (file, needle) in [
        ("negative/non_well_formed.cfg", "V well-formed"),
        ("negative/non_isolated.cfg", "positive-dimensional"),
        ("negative/wrong_parity.cfg", "parity"),
    ] {
        let o = spin7(&["analyze", &cfg(file)]);
        assert_eq!(o.status.code(), Some(1), "{file}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(needle), "{file}: {err}");
    }
}

#[test]
fn input_errors_exit_two() {
    let dir = std::env::temp_dir().join(format!("spin7-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let m1 = std::fs::read_to_string(configs().join("m1.cfg")).unwrap();
    let unknown = dir.join("unknown.cfg");
    std::fs::write(&unknown, m1.replace("[ambient]", "colour = 3\n\n[ambient]")).unwrap();
    let broken = dir.join("broken.cfg");
    std::fs::write(&broken, "name = ").unwrap();
    let bad_poly = dir.join("bad_poly.cfg");
    std::fs::write(&bad_poly, m1.replace("z4^2\"]", "z7^2\"]")).unwrap();

    for path in [&unknown, &broken, &bad_poly] {
        let o = spin7(&["analyze", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{}", path.display());
    }
    assert_eq!(spin7(&["analyze", "/nonexistent/m.cfg"]).status.code(), Some(2));
    assert_eq!(spin7(&["scan", "--max-weight", "x"]).status.code(), Some(2));
    assert_eq!(spin7(&["verify-forms", "--tolerance", "0"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn scan_is_deterministic() {
    let a = spin7(&["scan", "--max-weight", "4"]);
    let b = spin7(&["scan", "--max-weight", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("49 weight systems examined, 1 admissible"), "{text}");
    assert!(text.contains("(1,1,1,1,4) admissible"));

    let none = stdout(&spin7(&["scan", "--max-weight", "1"]));
    assert!(none.starts_with("1 weight systems examined, 0 admissible"), "{none}");
}

#[test]
fn verify_forms_and_mutation() {
    let o = spin7(&["verify-forms"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("result: all identities hold"));
    let flipped = spin7(&["verify-forms", "--inject-sign-flip"]);
    assert_eq!(flipped.status.code(), Some(1));
    assert!(stdout(&flipped).contains("[FAIL] 2-form split"));
}

#[test]
fn report_summarises_all_configs() {
    let o = spin7(&["report", &cfg("m1.cfg"), &cfg("m2.cfg")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);
    let with_negative = spin7(&["report", &cfg("m1.cfg"), &cfg("negative/wrong_parity.cfg")]);
    assert_eq!(with_negative.status.code(), Some(1));
    assert!(stdout(&with_negative).contains("wrong_parity"));
}
