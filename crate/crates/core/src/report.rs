//! Text and JSON rendering of analyses.

use std::fmt::Write;

use crate::analysis::Analysis;
use crate::invariants::InvariantReport;

/// (label, value, formula) rows of the invariant block.
pub fn invariant_rows(r: &InvariantReport) -> Vec<(&'static str, String, &'static str)> {
    vec![
        ("b1(Y), b2(Y), b3(Y)", format!("{}, {}, {}", r.b1_y, r.b2_y, r.b3_y), "cross-section"),
        (
            "b0..b3(M)",
            r.b_low.iter().map(i64::to_string).collect::<Vec<_>>().join(", "),
            "cross-section",
        ),
        ("b4_0(M)", r.b4_0.to_string(), "b4-zero"),
        ("b4(M)", r.b4.to_string(), "b4"),
        ("b4_c(M)", r.b4_c.to_string(), "compact-support"),
        ("b4_-(M)", r.b4_minus.to_string(), "b4-minus"),
        ("b4_+(M)", r.b4_plus.to_string(), "b4-plus"),
        ("bounded harmonic 4-forms", r.bounded_harmonic_4.to_string(), "bounded-harmonic"),
        ("moduli dimension", r.moduli.to_string(), "moduli"),
        ("holonomy", r.holonomy.to_string(), "holonomy"),
    ]
}

pub fn render_invariant_block(r: &InvariantReport) -> String {
    let mut out = String::from("invariants\n");
    for (label, value, formula) in invariant_rows(r) {
        writeln!(out, "  {label:<26} {value:>12}  [{formula}]").unwrap();
    }
    out
}

pub fn render_table(a: &Analysis) -> String {
    let mut out = String::new();
    writeln!(out, "configuration {}", a.name).unwrap();
    writeln!(out, "checks").unwrap();
    for c in &a.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        writeln!(out, "  [{mark}] {:<36} {}", c.name, c.detail).unwrap();
    }
    if !a.values.is_empty() {
        writeln!(out, "values").unwrap();
        for v in &a.values {
            writeln!(out, "  {:<26} {:>12}  [{}]", v.name, v.value, v.formula).unwrap();
        }
    }
    if let Some(r) = &a.invariants {
        out.push_str(&render_invariant_block(r));
    }
    if !a.notes.is_empty() {
        writeln!(out, "notes").unwrap();
        for n in &a.notes {
            writeln!(out, "  {n}").unwrap();
        }
    }
    match &a.failure {
        None => writeln!(out, "result: admissible").unwrap(),
        Some(f) => writeln!(out, "result: rejected ({f})").unwrap(),
    }
    out
}

pub fn render_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// One row per configuration.
pub fn render_summary(analyses: &[Analysis]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<24} {:>6} {:>6} {:>6} {:>6} {:>6} {:>7}  holonomy",
        "configuration", "b3(Y)", "b4_0", "b4", "b4_-", "b4_+", "moduli"
    )
    .unwrap();
    for a in analyses {
        match &a.invariants {
            Some(r) => writeln!(
                out,
                "{:<24} {:>6} {:>6} {:>6} {:>6} {:>6} {:>7}  {}",
                a.name, r.b3_y, r.b4_0, r.b4, r.b4_minus, r.b4_plus, r.moduli, r.holonomy
            )
            .unwrap(),
            None => writeln!(
                out,
                "{:<24} rejected: {}",
                a.name,
                a.failure.as_deref().unwrap_or("no invariants")
            )
            .unwrap(),
        }
    }
    out
}
