//! Browser bindings for the demo page in `www/`. Every export returns a JSON
//! string; failures come back as `{"error": "..."}`.

use serde_json::{json, Value};
use spin7_core::analysis::{analyze, AnalyzeOptions};
use spin7_core::char_numbers::{steenbrink_hodge, GradedMonomialRing};
use spin7_core::config::Config;
use spin7_core::report::{render_invariant_block, render_table};
use spin7_core::spin7::{DirectionKind, ProjectionOptions, ThetaProjector};
use spin7_core::verify::EPSILONS;
use wasm_bindgen::prelude::*;

const EXAMPLES: [(&str, &str); 3] = [
    ("m1", include_str!("../../../configs/m1.cfg")),
    ("m2", include_str!("../../../configs/m2.cfg")),
    ("m2_via_double_blowup", include_str!("../../../configs/m2_via_double_blowup.cfg")),
];

fn error(msg: impl ToString) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

/// Names of the bundled configurations.
#[wasm_bindgen]
pub fn example_names() -> String {
    Value::from(EXAMPLES.iter().map(|e| e.0).collect::<Vec<_>>()).to_string()
}

/// Text of a bundled configuration, or an empty string.
#[wasm_bindgen]
pub fn example_config(name: &str) -> String {
    EXAMPLES
        .iter()
        .find(|e| e.0 == name)
        .map(|e| e.1.to_string())
        .unwrap_or_default()
}

/// Runs the full pipeline on configuration text.
#[wasm_bindgen]
pub fn analyze_config(text: &str) -> String {
    let orb = match Config::from_toml(text).and_then(|c| c.validate()) {
        Ok(o) => o,
        Err(e) => return error(e),
    };
    let a = analyze(&orb, AnalyzeOptions::default());
    json!({
        "admissible": a.passed(),
        "table": render_table(&a),
        "invariant_block": a.invariants.as_ref().map(render_invariant_block),
        "analysis": a,
    })
    .to_string()
}

/// Errors of the Newton projection on Phi0 + eps * eta for random
/// directions of both kinds, with fitted log-log slopes.
#[wasm_bindgen]
pub fn theta_convergence(directions: usize, seed: u32) -> String {
    if directions == 0 || directions > 100 {
        return error("directions must be between 1 and 100");
    }
    let proj = ThetaProjector::new();
    let opts = ProjectionOptions::default();
    let study = |kind| proj.slope_study(kind, directions, u64::from(seed), &EPSILONS, opts);
    match (study(DirectionKind::Normal), study(DirectionKind::Generic)) {
        (Ok(normal), Ok(generic)) => json!({
            "epsilons": EPSILONS,
            "normal": normal,
            "generic": generic,
        })
        .to_string(),
        (Err(e), _) | (_, Err(e)) => error(e),
    }
}

/// Hilbert function of the Jacobian ring of the Fermat hypersurface of
/// the given degree, and its middle Hodge numbers.
#[wasm_bindgen]
pub fn jacobian_hilbert(weights: &str, degree: u32) -> String {
    let weights: Result<Vec<u32>, _> = weights
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect();
    let weights = match weights {
        Ok(w) if w.len() >= 2 && w.len() <= 8 => w,
        Ok(_) => return error("give between 2 and 8 weights"),
        Err(e) => return error(format!("weights: {e}")),
    };
    if degree == 0 || degree > 200 {
        return error("degree must be between 1 and 200");
    }
    let ring = match GradedMonomialRing::jacobian_of_diagonal(&weights, degree) {
        Ok(r) => r,
        Err(e) => return error(e),
    };
    let top = ring.top_degree().unwrap_or(0);
    let series: Vec<String> = ring
        .hilbert_series(top as usize)
        .iter()
        .map(ToString::to_string)
        .collect();
    let hodge = steenbrink_hodge(&weights, degree).ok();
    json!({
        "weights": weights,
        "degree": degree,
        "socle_degree": top,
        "hilbert": series,
        "hodge": hodge,
    })
    .to_string()
}
