//! End-to-end pipeline: admissibility checks on (V, D, Σ, ρ), the
//! intermediate characteristic numbers and the invariants of M.

use serde::Serialize;

use crate::char_numbers::{
    cy3_hodge_from_chi, euler_characteristics, noether_pg, steenbrink_hodge_of, CharError,
};
use crate::config::Orbifold;
use crate::invariants::{compute_invariants, InvariantInput, InvariantReport, SurfaceComponent};
use crate::wps::{
    diagonal_quasismooth, involution_check, isolated_z4_check, well_formed, CompleteIntersection,
    Polynomial, WpsError,
};

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyzeOptions {
    /// Accept equations whose quasismoothness cannot be certified.
    pub allow_uncertified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A computed number with the label of the formula producing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Value {
    pub name: String,
    pub value: String,
    pub formula: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub name: String,
    pub checks: Vec<Check>,
    pub values: Vec<Value>,
    pub notes: Vec<String>,
    pub invariants: Option<InvariantReport>,
    pub failure: Option<String>,
}

impl Analysis {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        let name = name.into();
        let detail = detail.into();
        if !passed && self.failure.is_none() {
            self.failure = Some(format!("{name}: {detail}"));
        }
        self.checks.push(Check { name, passed, detail });
        passed
    }

    fn value(&mut self, name: impl Into<String>, value: impl ToString, formula: &'static str) {
        self.values.push(Value {
            name: name.into(),
            value: value.to_string(),
            formula,
        });
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.values.iter().find(|v| v.name == name).map(|v| v.value.as_str())
    }
}

fn describe(ci: &CompleteIntersection) -> String {
    let w: Vec<String> = ci.space.weights().iter().map(u32::to_string).collect();
    let d: Vec<String> = ci.degrees.iter().map(u32::to_string).collect();
    if d.is_empty() {
        format!("CP^{}_{{{}}}", w.len() - 1, w.join(","))
    } else {
        format!("degree ({}) in CP^{}_{{{}}}", d.join(","), w.len() - 1, w.join(","))
    }
}

/// Runs the well-formedness and quasismoothness checks on `ci`.
fn certify(a: &mut Analysis, what: &str, ci: &CompleteIntersection, opts: AnalyzeOptions) -> bool {
    match well_formed(ci) {
        Ok(w) if w.ok => a.check(format!("{what} well-formed"), true, describe(ci)),
        Ok(w) => {
            let v: Vec<String> = w
                .violations
                .iter()
                .map(|v| format!("omitting {:?} leaves hcf {} (must {})", v.omitted, v.hcf, v.requirement))
                .collect();
            a.check(format!("{what} well-formed"), false, v.join("; "))
        }
        Err(e) => a.check(format!("{what} well-formed"), false, e.to_string()),
    };
    if a.failure.is_some() {
        return false;
    }
    if ci.degrees.is_empty() {
        return a.check(format!("{what} quasismooth"), true, "weighted projective space");
    }
    match diagonal_quasismooth(ci) {
        Ok(q) if q.ok => a.check(
            format!("{what} quasismooth"),
            true,
            q.reason.unwrap_or_else(|| "diagonal equations".into()),
        ),
        Ok(q) => a.check(format!("{what} quasismooth"), false, q.reason.unwrap_or_default()),
        Err(WpsError::Unsupported(msg)) if opts.allow_uncertified => {
            a.notes.push(format!("{what}: quasismoothness assumed without certificate ({msg})"));
            a.check(format!("{what} quasismooth"), true, "assumed (--allow-uncertified)")
        }
        Err(e) => a.check(format!("{what} quasismooth"), false, e.to_string()),
    }
}

fn char_fail(a: &mut Analysis, name: &str, e: CharError) {
    a.check(name, false, e.to_string());
}

fn with_equations(v: &CompleteIntersection, extra: &[Polynomial]) -> Result<CompleteIntersection, WpsError> {
    let mut eqs = v.equations.clone().unwrap_or_default();
    eqs.extend(extra.iter().cloned());
    let mut ci = CompleteIntersection::from_equations(v.space.clone(), eqs)?;
    ci.certified_quasismooth = v.certified_quasismooth;
    Ok(ci)
}

pub fn analyze(orb: &Orbifold, opts: AnalyzeOptions) -> Analysis {
    let mut a = Analysis {
        name: orb.name.clone(),
        checks: Vec::new(),
        values: Vec::new(),
        notes: Vec::new(),
        invariants: None,
        failure: None,
    };
    run(&mut a, orb, opts);
    a
}

fn run(a: &mut Analysis, orb: &Orbifold, opts: AnalyzeOptions) -> Option<()> {
    let v = &orb.variety;
    let weights = v.space.weights().to_vec();
    if !a.check("V has dimension 4", v.dim() == 4, format!("{} has dimension {}", describe(v), v.dim())) {
        return None;
    }
    if !certify(a, "V", v, opts) {
        return None;
    }

    // singular points
    let z4 = match isolated_z4_check(v) {
        Ok(z) => z,
        Err(e) => {
            a.check("isolated Z4 points", false, e.to_string());
            return None;
        }
    };
    let detail = match (&z4.explanation, z4.ok()) {
        (_, true) => {
            let pts: Vec<String> = z4.points.iter().map(|p| p.coords_string()).collect();
            format!("{} point(s) {}", z4.count(), pts.join(" "))
        }
        (Some(e), false) => e.clone(),
        (None, false) => "V has no singular points".into(),
    };
    if !a.check("isolated Z4 points", z4.ok(), detail) {
        return None;
    }
    let mut k = z4.count() as u32;
    if let Some(declared) = orb.declared.singular_points {
        if declared != k {
            a.notes.push(format!("declared singular_points = {declared} replaces computed {k}"));
        }
        k = declared;
    }
    a.value("k", k, "singular-points");
    let orders: Vec<u32> = vec![4; k as usize];

    // Euler characteristic and h^{3,1} of V
    let chi = match euler_characteristics(&weights, &v.degrees, &orders) {
        Ok(c) => c,
        Err(e) => {
            char_fail(a, "chi(V)", e);
            return None;
        }
    };
    a.value("chi_orb(V)", &chi.orbifold, "adjunction-chern");
    let mut chi_v = chi.topological;
    a.value("chi(V)", chi_v, "orbifold-euler-correction");
    if let Some(declared) = orb.declared.chi_v {
        if declared != chi_v {
            a.notes.push(format!("declared chi_v = {declared} replaces computed {chi_v}"));
        }
        chi_v = declared;
    }
    let h31_v = if let Some(h) = orb.declared.h31_v {
        a.notes.push(format!("declared h31_v = {h} used"));
        h
    } else if v.degrees.is_empty() {
        a.value("h31(V)", 0, "ambient-hodge");
        0
    } else {
        match steenbrink_hodge_of(v) {
            Ok(h) => {
                let h31 = h.h(3, 1).expect("fourfold") as i64;
                a.value("h31(V)", h31, "jacobian-hodge");
                h31
            }
            Err(e) => {
                char_fail(a, "h31(V)", e);
                return None;
            }
        }
    };

    // the divisor D
    let anticanonical = v.anticanonical_degree();
    let full_d = match with_equations(v, &orb.divisor) {
        Ok(d) => d,
        Err(e) => {
            a.check("D equations", false, e.to_string());
            return None;
        }
    };
    let d_degree: i64 = orb.divisor.iter().map(|f| {
        f.weighted_degree(&weights).ok().flatten().map_or(0, i64::from)
    }).sum();
    if !a.check(
        "D anticanonical",
        orb.divisor.len() == 1 && d_degree == anticanonical,
        format!("degree {d_degree}, -K_V = O({anticanonical})"),
    ) {
        return None;
    }
    let missing = z4
        .points
        .iter()
        .find(|p| orb.divisor.iter().all(|f| f.eval(&p.coords).norm() < 1e-9));
    if !a.check(
        "D avoids the singular points",
        missing.is_none(),
        missing.map_or_else(|| "every point has f != 0".into(), |p| format!("D contains {}", p.coords_string())),
    ) {
        return None;
    }
    let mut d = match full_d.eliminate_linear_cones() {
        Ok(r) => r.datum,
        Err(e) => {
            a.check("D linear cones", false, e.to_string());
            return None;
        }
    };
    d.certified_quasismooth = orb.divisor_certified || v.certified_quasismooth;
    if !certify(a, "D", &d, opts) {
        return None;
    }
    if !a.check(
        "D Calabi-Yau",
        d.anticanonical_degree() == 0 && d.dim() == 3,
        format!("{} with -K = O({})", describe(&d), d.anticanonical_degree()),
    ) {
        return None;
    }
    let chi_d = match euler_characteristics(d.space.weights(), &d.degrees, &[]) {
        Ok(c) => c.topological,
        Err(e) => {
            char_fail(a, "chi(D)", e);
            return None;
        }
    };
    a.value("chi(D)", chi_d, "adjunction-chern");
    let h21_d = match cy3_hodge_from_chi(chi_d, 1) {
        Ok(h) => h,
        Err(e) => {
            char_fail(a, "h21(D)", e);
            return None;
        }
    };
    a.value("h21(D)", h21_d, "cy3-hodge");
    if let Ok(h) = steenbrink_hodge_of(&d) {
        let jac = h.h(2, 1).expect("threefold") as i64;
        if !a.check(
            "h21(D) from the Jacobian ring",
            jac == h21_d,
            format!("{jac} vs {h21_d} from chi"),
        ) {
            return None;
        }
    }

    // surface components
    let mut surfaces = Vec::new();
    let mut cut_degree = 0i64;
    for (i, (eqs, mult, certified)) in orb.surfaces.iter().enumerate() {
        let label = format!("Sigma_{}", i + 1);
        let mut all = orb.divisor.clone();
        all.extend(eqs.iter().cloned());
        let s = match with_equations(v, &all).and_then(|c| c.eliminate_linear_cones()) {
            Ok(r) => r.datum,
            Err(e) => {
                a.check(format!("{label} equations"), false, e.to_string());
                return None;
            }
        };
        let mut s = s;
        s.certified_quasismooth = *certified || v.certified_quasismooth;
        if !a.check(format!("{label} is a surface"), s.dim() == 2, describe(&s)) {
            return None;
        }
        if !certify(a, &label, &s, opts) {
            return None;
        }
        cut_degree += i64::from(*mult)
            * eqs
                .iter()
                .map(|f| f.weighted_degree(&weights).ok().flatten().map_or(0, i64::from))
                .sum::<i64>();
        let n = match noether_pg(s.space.weights(), &s.degrees) {
            Ok(n) => n,
            Err(e) => {
                char_fail(a, &format!("{label} Noether"), e);
                return None;
            }
        };
        a.value(format!("chi({label})"), n.chi_top, "adjunction-chern");
        a.value(format!("K^2({label})"), n.k_squared, "canonical-degree");
        a.value(format!("p_g({label})"), n.p_g, "noether");
        if *mult > 1 {
            a.value(format!("multiplicity({label})"), mult, "self-intersection");
        }
        surfaces.push(SurfaceComponent {
            chi: n.chi_top,
            p_g: n.p_g,
            multiplicity: *mult,
        });
    }
    if !a.check(
        "Sigma is the self-intersection of D",
        cut_degree == anticanonical,
        format!("sum of multiplicity x degree = {cut_degree}, deg D = {anticanonical}"),
    ) {
        return None;
    }

    // the involution
    let mut preserved = orb.divisor.clone();
    for (eqs, _, _) in &orb.surfaces {
        preserved.extend(eqs.iter().cloned());
    }
    match involution_check(v, &preserved, &orb.involution) {
        Ok(r) => {
            let detail = r
                .failure
                .clone()
                .unwrap_or_else(|| format!("fixed set {}", r.fixed_point_strings().join(" ")));
            if !a.check("antiholomorphic involution", r.ok, detail) {
                return None;
            }
        }
        Err(e) => {
            a.check("antiholomorphic involution", false, e.to_string());
            return None;
        }
    }

    let input = InvariantInput {
        chi_v,
        k,
        h31_v,
        h21_d,
        surfaces,
        simply_connected: orb.declared.simply_connected.unwrap_or(true),
    };
    match compute_invariants(&input) {
        Ok(r) => {
            a.check("invariant identities", true, "b4_+ + b4_- = b4_0, b4 = b4_0 + b3(Y)");
            a.invariants = Some(r);
            Some(())
        }
        Err(e) => {
            a.check("invariant identities", false, e.to_string());
            None
        }
    }
}
