//! The exact identity suite for the Cayley form and its relatives, with
//! optional numerical probes of the Newton projection.

use serde::Serialize;

use crate::exterior::{cayley_form, cylinder_form, g2_form, su4_forms, su4_relabeling, Multivector};
use crate::q;
use crate::spin7::{
    cylinder_two_form_types, four_form_split, stabilizer, su4_two_form_refinement, three_form_split,
    two_form_split, DirectionKind, ProjectionOptions, SlopeStudy, ThetaProjector,
};

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub with_newton: bool,
    /// Flips the sign of the dx5678 term of the Cayley form before running
    /// the suite; every identity depending on it must then fail.
    pub inject_sign_flip: bool,
    pub tolerance: f64,
    pub directions: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            with_newton: false,
            inject_sign_flip: false,
            tolerance: 1e-12,
            directions: 20,
            seed: 7,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Identity {
    pub name: &'static str,
    pub formula: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct NewtonSummary {
    pub epsilons: Vec<f64>,
    pub normal: SlopeStudy,
    pub generic: SlopeStudy,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub identities: Vec<Identity>,
    pub newton: Option<NewtonSummary>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(|i| i.passed)
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        for i in &self.identities {
            let mark = if i.passed { "ok  " } else { "FAIL" };
            out.push_str(&format!("[{mark}] {:<28} [{}] {}\n", i.name, i.formula, i.detail));
        }
        if let Some(n) = &self.newton {
            out.push_str("theta projection\n");
            out.push_str(&format!("  epsilons {:?}\n", n.epsilons));
            for s in [&n.normal, &n.generic] {
                out.push_str(&format!(
                    "  {:<8} directions {:>3}  min slope psi {:>6.3}  min slope remainder {:>6.3}  max |psi error| {:.2e}  max tangency {:.2e}  max iterations {}\n",
                    format!("{:?}", s.kind).to_lowercase(),
                    s.directions.len(),
                    s.min_psi_slope,
                    s.min_remainder_slope,
                    s.max_psi_error,
                    s.max_tangency,
                    s.max_iterations
                ));
            }
        }
        let verdict = if self.passed() { "all identities hold" } else { "identity failure" };
        out.push_str(&format!("result: {verdict}\n"));
        out
    }
}

fn flipped_cayley() -> Multivector {
    let phi = cayley_form();
    &phi - &Multivector::dx(8, &[5, 6, 7, 8]).scale(&q(2))
}

fn ranks(r: Result<crate::spin7::TypeSplit, crate::spin7::Spin7Error>) -> Result<Vec<usize>, String> {
    r.map(|s| s.ranks()).map_err(|e| e.to_string())
}

pub fn run_identities(opts: &VerifyOptions) -> VerifyReport {
    let phi = if opts.inject_sign_flip { flipped_cayley() } else { cayley_form() };
    let mut ids = Vec::new();
    let mut push = |name, formula, passed, detail: String| {
        ids.push(Identity {
            name,
            formula,
            passed,
            detail,
        })
    };

    let star = phi.hodge_star() == phi;
    push("self-duality", "cayley-form", star, format!("*Phi == Phi: {star}"));

    let sq = phi.wedge(&phi).expect("dim 8").top_coefficient();
    push("square", "cayley-form", sq == q(14), format!("Phi ^ Phi = {sq} vol"));

    for (name, formula, expected, got) in [
        ("2-form split", "eigen-2-forms", vec![7, 21], ranks(two_form_split(&phi))),
        ("3-form split", "type-3-forms", vec![8, 48], ranks(three_form_split(&phi))),
        ("4-form split", "type-4-forms", vec![1, 7, 27, 35], ranks(four_form_split(&phi))),
    ] {
        match got {
            Ok(r) => push(name, formula, r == expected, format!("ranks {r:?}")),
            Err(e) => push(name, formula, false, e),
        }
    }

    let st = stabilizer(&phi);
    let antisymmetric = st.basis.iter().all(|m| {
        (0..8).all(|i| (0..8).all(|j| m[i][j] == -m[j][i].clone()))
    });
    push(
        "stabilizer of Phi",
        "stabilizer",
        st.dim == 21 && antisymmetric,
        format!("dim {}, inside so(8): {antisymmetric}", st.dim),
    );
    let g2 = stabilizer(&g2_form());
    push("stabilizer of phi", "stabilizer", g2.dim == 14, format!("dim {}", g2.dim));

    let cyl = cylinder_form(&g2_form()).map(|c| c == phi).unwrap_or(false);
    push("G2 split", "g2-cylinder", cyl, format!("dt ^ phi0 + *phi0 == Phi: {cyl}"));

    let su4 = su4_forms();
    let r = su4_relabeling();
    let lands = su4.cayley_candidate().relabel(&r) == phi;
    push(
        "SU(4) identification",
        "su4-cayley",
        lands,
        format!("1/2 w^2 + Re theta == Phi under relabeling {:?}: {lands}", r.perm),
    );

    let eig = phi
        .wedge(&su4.omega)
        .map(|w| w.hodge_star() == su4.omega.scale(&q(3)))
        .unwrap_or(false);
    push("Kaehler eigenvalue", "kaehler-eigenvalue", eig, format!("*(Phi ^ w) == 3 w: {eig}"));

    match su4_two_form_refinement(&su4.omega, &su4.re_theta) {
        Ok(s) if s.form == phi => {
            let r = s.ranks();
            push("SU(4) refinement", "su4-refinement", r == [1, 6, 15, 6], format!("ranks {r:?}"))
        }
        Ok(_) => push("SU(4) refinement", "su4-refinement", false, "refined form differs from Phi".into()),
        Err(e) => push("SU(4) refinement", "su4-refinement", false, e.to_string()),
    }

    match cylinder_two_form_types(&g2_form()) {
        Ok(c) => {
            let ok = c.matches_eigenspaces && c.iso7_scale_sq == q(3) && c.split.form == phi;
            push(
                "cylinder 2-form types",
                "cylinder-types",
                ok,
                format!("match eigenspaces: {}, |iso7|^2 = {}", c.matches_eigenspaces, c.iso7_scale_sq),
            )
        }
        Err(e) => push("cylinder 2-form types", "cylinder-types", false, e.to_string()),
    }

    let newton = opts.with_newton.then(|| newton_summary(opts, &mut ids));
    VerifyReport {
        identities: ids,
        newton: newton.flatten(),
    }
}

/// Grid of epsilons for the slope studies.
pub const EPSILONS: [f64; 3] = [1e-2, 1e-3, 1e-4];

fn newton_summary(opts: &VerifyOptions, ids: &mut Vec<Identity>) -> Option<NewtonSummary> {
    let proj = ThetaProjector::new();
    let popts = ProjectionOptions {
        tolerance: opts.tolerance,
        ..ProjectionOptions::default()
    };
    let run = |kind| proj.slope_study(kind, opts.directions, opts.seed, &EPSILONS, popts);
    match (run(DirectionKind::Normal), run(DirectionKind::Generic)) {
        (Ok(normal), Ok(generic)) => {
            ids.push(Identity {
                name: "theta on the normal fibre",
                formula: "theta-quadratic",
                passed: normal.max_psi_error <= 1e-13 && normal.max_tangency <= 1e-10,
                detail: format!("max |psi - eps xi| = {:.2e}", normal.max_psi_error),
            });
            ids.push(Identity {
                name: "theta quadratic slope",
                formula: "theta-quadratic",
                passed: generic.min_psi_slope >= 1.9 && generic.min_remainder_slope >= 1.9,
                detail: format!(
                    "min slopes {:.3} (psi), {:.3} (remainder)",
                    generic.min_psi_slope, generic.min_remainder_slope
                ),
            });
            Some(NewtonSummary {
                epsilons: EPSILONS.to_vec(),
                normal,
                generic,
            })
        }
        (Err(e), _) | (_, Err(e)) => {
            ids.push(Identity {
                name: "theta projection",
                formula: "theta-quadratic",
                passed: false,
                detail: e.to_string(),
            });
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let r = run_identities(&VerifyOptions::default());
        assert!(r.passed(), "{}", r.render_table());
        assert_eq!(r.identities.len(), 12);
    }

    #[test]
    fn sign_flip_breaks_the_split() {
        let r = run_identities(&VerifyOptions {
            inject_sign_flip: true,
            ..VerifyOptions::default()
        });
        assert!(!r.passed());
        let split = r.identities.iter().find(|i| i.name == "2-form split").unwrap();
        assert!(!split.passed);
    }
}
