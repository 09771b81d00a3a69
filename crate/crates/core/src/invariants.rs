//! Betti numbers, signature split and moduli dimension of the 8-manifold
//! obtained from an orbifold configuration (V, D, Σ, ρ).

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("inconsistent invariants: {0}")]
    Consistency(String),
}

/// A blown-up surface with its multiplicity in the divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceComponent {
    pub chi: i64,
    pub p_g: i64,
    pub multiplicity: u32,
}

/// Arithmetic input of the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantInput {
    pub chi_v: i64,
    /// Number of C^4/Z4 points.
    pub k: u32,
    pub h31_v: i64,
    pub h21_d: i64,
    pub surfaces: Vec<SurfaceComponent>,
    pub simply_connected: bool,
}

impl InvariantInput {
    /// Sum of chi over blow-up steps (n_i copies of each component).
    pub fn chi_sigma(&self) -> i64 {
        self.surfaces.iter().map(|s| i64::from(s.multiplicity) * s.chi).sum()
    }

    pub fn p_g_sigma(&self) -> i64 {
        self.surfaces.iter().map(|s| i64::from(s.multiplicity) * s.p_g).sum()
    }

    /// Total number of blow-up steps.
    pub fn steps(&self) -> u32 {
        self.surfaces.iter().map(|s| s.multiplicity).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Holonomy {
    #[serde(rename = "Spin(7)")]
    Spin7,
    #[serde(rename = "G2")]
    G2,
    #[serde(rename = "SU(4)")]
    Su4,
    #[serde(rename = "SU(2)xSU(2)")]
    Su2Su2,
    #[serde(rename = "undetermined")]
    Undetermined,
}

impl fmt::Display for Holonomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Holonomy::Spin7 => "Spin(7)",
            Holonomy::G2 => "G2",
            Holonomy::Su4 => "SU(4)",
            Holonomy::Su2Su2 => "SU(2)xSU(2)",
            Holonomy::Undetermined => "undetermined",
        })
    }
}

/// Holonomy of a torsion-free asymptotically cylindrical Spin(7)-manifold
/// read off the cross-section.
pub fn holonomy_verdict(b0_y: u32, b1_y: u32, simply_connected: bool, single_end: bool) -> Holonomy {
    if !simply_connected {
        return Holonomy::Undetermined;
    }
    if b0_y == 2 {
        return Holonomy::G2;
    }
    if !single_end || b0_y != 1 {
        return Holonomy::Undetermined;
    }
    match b1_y {
        0 => Holonomy::Spin7,
        1 => Holonomy::Su4,
        3 => Holonomy::Su2Su2,
        _ => Holonomy::Undetermined,
    }
}

/// (b^1, b^2, b^3) of the cross-section Y = D x S^1 / Z2.
pub fn cross_section_betti(h21_d: i64) -> Result<(i64, i64, i64), InvariantError> {
    if h21_d < 0 {
        return Err(InvariantError::Precondition(format!("h^(2,1)(D) = {h21_d}")));
    }
    Ok((0, 0, 2 + h21_d))
}

/// Betti numbers of the image of compactly supported cohomology:
/// b^4_0 = (chi(Sigma) + chi(V) + 3k)/2 - 4.
pub fn b4_zero(chi_sigma: i64, chi_v: i64, k: u32) -> Result<i64, InvariantError> {
    let total = chi_sigma + chi_v + 3 * i64::from(k);
    if total % 2 != 0 {
        return Err(InvariantError::Parity(format!(
            "chi(Sigma) + chi(V) + 3k = {chi_sigma} + {chi_v} + {} is odd",
            3 * i64::from(k)
        )));
    }
    Ok(total / 2 - 4)
}

/// b^j(V~)^rho = b^j(V)^rho + b^{j-2}(Sigma)^{-rho} for one blow-up.
pub fn blowup_betti_step(rho_invariant: &[i64], sigma_anti: &[i64]) -> Vec<i64> {
    rho_invariant
        .iter()
        .enumerate()
        .map(|(j, b)| b + if j >= 2 { sigma_anti.get(j - 2).copied().unwrap_or(0) } else { 0 })
        .collect()
}

/// Anti-invariant Betti numbers (b^0..b^4) of a regular surface carrying a
/// free orientation-preserving involution: only b^2 = chi/2 survives.
pub fn surface_anti_invariant_betti(chi: i64) -> Result<[i64; 5], InvariantError> {
    if chi % 2 != 0 {
        return Err(InvariantError::Parity(format!(
            "a free involution needs even chi(Sigma), got {chi}"
        )));
    }
    Ok([0, 0, chi / 2, 0, 0])
}

/// Route through the individual blow-ups: b^4(V)^rho = (chi(V) + k)/2 - 2
/// for a rational-cohomology CP^4-like orbifold part, each step adds
/// chi(Sigma)/2 in degree 4 and b^4_0 = b^4(V~)^rho + k - 2.
pub fn b4_zero_stepwise(input: &InvariantInput) -> Result<i64, InvariantError> {
    let k = i64::from(input.k);
    if (input.chi_v + k) % 2 != 0 {
        return Err(InvariantError::Parity(format!(
            "chi(V) + k = {} is odd",
            input.chi_v + k
        )));
    }
    let mut b = vec![0i64; 9];
    b[4] = (input.chi_v + k) / 2 - 2;
    for s in &input.surfaces {
        let anti = surface_anti_invariant_betti(s.chi)?;
        for _ in 0..s.multiplicity {
            b = blowup_betti_step(&b, &anti);
        }
    }
    Ok(b[4] + k - 2)
}

/// b^4_- = h^{3,1}(V) + sum n_i p_g(Sigma_i) + k + (steps - 1).
pub fn b4_minus(input: &InvariantInput) -> i64 {
    input.h31_v + input.p_g_sigma() + i64::from(input.k) + i64::from(input.steps()) - 1
}

/// b^4 - b^4_+ - b^1 + b^1(Y) + 1.
pub fn moduli_dimension(b4: i64, b4_plus: i64, b1: i64, b1_y: i64) -> i64 {
    b4 - b4_plus - b1 + b1_y + 1
}

/// Dimension b^r + b^r_c - b^r_0 of bounded harmonic r-forms.
pub fn bounded_harmonic_dim(br: i64, brc: i64, br0: i64) -> Result<i64, InvariantError> {
    if br < 0 || brc < 0 || br0 < 0 || br0 > br.min(brc) {
        return Err(InvariantError::Precondition(format!(
            "need 0 <= b_0 = {br0} <= min(b = {br}, b_c = {brc})"
        )));
    }
    Ok(br + brc - br0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub b1_y: i64,
    pub b2_y: i64,
    pub b3_y: i64,
    /// b^0..b^3 of M.
    pub b_low: [i64; 4],
    /// b^0_c..b^3_c of M.
    pub b_low_c: [i64; 4],
    pub b4: i64,
    pub b4_c: i64,
    pub b4_0: i64,
    pub b4_plus: i64,
    pub b4_minus: i64,
    pub bounded_harmonic_4: i64,
    pub moduli: i64,
    pub holonomy: Holonomy,
}

/// The full pipeline, with the report identities enforced.
pub fn compute_invariants(input: &InvariantInput) -> Result<InvariantReport, InvariantError> {
    if input.k == 0 {
        return Err(InvariantError::Precondition(
            "the singular locus must be non-empty (k >= 1)".into(),
        ));
    }
    if input.steps() == 0 {
        return Err(InvariantError::Precondition("Sigma has no components".into()));
    }
    let (b1_y, b2_y, b3_y) = cross_section_betti(input.h21_d)?;
    let b4_0 = b4_zero(input.chi_sigma(), input.chi_v, input.k)?;
    let stepwise = b4_zero_stepwise(input)?;
    if stepwise != b4_0 {
        return Err(InvariantError::Consistency(format!(
            "direct b4_0 = {b4_0} but blow-up steps give {stepwise}"
        )));
    }
    let b4 = b4_0 + b3_y;
    let b4_minus = b4_minus(input);
    if b4_minus > b4_0 {
        return Err(InvariantError::Consistency(format!(
            "b4_- = {b4_minus} exceeds b4_0 = {b4_0}"
        )));
    }
    let b4_plus = b4_0 - b4_minus;
    // compactly supported classes: H^3(Y) -> H^4_c(M) -> H^4_0(M) -> 0
    let b4_c = b4_0 + b3_y;
    let report = InvariantReport {
        b1_y,
        b2_y,
        b3_y,
        b_low: [1, 0, 0, 0],
        b_low_c: [0, 0, 0, 0],
        b4,
        b4_c,
        b4_0,
        b4_plus,
        b4_minus,
        bounded_harmonic_4: bounded_harmonic_dim(b4, b4_c, b4_0)?,
        moduli: moduli_dimension(b4, b4_plus, 0, b1_y),
        holonomy: holonomy_verdict(1, b1_y as u32, input.simply_connected, true),
    };
    for (name, v) in [("b4_0", b4_0), ("b4_plus", b4_plus), ("b4_minus", b4_minus)] {
        if v < 0 {
            return Err(InvariantError::Consistency(format!("{name} = {v} is negative")));
        }
    }
    if report.b4 <= 0 || report.b3_y <= 0 || report.moduli < 1 {
        return Err(InvariantError::Consistency(format!(
            "expected b4 > 0, b3(Y) > 0 and moduli >= 1, got {}, {}, {}",
            report.b4, report.b3_y, report.moduli
        )));
    }
    Ok(report)
}
