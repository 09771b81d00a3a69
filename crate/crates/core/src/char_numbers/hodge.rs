use serde::Serialize;

use super::{CharError, GradedMonomialRing};
use crate::wps::CompleteIntersection;

/// Middle-dimensional Hodge numbers h^{dim-q, q}, q = 0..=dim, of a
/// quasismooth diagonal hypersurface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypersurfaceHodge {
    pub dim: usize,
    pub primitive: Vec<u64>,
    pub full: Vec<u64>,
}

impl HypersurfaceHodge {
    /// h^{p,q} with p + q = dim.
    pub fn h(&self, p: usize, q: usize) -> Option<u64> {
        (p + q == self.dim).then(|| self.full[q])
    }
}

/// h^{n-1-q,q}_prim = R_{(q+1)d - sum a} for the Jacobian ring R of the
/// Fermat member of degree d in CP^n_a; the ambient class adds 1 to the
/// middle diagonal.
pub fn steenbrink_hodge(weights: &[u32], degree: u32) -> Result<HypersurfaceHodge, CharError> {
    let ring = GradedMonomialRing::jacobian_of_diagonal(weights, degree)?;
    let dim = weights.len() - 2;
    let sum_a: i64 = weights.iter().map(|&a| i64::from(a)).sum();
    let primitive: Vec<u64> = (0..=dim)
        .map(|q| ring.hilbert((q as i64 + 1) * i64::from(degree) - sum_a))
        .collect();
    let full = primitive
        .iter()
        .enumerate()
        .map(|(q, &h)| h + u64::from(2 * q == dim))
        .collect();
    Ok(HypersurfaceHodge {
        dim,
        primitive,
        full,
    })
}

/// Same as [`steenbrink_hodge`], reading the data off a hypersurface whose
/// equation must be a sum of pure powers of every variable.
pub fn steenbrink_hodge_of(ci: &CompleteIntersection) -> Result<HypersurfaceHodge, CharError> {
    if ci.degrees.len() != 1 {
        return Err(CharError::Invalid(format!(
            "Jacobian-ring Hodge numbers need a hypersurface, got {} equations",
            ci.degrees.len()
        )));
    }
    if let Some(eqs) = &ci.equations {
        let f = &eqs[0];
        let terms = f
            .diagonal_terms()
            .ok_or_else(|| CharError::NonDiagonal(f.to_string()))?;
        let vars: Vec<usize> = terms.iter().map(|t| t.0).collect();
        if vars != (0..ci.space.weights().len()).collect::<Vec<_>>() {
            return Err(CharError::NonDiagonal(format!("{f} misses a variable")));
        }
    }
    steenbrink_hodge(ci.space.weights(), ci.degrees[0])
}

/// h^{2,1} = h^{1,1} - chi/2 on a Calabi-Yau 3-fold with b^1 = 0.
pub fn cy3_hodge_from_chi(chi: i64, h11: i64) -> Result<i64, CharError> {
    if chi % 2 != 0 {
        return Err(CharError::Parity(format!("odd Euler characteristic {chi}")));
    }
    let h21 = h11 - chi / 2;
    if h21 < 0 {
        return Err(CharError::Invalid(format!(
            "h^(2,1) = {h11} - {chi}/2 is negative"
        )));
    }
    Ok(h21)
}
