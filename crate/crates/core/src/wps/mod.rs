//! Weighted projective spaces CP^n_a and the arithmetic checks on
//! quasismooth diagonal hypersurfaces and complete intersections in them.

mod involution;
mod poly;
mod quasismooth;
mod scan;
mod singular;

pub use involution::{involution_check, Involution, InvolutionVerdict};
pub use poly::{cq, cq_int, cq_to_f64, Polynomial, CQ};
pub use quasismooth::{diagonal_quasismooth, Quasismooth};
pub use scan::{scan_admissible, ScanCandidate, ScanCheck};
pub use singular::{isolated_z4_check, points_on_subspace, SingularPoint, SubspacePoints, Z4Check};

use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WpsError {
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("polynomial literal: {0}")]
    Parse(String),
    #[error("not weighted homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("expected {expected} variables, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Invalid(String),
}

pub fn gcd_all(xs: impl IntoIterator<Item = u32>) -> u32 {
    xs.into_iter().fold(0, |g, x| g.gcd(&x))
}

/// CP^n_a for a weight vector a = (a_0, ..., a_n) with gcd 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedSpace {
    weights: Vec<u32>,
}

impl WeightedSpace {
    pub fn new(weights: Vec<u32>) -> Result<Self, WpsError> {
        if weights.len() < 2 {
            return Err(WpsError::InvalidWeights(format!(
                "need at least two weights, got {weights:?}"
            )));
        }
        if weights.contains(&0) {
            return Err(WpsError::InvalidWeights(format!("zero weight in {weights:?}")));
        }
        if gcd_all(weights.iter().copied()) != 1 {
            return Err(WpsError::InvalidWeights(format!("{weights:?} have a common factor")));
        }
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Complex dimension n.
    pub fn dim(&self) -> usize {
        self.weights.len() - 1
    }

    /// Indices i with a_i = d: the variables that can occur linearly in a
    /// degree-d equation.
    pub fn linear_cone_indices(&self, degree: u32) -> Vec<usize> {
        (0..self.weights.len())
            .filter(|&i| self.weights[i] == degree)
            .collect()
    }

    /// All sets S = {i : m | a_i} with gcd(a_S) >= 2, i.e. the closures of
    /// the singular strata, each with its generic isotropy order.
    pub fn singular_strata(&self) -> Vec<SingularStratum> {
        let max = *self.weights.iter().max().expect("nonempty");
        let mut seen: Vec<Vec<usize>> = Vec::new();
        let mut out = Vec::new();
        for m in 2..=max {
            let s: Vec<usize> = (0..self.weights.len())
                .filter(|&i| self.weights[i].is_multiple_of(m))
                .collect();
            if s.is_empty() || seen.contains(&s) {
                continue;
            }
            let order = gcd_all(s.iter().map(|&i| self.weights[i]));
            seen.push(s.clone());
            let local_weights = (0..self.weights.len())
                .filter(|i| !s.contains(i))
                .map(|j| (j, self.weights[j] % order))
                .collect();
            out.push(SingularStratum {
                dim: s.len() - 1,
                indices: s,
                order,
                local_weights,
            });
        }
        out.sort_by(|a, b| a.indices.cmp(&b.indices));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularStratum {
    pub indices: Vec<usize>,
    pub order: u32,
    /// Complex dimension |S| - 1.
    pub dim: usize,
    /// (j, a_j mod order) for j outside the stratum.
    pub local_weights: Vec<(usize, u32)>,
}

/// A complete intersection of hypersurfaces of the given degrees, with
/// optional explicit equations.
#[derive(Debug, Clone, PartialEq)]
pub struct CompleteIntersection {
    pub space: WeightedSpace,
    pub degrees: Vec<u32>,
    pub equations: Option<Vec<Polynomial>>,
    /// The user vouches for quasismoothness of a non-diagonal member.
    pub certified_quasismooth: bool,
}

impl CompleteIntersection {
    pub fn from_degrees(space: WeightedSpace, degrees: Vec<u32>) -> Self {
        Self {
            space,
            degrees,
            equations: None,
            certified_quasismooth: false,
        }
    }

    /// Degrees are read off the (homogeneous, nonzero) equations.
    pub fn from_equations(space: WeightedSpace, equations: Vec<Polynomial>) -> Result<Self, WpsError> {
        let mut degrees = Vec::with_capacity(equations.len());
        for f in &equations {
            match f.weighted_degree(space.weights())? {
                Some(d) => degrees.push(d),
                None => return Err(WpsError::Invalid("zero polynomial in a complete intersection".into())),
            }
        }
        Ok(Self {
            space,
            degrees,
            equations: Some(equations),
            certified_quasismooth: false,
        })
    }

    /// Complex dimension n - k.
    pub fn dim(&self) -> usize {
        self.space.dim() - self.degrees.len()
    }

    /// Sum of weights minus sum of degrees: -K = O(this).
    pub fn anticanonical_degree(&self) -> i64 {
        let a: i64 = self.space.weights().iter().map(|&x| x as i64).sum();
        let d: i64 = self.degrees.iter().map(|&x| x as i64).sum();
        a - d
    }

    /// Repeatedly uses an equation c z_i + g = 0 (g free of z_i) to
    /// eliminate z_i, replacing the datum by an isomorphic one in
    /// CP^{n-1} with a_i removed. Equations that become zero are dropped.
    pub fn eliminate_linear_cones(&self) -> Result<Reduced, WpsError> {
        let Some(equations) = &self.equations else {
            return Ok(Reduced {
                datum: self.clone(),
                kept: (0..self.space.weights.len()).collect(),
            });
        };
        let mut weights = self.space.weights.clone();
        let mut eqs = equations.clone();
        let mut kept: Vec<usize> = (0..weights.len()).collect();
        'outer: loop {
            for (k, f) in eqs.iter().enumerate() {
                for i in 0..weights.len() {
                    let mut e = vec![0; weights.len()];
                    e[i] = 1;
                    let c = f.coefficient(&e);
                    if c.is_zero() {
                        continue;
                    }
                    let rest = f.sub(&Polynomial::monomial(e, c.clone()));
                    if rest.involves(i) {
                        continue;
                    }
                    let value = rest.scale(&(cq_int(-1) / c));
                    let mut next = Vec::new();
                    for (j, g) in eqs.iter().enumerate() {
                        if j == k {
                            continue;
                        }
                        let h = g.substitute(i, &value).drop_var(i);
                        if !h.is_zero() {
                            next.push(h);
                        }
                    }
                    eqs = next;
                    weights.remove(i);
                    kept.remove(i);
                    continue 'outer;
                }
            }
            break;
        }
        let g = gcd_all(weights.iter().copied());
        if g != 1 {
            return Err(WpsError::Unsupported(format!(
                "linear-cone elimination leaves weights {weights:?} with common factor {g}"
            )));
        }
        let space = WeightedSpace::new(weights)?;
        let mut datum = Self::from_equations(space, eqs)?;
        datum.certified_quasismooth = self.certified_quasismooth;
        Ok(Reduced { datum, kept })
    }
}

/// Result of [`CompleteIntersection::eliminate_linear_cones`]: the reduced
/// datum and, for each of its variables, the original variable index.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduced {
    pub datum: CompleteIntersection,
    pub kept: Vec<usize>,
}

/// One failed divisibility condition: the omitted weight indices, the hcf
/// of the remaining weights and what it should divide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub omitted: Vec<usize>,
    pub hcf: u32,
    pub requirement: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellFormedness {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

fn hcf_without(weights: &[u32], omitted: &[usize]) -> u32 {
    gcd_all(
        (0..weights.len())
            .filter(|i| !omitted.contains(i))
            .map(|i| weights[i]),
    )
}

/// Divisibility conditions for the ambient space (no degrees), a
/// hypersurface, or a complete intersection of two hypersurfaces.
pub fn well_formed(ci: &CompleteIntersection) -> Result<WellFormedness, WpsError> {
    let a = ci.space.weights();
    let n = a.len();
    let d = &ci.degrees;
    if d.len() > 2 {
        return Err(WpsError::Unsupported(format!(
            "general well-formedness for {} equations",
            d.len()
        )));
    }
    let mut violations = Vec::new();
    for i in 0..n {
        let h = hcf_without(a, &[i]);
        if h != 1 {
            violations.push(Violation {
                omitted: vec![i],
                hcf: h,
                requirement: "equal 1".into(),
            });
        }
    }
    if !d.is_empty() {
        for i in 0..n {
            for j in i + 1..n {
                let h = hcf_without(a, &[i, j]);
                if d.iter().any(|&dk| dk % h != 0) {
                    let requirement = if d.len() == 1 {
                        format!("divide {}", d[0])
                    } else {
                        format!("divide both {} and {}", d[0], d[1])
                    };
                    violations.push(Violation {
                        omitted: vec![i, j],
                        hcf: h,
                        requirement,
                    });
                }
            }
        }
    }
    if d.len() == 2 {
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let h = hcf_without(a, &[i, j, k]);
                    if !d[0].is_multiple_of(h) && !d[1].is_multiple_of(h) {
                        violations.push(Violation {
                            omitted: vec![i, j, k],
                            hcf: h,
                            requirement: format!("divide {} or {}", d[0], d[1]),
                        });
                    }
                }
            }
        }
    }
    Ok(WellFormedness {
        ok: violations.is_empty(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(w: &[u32]) -> WeightedSpace {
        WeightedSpace::new(w.to_vec()).unwrap()
    }

    #[test]
    fn weights_are_validated() {
        assert!(WeightedSpace::new(vec![2, 4]).is_err());
        assert!(WeightedSpace::new(vec![1]).is_err());
        assert!(WeightedSpace::new(vec![0, 1]).is_err());
    }

    #[test]
    fn examples_are_well_formed() {
        let w = space(&[1, 1, 1, 1, 4]);
        assert!(well_formed(&CompleteIntersection::from_degrees(w.clone(), vec![8])).unwrap().ok);
        assert!(well_formed(&CompleteIntersection::from_degrees(w.clone(), vec![8, 8])).unwrap().ok);
        assert!(well_formed(&CompleteIntersection::from_degrees(w, vec![])).unwrap().ok);
    }

    #[test]
    fn cubic_in_1122_is_not_well_formed() {
        let r = well_formed(&CompleteIntersection::from_degrees(space(&[1, 1, 2, 2]), vec![3])).unwrap();
        assert!(!r.ok);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].omitted, vec![0, 1]);
        assert_eq!(r.violations[0].hcf, 2);
    }

    #[test]
    fn too_many_equations_is_unsupported() {
        let ci = CompleteIntersection::from_degrees(space(&[1, 1, 1, 1, 1]), vec![2, 2, 2]);
        assert!(matches!(well_formed(&ci), Err(WpsError::Unsupported(_))));
    }

    #[test]
    fn singular_strata_examples() {
        let s = space(&[1, 1, 1, 1, 4]).singular_strata();
        assert_eq!(s.len(), 1);
        assert_eq!((s[0].indices.clone(), s[0].order, s[0].dim), (vec![4], 4, 0));
        let s = space(&[1, 1, 1, 1, 4, 4]).singular_strata();
        assert_eq!(s.len(), 1);
        assert_eq!((s[0].dim, s[0].order), (1, 4));
        assert!(space(&[1, 1, 1, 1]).singular_strata().is_empty());
        // nested strata with different isotropy
        let s = space(&[1, 2, 4]).singular_strata();
        assert_eq!(s.iter().map(|x| x.order).collect::<Vec<_>>(), vec![2, 4]);
    }

    #[test]
    fn anticanonical_degrees() {
        let w = space(&[1, 1, 1, 1, 4]);
        assert_eq!(CompleteIntersection::from_degrees(w.clone(), vec![]).anticanonical_degree(), 8);
        assert_eq!(CompleteIntersection::from_degrees(w, vec![8, 8]).anticanonical_degree(), -8);
        let v = CompleteIntersection::from_degrees(space(&[1, 1, 1, 1, 4, 4]), vec![8]);
        assert_eq!(v.anticanonical_degree(), 4);
    }

    #[test]
    fn linear_cones() {
        assert_eq!(space(&[1, 1, 1, 1, 4, 4]).linear_cone_indices(4), vec![4, 5]);
        assert!(space(&[1, 1, 1, 1, 4]).linear_cone_indices(8).is_empty());
        assert_eq!(space(&[1, 1, 1]).linear_cone_indices(1), vec![0, 1, 2]);
    }

    #[test]
    fn elimination_of_the_fermat_surface() {
        let w = space(&[1, 1, 1, 1, 4, 4]);
        let eqs = ["z0^8 + z1^8 + z2^8 + z3^8 + z4^2 + z5^2", "z4 + z5", "z4 - z5"]
            .iter()
            .map(|s| Polynomial::parse(s, 6).unwrap())
            .collect();
        let ci = CompleteIntersection::from_equations(w, eqs).unwrap();
        let r = ci.eliminate_linear_cones().unwrap();
        assert_eq!(r.datum.space.weights(), &[1, 1, 1, 1]);
        assert_eq!(r.datum.degrees, vec![8]);
        assert_eq!(r.kept, vec![0, 1, 2, 3]);
        assert_eq!(
            r.datum.equations.unwrap()[0].to_string(),
            "z0^8 + z1^8 + z2^8 + z3^8"
        );
    }
}
