use std::f64::consts::PI;

use num_complex::Complex;
use num_traits::Zero;

use super::{cq_to_f64, gcd_all, CompleteIntersection, Polynomial, WpsError};

type C64 = Complex<f64>;

/// Numerical tolerance for deciding that a polynomial vanishes at a point
/// computed in floating point.
pub(crate) const VANISHING_TOL: f64 = 1e-9;

/// Points of V cut with a coordinate subspace, each with its intersection
/// multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub enum SubspacePoints {
    Finite(Vec<(Vec<C64>, u32)>),
    /// The intersection has positive dimension.
    Positive,
}

fn unit_point(n: usize, i: usize) -> Vec<C64> {
    let mut z = vec![C64::new(0.0, 0.0); n];
    z[i] = C64::new(1.0, 0.0);
    z
}

/// Intersection of {equations = 0} with L_S = {z_j = 0 for j outside S}
/// in CP^n_a, for |S| <= 2 or when the cut is visibly positive-dimensional.
pub fn points_on_subspace(
    weights: &[u32],
    equations: &[Polynomial],
    support: &[usize],
) -> Result<SubspacePoints, WpsError> {
    let n = weights.len();
    let restricted: Vec<Polynomial> = equations
        .iter()
        .map(|f| f.restrict(support))
        .filter(|f| !f.is_zero())
        .collect();
    match support.len() {
        0 => Ok(SubspacePoints::Finite(Vec::new())),
        1 => Ok(SubspacePoints::Finite(if restricted.is_empty() {
            vec![(unit_point(n, support[0]), 1)]
        } else {
            Vec::new()
        })),
        2 => {
            let Some(first) = restricted.first() else {
                return Ok(SubspacePoints::Positive);
            };
            let (i, j) = (support[0], support[1]);
            let terms = first.diagonal_terms().ok_or_else(|| {
                WpsError::Unsupported(format!("non-diagonal restriction {first}"))
            })?;
            let mut candidates: Vec<(Vec<C64>, u32)> = Vec::new();
            match terms.as_slice() {
                [(v, p, _)] => {
                    // c z_v^p = 0 leaves the other coordinate point
                    let other = if *v == i { j } else { i };
                    candidates.push((unit_point(n, other), *p));
                }
                [(_, p, ci), (_, _, cj)] => {
                    let (bi, bj) = (weights[i], weights[j]);
                    let g = gcd_all([bi, bj]);
                    let (beta_i, beta_j) = (bi / g, bj / g);
                    let d_reduced = p * bi / g;
                    let l = d_reduced / (beta_i * beta_j);
                    // z_j = 1 and w = z_i^beta_j solves w^l = -cj/ci
                    let r = -cq_to_f64(cj) / cq_to_f64(ci);
                    let (rho, theta) = r.to_polar();
                    for k in 0..l {
                        let w = C64::from_polar(
                            rho.powf(1.0 / l as f64),
                            (theta + 2.0 * PI * k as f64) / l as f64,
                        );
                        let zi = w.powf(1.0 / beta_j as f64);
                        let mut z = vec![C64::new(0.0, 0.0); n];
                        z[i] = zi;
                        z[j] = C64::new(1.0, 0.0);
                        candidates.push((z, 1));
                    }
                }
                _ => unreachable!("a restriction to two variables has at most two pure powers"),
            }
            let points = candidates
                .into_iter()
                .filter(|(z, _)| {
                    restricted[1..]
                        .iter()
                        .all(|f| f.eval(z).norm() < VANISHING_TOL)
                })
                .collect();
            Ok(SubspacePoints::Finite(points))
        }
        s => {
            if restricted.len() < s - 1 {
                Ok(SubspacePoints::Positive)
            } else {
                Err(WpsError::Unsupported(format!(
                    "counting points on a {}-dimensional coordinate subspace",
                    s - 1
                )))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularPoint {
    /// Saturated index set of the point's stratum.
    pub stratum: Vec<usize>,
    pub order: u32,
    pub coords: Vec<C64>,
    pub multiplicity: u32,
    /// a_j mod order for the coordinates j outside the stratum.
    pub normal_weights: Vec<u32>,
}

impl SingularPoint {
    /// `[0, 0, 0, 0, 1]`-style rendering with 6 significant decimals.
    pub fn coords_string(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(|z| fmt_c64(*z)).collect();
        format!("[{}]", parts.join(", "))
    }
}

fn clean(x: f64) -> f64 {
    let r = (x * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub(crate) fn fmt_c64(z: C64) -> String {
    let (re, im) = (clean(z.re), clean(z.im));
    match (re == 0.0, im == 0.0) {
        (_, true) => format!("{re}"),
        (true, false) if im == 1.0 => "i".into(),
        (true, false) if im == -1.0 => "-i".into(),
        (true, false) => format!("{im}i"),
        (false, false) => format!("{re}{}{}i", if im < 0.0 { "-" } else { "+" }, im.abs()),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Z4Check {
    /// Every singular stratum meets V in finitely many points.
    pub isolated: bool,
    /// Every such point has intersection multiplicity one.
    pub reduced: bool,
    pub points: Vec<SingularPoint>,
    /// Every point is C^4/Z4 with Z4 acting as (i, i, i, i) for a suitable
    /// generator.
    pub action_ok: bool,
    pub explanation: Option<String>,
}

impl Z4Check {
    pub fn count(&self) -> usize {
        self.points.len()
    }

    pub fn ok(&self) -> bool {
        self.isolated && self.reduced && self.action_ok && !self.points.is_empty()
    }
}

fn saturation(weights: &[u32], support: &[usize]) -> (Vec<usize>, u32) {
    let m = gcd_all(support.iter().map(|&i| weights[i]));
    let s = (0..weights.len()).filter(|&i| weights[i].is_multiple_of(m)).collect();
    (s, m)
}

/// Singular points of a diagonal member and their local Z4 models.
pub fn isolated_z4_check(ci: &CompleteIntersection) -> Result<Z4Check, WpsError> {
    let weights = ci.space.weights();
    let equations: &[Polynomial] = match &ci.equations {
        Some(e) => e,
        None if ci.degrees.is_empty() => &[],
        None => {
            return Err(WpsError::Invalid(
                "the singular-point check needs explicit equations".into(),
            ))
        }
    };
    let mut points = Vec::new();
    let mut reduced = true;
    let mut explanation = None;
    for stratum in ci.space.singular_strata() {
        match points_on_subspace(weights, equations, &stratum.indices)? {
            SubspacePoints::Positive => {
                let vars: Vec<String> = stratum.indices.iter().map(|i| format!("z{i}")).collect();
                return Ok(Z4Check {
                    isolated: false,
                    reduced,
                    points,
                    action_ok: false,
                    explanation: Some(format!(
                        "singular stratum spanned by {} (order {}, dimension {}) meets the variety in a positive-dimensional set",
                        vars.join(", "),
                        stratum.order,
                        stratum.dim
                    )),
                });
            }
            SubspacePoints::Finite(found) => {
                for (coords, multiplicity) in found {
                    let support: Vec<usize> =
                        (0..coords.len()).filter(|&i| !coords[i].is_zero()).collect();
                    let (sat, order) = saturation(weights, &support);
                    if sat != stratum.indices {
                        continue;
                    }
                    if multiplicity > 1 {
                        reduced = false;
                        explanation.get_or_insert_with(|| {
                            format!("singular point meets the variety with multiplicity {multiplicity}")
                        });
                    }
                    let normal_weights = (0..weights.len())
                        .filter(|i| !sat.contains(i))
                        .map(|j| weights[j] % order)
                        .collect();
                    points.push(SingularPoint {
                        stratum: sat,
                        order,
                        coords,
                        multiplicity,
                        normal_weights,
                    });
                }
            }
        }
    }
    let mut action_ok = true;
    for p in &points {
        let w = &p.normal_weights;
        let good = p.order == 4 && w.len() == 4 && (w[0] == 1 || w[0] == 3) && w.iter().all(|x| *x == w[0]);
        if !good && action_ok {
            action_ok = false;
            explanation.get_or_insert_with(|| {
                format!(
                    "singular point {} has isotropy order {} with local weights {:?}, not C^4/Z4 acting as (i,i,i,i)",
                    p.coords_string(),
                    p.order,
                    w
                )
            });
        }
    }
    Ok(Z4Check {
        isolated: true,
        reduced,
        points,
        action_ok,
        explanation,
    })
}
