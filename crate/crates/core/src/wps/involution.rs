use num_complex::Complex;
use num_integer::Integer;
use num_traits::Zero;

use super::singular::{fmt_c64, points_on_subspace, SubspacePoints, VANISHING_TOL};
use super::{isolated_z4_check, CompleteIntersection, Polynomial, WpsError, CQ};

type C64 = Complex<f64>;

/// rho(z)_i = phases[i] * conj(z_{permutation[i]}).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Involution {
    pub permutation: Vec<usize>,
    pub phases: Vec<i8>,
}

impl Involution {
    pub fn new(permutation: Vec<usize>, phases: Vec<i8>) -> Result<Self, WpsError> {
        let n = permutation.len();
        if phases.len() != n {
            return Err(WpsError::Invalid(format!(
                "permutation has {n} entries but {} phases",
                phases.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in &permutation {
            if p >= n || seen[p] {
                return Err(WpsError::Invalid(format!("{permutation:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if let Some(p) = phases.iter().find(|p| p.abs() != 1) {
            return Err(WpsError::Invalid(format!("phase {p} is not +1 or -1")));
        }
        Ok(Self { permutation, phases })
    }

    /// Complex conjugation composed with the identity permutation.
    pub fn conjugation(n: usize) -> Self {
        Self {
            permutation: (0..n).collect(),
            phases: vec![1; n],
        }
    }

    pub fn apply(&self, z: &[C64]) -> Vec<C64> {
        (0..z.len())
            .map(|i| z[self.permutation[i]].conj() * f64::from(self.phases[i]))
            .collect()
    }

    /// Pairs i < sigma(i) whose phases multiply to -1.
    pub fn quaternionic_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.permutation.len())
            .filter_map(|i| {
                let j = self.permutation[i];
                (i < j && self.phases[i] * self.phases[j] < 0).then_some((i, j))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvolutionVerdict {
    pub ok: bool,
    /// sigma^2 = id and a_{sigma(i)} = a_i.
    pub weight_compatible: bool,
    /// rho^2 is the action of some lambda in C^*.
    pub projectively_involutive: bool,
    /// f o rho = conj(lambda f) for each checked polynomial, in order.
    pub multipliers: Vec<Option<CQ>>,
    pub fixed_points: Vec<Vec<C64>>,
    pub failure: Option<String>,
}

impl InvolutionVerdict {
    fn fail(mut self, reason: String) -> Self {
        self.ok = false;
        self.failure.get_or_insert(reason);
        self
    }

    pub fn fixed_point_strings(&self) -> Vec<String> {
        self.fixed_points
            .iter()
            .map(|z| {
                let parts: Vec<String> = z.iter().map(|c| fmt_c64(*c)).collect();
                format!("[{}]", parts.join(", "))
            })
            .collect()
    }
}

/// Some lambda = exp(2 pi i k / N) with lambda^{a_i} = s_i for signs s_i,
/// where N = 2 lcm(a).
fn root_with_signs(weights: &[u32], signs: &[i8]) -> bool {
    let n = 2 * weights.iter().fold(1u64, |l, &a| l.lcm(&u64::from(a)));
    (0..n).any(|k| {
        weights.iter().zip(signs).all(|(&a, &s)| {
            let r = (k * u64::from(a)) % n;
            if s > 0 {
                r == 0
            } else {
                r == n / 2
            }
        })
    })
}

/// Whether b = s . a for some s in C^*, acting with the weights.
pub(crate) fn weighted_equal(weights: &[u32], a: &[C64], b: &[C64]) -> bool {
    let scale = a.iter().chain(b).fold(0.0f64, |m, c| m.max(c.norm()));
    let tol = VANISHING_TOL * scale.max(1.0);
    let support: Vec<usize> = (0..a.len()).filter(|&i| a[i].norm() > tol).collect();
    if (0..a.len()).any(|i| !support.contains(&i) && b[i].norm() > tol) {
        return false;
    }
    let Some(&i0) = support.iter().min_by_key(|&&i| weights[i]) else {
        return false;
    };
    let a0 = weights[i0];
    let base = (b[i0] / a[i0]).powf(1.0 / f64::from(a0));
    (0..a0).any(|k| {
        let s = base * C64::from_polar(1.0, 2.0 * std::f64::consts::PI * f64::from(k) / f64::from(a0));
        support
            .iter()
            .all(|&i| (s.powu(weights[i]) * a[i] - b[i]).norm() <= tol)
    })
}

/// The first monomial of `image` that breaks proportionality with `f`.
fn offending_monomial(f: &Polynomial, image: &Polynomial) -> String {
    let ratio = image
        .terms()
        .find_map(|(e, c)| {
            let fc = f.coefficient(e);
            (!fc.is_zero()).then(|| c / fc)
        });
    for (e, c) in image.terms() {
        let fc = f.coefficient(e);
        let bad = match &ratio {
            Some(r) => fc.is_zero() || fc * r != *c,
            None => true,
        };
        if bad {
            return Polynomial::monomial(e.clone(), c.clone()).to_string();
        }
    }
    for (e, c) in f.terms() {
        if image.coefficient(e).is_zero() {
            return Polynomial::monomial(e.clone(), c.clone()).to_string();
        }
    }
    "0".into()
}

/// Checks that rho is an antiholomorphic involution of the complete
/// intersection, preserving each polynomial in `preserved` (divisor cuts)
/// up to a scalar, whose fixed locus is exactly the singular set.
pub fn involution_check(
    ci: &CompleteIntersection,
    preserved: &[Polynomial],
    rho: &Involution,
) -> Result<InvolutionVerdict, WpsError> {
    let weights = ci.space.weights();
    let n = weights.len();
    if rho.permutation.len() != n {
        return Err(WpsError::VariableCount {
            expected: n,
            found: rho.permutation.len(),
        });
    }
    let mut verdict = InvolutionVerdict {
        ok: true,
        weight_compatible: false,
        projectively_involutive: false,
        multipliers: Vec::new(),
        fixed_points: Vec::new(),
        failure: None,
    };
    let sigma = &rho.permutation;
    if let Some(i) = (0..n).find(|&i| sigma[sigma[i]] != i) {
        return Ok(verdict.fail(format!("permutation is not an involution at index {i}")));
    }
    if let Some(i) = (0..n).find(|&i| weights[sigma[i]] != weights[i]) {
        return Ok(verdict.fail(format!(
            "permutation sends z{i} of weight {} to z{} of weight {}",
            weights[i], sigma[i], weights[sigma[i]]
        )));
    }
    verdict.weight_compatible = true;
    let signs: Vec<i8> = (0..n).map(|i| rho.phases[i] * rho.phases[sigma[i]]).collect();
    if !root_with_signs(weights, &signs) {
        return Ok(verdict.fail("rho^2 is not a weighted scaling".into()));
    }
    verdict.projectively_involutive = true;

    let equations: &[Polynomial] = ci.equations.as_deref().unwrap_or(&[]);
    if ci.equations.is_none() && !ci.degrees.is_empty() {
        return Err(WpsError::Invalid("the involution check needs explicit equations".into()));
    }
    for f in equations.iter().chain(preserved) {
        if f.nvars() != n {
            return Err(WpsError::VariableCount {
                expected: n,
                found: f.nvars(),
            });
        }
        let image = f.conjugate_image(sigma, &rho.phases);
        let lambda = f.proportionality(&image);
        let missing = lambda.is_none();
        verdict.multipliers.push(lambda);
        if missing {
            let culprit = offending_monomial(f, &image);
            return Ok(verdict.fail(format!("{f} is not preserved up to a scalar: offending monomial {culprit}")));
        }
    }

    let mut rest: Vec<usize> = (0..n).collect();
    for (i, j) in rho.quaternionic_pairs() {
        rest.retain(|&k| k != i && k != j);
    }
    let candidates = match points_on_subspace(weights, equations, &rest)? {
        SubspacePoints::Positive => {
            return Ok(verdict.fail(
                "fixed locus is not confined to finitely many points".into(),
            ))
        }
        SubspacePoints::Finite(p) => p,
    };
    verdict.fixed_points = candidates
        .into_iter()
        .map(|(z, _)| z)
        .filter(|z| weighted_equal(weights, z, &rho.apply(z)))
        .collect();

    let singular = isolated_z4_check(ci)?;
    let same_point = |a: &[C64], b: &[C64]| weighted_equal(weights, a, b);
    let unmatched_fixed = verdict
        .fixed_points
        .iter()
        .find(|z| !singular.points.iter().any(|p| same_point(&p.coords, z)))
        .cloned();
    if let Some(z) = unmatched_fixed {
        let parts: Vec<String> = z.iter().map(|c| fmt_c64(*c)).collect();
        return Ok(verdict.fail(format!("fixes the smooth point [{}]", parts.join(", "))));
    }
    if let Some(p) = singular
        .points
        .iter()
        .find(|p| !verdict.fixed_points.iter().any(|z| same_point(&p.coords, z)))
    {
        return Ok(verdict.fail(format!("does not fix the singular point {}", p.coords_string())));
    }
    Ok(verdict)
}
