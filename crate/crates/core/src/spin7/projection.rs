//! Floating-point realisation of the projection Theta onto the orbit of
//! admissible 4-forms near the Cayley form.
//!
//! A 4-form chi close to the orbit is written as chi = g.(Phi0 + xi) with g
//! in GL+(8) and xi in the 27-block of Phi0; then Theta(chi) = g.Phi0 and the
//! residual is g.xi. Newton's method runs on (g, xi) with g updated by
//! right-multiplication with exp(X), X ranging over the 43-dimensional
//! orthogonal complement of the stabilizer of Phi0 in gl(8).

use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::splits::four_form_split;
use super::stabilizer::{elementary_action, stabilizer};
use super::Spin7Error;
use crate::exterior::{cayley_form, FormBasis, Multivector};
use crate::linalg;

/// A 4-form on R^8 as its 70 coefficients in lexicographic monomial order.
pub type FloatForm = DVector<f64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for ProjectionOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-12,
            max_iterations: 50,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProjectionOutcome {
    pub chi: FloatForm,
    /// Theta(chi) = g.Phi0.
    pub phi: FloatForm,
    /// chi - Theta(chi), of type 27 with respect to `phi`.
    pub psi: FloatForm,
    pub iterations: usize,
    /// |g^-1.chi - Phi0 - xi| at exit.
    pub residual: f64,
    /// Norm of the 1+7+35 component of g^-1.psi.
    pub tangency: f64,
}

/// Precomputed data at Phi0 shared by all projections.
#[derive(Debug, Clone)]
pub struct ThetaProjector {
    phi0: FloatForm,
    b27: DMatrix<f64>,
    tangent: DMatrix<f64>,
    complement: Vec<DMatrix<f64>>,
    /// Sparse E_ij action on 4-forms: (row, column, sign) entries, indexed
    /// by 8*i + j.
    elementary: Vec<Vec<(usize, usize, f64)>>,
    subsets: Vec<[usize; 4]>,
}

fn orthonormal_columns(vectors: &[Vec<f64>]) -> DMatrix<f64> {
    let n = vectors[0].len();
    let m = DMatrix::from_fn(n, vectors.len(), |r, c| vectors[c][r]);
    m.qr().q()
}

fn to_f64(v: &[crate::Q]) -> Vec<f64> {
    v.iter().map(|x| x.to_f64().expect("finite rational")).collect()
}

impl Default for ThetaProjector {
    fn default() -> Self {
        Self::new()
    }
}

impl ThetaProjector {
    pub fn new() -> Self {
        let phi = cayley_form();
        let fb = FormBasis::new(8, 4);
        let split = four_form_split(&phi).expect("Cayley form is admissible");
        let b27: Vec<Vec<f64>> = split
            .block("27")
            .expect("27-block")
            .basis
            .iter()
            .map(|b| to_f64(&b.coords(&fb)))
            .collect();
        let b27 = orthonormal_columns(&b27);
        let tangent = DMatrix::identity(70, 70) - &b27 * b27.transpose();

        let stab = stabilizer(&phi);
        let flat: Vec<Vec<crate::Q>> = stab.basis.iter().map(|m| m.concat()).collect();
        let comp: Vec<Vec<f64>> = linalg::orthogonal_complement(&flat, 64)
            .iter()
            .map(|v| to_f64(v))
            .collect();
        let comp = orthonormal_columns(&comp);
        let complement = (0..comp.ncols())
            .map(|c| DMatrix::from_fn(8, 8, |i, j| comp[(8 * i + j, c)]))
            .collect();

        let elementary = (0..64)
            .map(|k| {
                let mut entries = Vec::new();
                for col in 0..fb.len() {
                    let image = elementary_action(k / 8 + 1, k % 8 + 1, &fb.element(col));
                    for (row, c) in image.coords(&fb).iter().enumerate() {
                        if let Some(s) = c.to_f64().filter(|s| *s != 0.0) {
                            entries.push((row, col, s));
                        }
                    }
                }
                entries
            })
            .collect();

        let subsets = fb
            .masks
            .iter()
            .map(|&m| {
                let idx = crate::exterior::indices_of(m);
                [idx[0] - 1, idx[1] - 1, idx[2] - 1, idx[3] - 1]
            })
            .collect();

        Self {
            phi0: DVector::from_vec(to_f64(&phi.coords(&fb))),
            b27,
            tangent,
            complement,
            elementary,
            subsets,
        }
    }

    pub fn phi0(&self) -> &FloatForm {
        &self.phi0
    }

    /// Orthonormal basis of the 27-block at Phi0, as columns.
    pub fn basis_27(&self) -> &DMatrix<f64> {
        &self.b27
    }

    /// Orthogonal projector onto the 1+7+35 blocks at Phi0.
    pub fn tangent_projector(&self) -> &DMatrix<f64> {
        &self.tangent
    }

    pub fn to_float(form: &Multivector) -> FloatForm {
        let fb = FormBasis::new(8, 4);
        DVector::from_vec(to_f64(&form.coords(&fb)))
    }

    /// Fourth exterior power of g as a 70 x 70 matrix.
    pub fn lambda4(&self, g: &DMatrix<f64>) -> DMatrix<f64> {
        DMatrix::from_fn(70, 70, |r, c| det4(g, &self.subsets[r], &self.subsets[c]))
    }

    fn act(&self, a: &DMatrix<f64>, v: &FloatForm) -> FloatForm {
        let mut out = DVector::zeros(70);
        for i in 0..8 {
            for j in 0..8 {
                let aij = a[(i, j)];
                if aij == 0.0 {
                    continue;
                }
                for &(row, col, s) in &self.elementary[8 * i + j] {
                    out[row] += aij * s * v[col];
                }
            }
        }
        out
    }

    pub fn project(
        &self,
        chi: &FloatForm,
        opts: ProjectionOptions,
    ) -> Result<ProjectionOutcome, Spin7Error> {
        let mut g = DMatrix::<f64>::identity(8, 8);
        let mut c = DVector::<f64>::zeros(27);
        let mut iter = 0;
        loop {
            let ginv = g
                .clone()
                .try_inverse()
                .ok_or(Spin7Error::SingularStep(iter))?;
            let model = &self.phi0 + &self.b27 * &c;
            let r = self.lambda4(&ginv) * chi - &model;
            let residual = r.norm();
            if !residual.is_finite() {
                return Err(Spin7Error::NoConvergence {
                    iterations: iter,
                    residual,
                });
            }
            if residual <= opts.tolerance {
                let lg = self.lambda4(&g);
                let xi = &self.b27 * &c;
                let psi = &lg * &xi;
                let tangency = (&self.tangent * (self.lambda4(&ginv) * &psi)).norm();
                return Ok(ProjectionOutcome {
                    chi: chi.clone(),
                    phi: &lg * &self.phi0,
                    psi,
                    iterations: iter,
                    residual,
                    tangency,
                });
            }
            if iter == opts.max_iterations {
                return Err(Spin7Error::NoConvergence {
                    iterations: iter,
                    residual,
                });
            }
            let mut jac = DMatrix::<f64>::zeros(70, 70);
            for (b, m) in self.complement.iter().enumerate() {
                jac.set_column(b, &self.act(m, &model));
            }
            for k in 0..27 {
                jac.set_column(43 + k, &self.b27.column(k));
            }
            let step = jac.lu().solve(&r).ok_or(Spin7Error::SingularStep(iter))?;
            let mut x = DMatrix::<f64>::zeros(8, 8);
            for (b, m) in self.complement.iter().enumerate() {
                x += m * step[b];
            }
            g *= x.exp();
            c += step.rows(43, 27);
            iter += 1;
        }
    }

    /// A random unit vector of the 27-block at Phi0.
    pub fn random_27<R: Rng>(&self, rng: &mut R) -> FloatForm {
        let coeffs = DVector::from_fn(27, |_, _| rng.gen_range(-1.0..1.0));
        let v = &self.b27 * coeffs;
        let n = v.norm();
        v / n
    }

    /// Runs Theta on Phi0 + eps * eta for `directions` random unit eta and
    /// fits log-log slopes of |psi - eps pi_27(eta)| and of the remainder
    /// |Phi0 + eps (pi_1 + pi_7 + pi_35)(eta) - Theta| against eps.
    pub fn slope_study(
        &self,
        kind: DirectionKind,
        directions: usize,
        seed: u64,
        epsilons: &[f64],
        opts: ProjectionOptions,
    ) -> Result<SlopeStudy, Spin7Error> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut results = Vec::with_capacity(directions);
        let mut max_tangency: f64 = 0.0;
        let mut max_iterations = 0;
        for _ in 0..directions {
            let eta = match kind {
                DirectionKind::Normal => self.random_27(&mut rng),
                DirectionKind::Generic => {
                    let v = DVector::from_fn(70, |_, _| rng.gen_range(-1.0..1.0));
                    let n = v.norm();
                    v / n
                }
            };
            let eta_t = &self.tangent * &eta;
            let eta_27 = &eta - &eta_t;
            let mut psi_errors = Vec::with_capacity(epsilons.len());
            let mut remainders = Vec::with_capacity(epsilons.len());
            for &eps in epsilons {
                let chi = &self.phi0 + &eta * eps;
                let out = self.project(&chi, opts)?;
                psi_errors.push((&out.psi - &eta_27 * eps).norm());
                remainders.push((&self.phi0 + &eta_t * eps - &out.phi).norm());
                max_tangency = max_tangency.max(out.tangency);
                max_iterations = max_iterations.max(out.iterations);
            }
            results.push(DirectionResult {
                psi_slope: fit_slope(epsilons, &psi_errors),
                remainder_slope: fit_slope(epsilons, &remainders),
                psi_errors,
                remainders,
            });
        }
        let min = |f: fn(&DirectionResult) -> f64| results.iter().map(f).fold(f64::INFINITY, f64::min);
        let max_psi_error = results
            .iter()
            .flat_map(|d| d.psi_errors.iter().copied())
            .fold(0.0, f64::max);
        Ok(SlopeStudy {
            kind,
            epsilons: epsilons.to_vec(),
            min_psi_slope: min(|d| d.psi_slope),
            min_remainder_slope: min(|d| d.remainder_slope),
            max_psi_error,
            max_tangency,
            max_iterations,
            directions: results,
        })
    }
}

fn det4(g: &DMatrix<f64>, rows: &[usize; 4], cols: &[usize; 4]) -> f64 {
    let m = |r: usize, c: usize| g[(rows[r], cols[c])];
    // Laplace expansion along the first two rows
    let minor2 = |r0: usize, r1: usize, c0: usize, c1: usize| m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut det = 0.0;
    for (k, &(a, b)) in pairs.iter().enumerate() {
        let (c, d) = pairs[5 - k];
        let sign = if (a + b) % 2 == 1 { 1.0 } else { -1.0 };
        det += sign * minor2(0, 1, a, b) * minor2(2, 3, c, d);
    }
    det
}

/// F(psi) = Phi0 + (pi_1 + pi_7 + pi_35) psi - Theta(Phi0 + psi).
fn quadratic_remainder(
    proj: &ThetaProjector,
    psi: &FloatForm,
    opts: ProjectionOptions,
) -> Result<FloatForm, Spin7Error> {
    let out = proj.project(&(proj.phi0() + psi), opts)?;
    Ok(proj.phi0() + proj.tangent_projector() * psi - out.phi)
}

/// |F(psi1) - F(psi2)| / (|psi1 - psi2| (|psi1| + |psi2|)), or 0 when
/// psi1 = psi2.
pub fn quadratic_probe(
    proj: &ThetaProjector,
    psi1: &FloatForm,
    psi2: &FloatForm,
    opts: ProjectionOptions,
) -> Result<f64, Spin7Error> {
    let diff = (psi1 - psi2).norm();
    if diff == 0.0 {
        return Ok(0.0);
    }
    let f1 = quadratic_remainder(proj, psi1, opts)?;
    let f2 = quadratic_remainder(proj, psi2, opts)?;
    Ok((f1 - f2).norm() / (diff * (psi1.norm() + psi2.norm())))
}

/// Random 4-form with norm at most `radius`.
pub fn random_in_ball<R: Rng>(rng: &mut R, radius: f64) -> FloatForm {
    let v = DVector::from_fn(70, |_, _| rng.gen_range(-1.0..1.0));
    let n = v.norm();
    v * (radius * rng.gen_range(0.0..1.0) / n)
}

/// Least-squares slope of log y against log x.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

/// Perturbation directions for [`ThetaProjector::slope_study`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectionKind {
    /// Unit vectors of the 27-block at Phi0. Theta fixes Phi0 on this
    /// fibre, so all errors sit at rounding level.
    Normal,
    /// Unit vectors of all of Lambda^4.
    Generic,
}

#[derive(Debug, Clone, Serialize)]
pub struct DirectionResult {
    pub psi_errors: Vec<f64>,
    pub remainders: Vec<f64>,
    pub psi_slope: f64,
    pub remainder_slope: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SlopeStudy {
    pub kind: DirectionKind,
    pub epsilons: Vec<f64>,
    pub directions: Vec<DirectionResult>,
    pub min_psi_slope: f64,
    pub min_remainder_slope: f64,
    pub max_psi_error: f64,
    pub max_tangency: f64,
    pub max_iterations: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det4_matches_nalgebra() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = DMatrix::from_fn(8, 8, |_, _| rng.gen_range(-1.0..1.0));
        let rows = [0, 2, 5, 7];
        let cols = [1, 2, 3, 6];
        let sub = DMatrix::from_fn(4, 4, |r, c| g[(rows[r], cols[c])]);
        assert!((det4(&g, &rows, &cols) - sub.determinant()).abs() < 1e-12);
    }

    #[test]
    fn fixed_point_and_orbit() {
        let p = ThetaProjector::new();
        let out = p.project(p.phi0(), ProjectionOptions::default()).unwrap();
        assert_eq!(out.iterations, 0);
        assert!(out.psi.norm() == 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = DMatrix::from_fn(8, 8, |_, _| rng.gen_range(-0.05..0.05));
        let g = a.exp();
        let chi = p.lambda4(&g) * p.phi0();
        let out = p.project(&chi, ProjectionOptions::default()).unwrap();
        assert!(out.psi.norm() < 1e-10);
        assert!((&out.phi - &chi).norm() < 1e-10);
    }

    #[test]
    fn far_input_fails() {
        let p = ThetaProjector::new();
        let chi = DVector::from_element(70, 0.0);
        let opts = ProjectionOptions {
            tolerance: 1e-12,
            max_iterations: 5,
        };
        assert!(p.project(&chi, opts).is_err());
    }

    #[test]
    fn quadratic_probe_guard() {
        let p = ThetaProjector::new();
        let z = DVector::zeros(70);
        assert_eq!(quadratic_probe(&p, &z, &z, ProjectionOptions::default()).unwrap(), 0.0);
        let f0 = quadratic_remainder(&p, &z, ProjectionOptions::default()).unwrap();
        assert!(f0.norm() == 0.0);
    }

    #[test]
    fn normal_fibre_is_fixed() {
        let p = ThetaProjector::new();
        let s = p
            .slope_study(DirectionKind::Normal, 3, 1, &[1e-2, 1e-3], ProjectionOptions::default())
            .unwrap();
        assert!(s.max_psi_error < 1e-13);
        assert!(s.max_tangency < 1e-10);
    }

    #[test]
    fn generic_directions_are_second_order() {
        let p = ThetaProjector::new();
        let s = p
            .slope_study(DirectionKind::Generic, 4, 2, &[1e-2, 1e-3, 1e-4], ProjectionOptions::default())
            .unwrap();
        assert!(s.min_psi_slope >= 1.9, "{s:?}");
        assert!(s.min_remainder_slope >= 1.9, "{s:?}");
    }

    #[test]
    fn slope_fit() {
        let xs = [1e-2, 1e-3, 1e-4];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x * x).collect();
        assert!((fit_slope(&xs, &ys) - 2.0).abs() < 1e-12);
    }
}

