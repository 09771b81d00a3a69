use num_traits::{One, Zero};

use crate::exterior::{indices_of, FormBasis, Multivector};
use crate::linalg::{self, Matrix};
use crate::Q;

/// E_ij acting as a derivation: dx_j -> dx_i, every other dx_k -> 0.
/// Equivalently dx_i ^ (e_j -| form).
pub fn elementary_action(i: usize, j: usize, form: &Multivector) -> Multivector {
    let n = form.dim();
    if form.degree() == 0 {
        return Multivector::zero(n, 0);
    }
    let inner = form.contract_basis(j).expect("index in range");
    Multivector::dx(n, &[i])
        .wedge(&inner)
        .expect("same dimension")
}

/// Infinitesimal gl(n) action, A . dx_j = sum_i A_ij dx_i, extended as a
/// derivation. `a` is 0-based, `a[i][j]` = A_{i+1, j+1}.
pub fn infinitesimal_action(a: &Matrix, form: &Multivector) -> Multivector {
    let n = form.dim();
    let mut out = Multivector::zero(n, form.degree());
    for (i, row) in a.iter().enumerate() {
        for (j, aij) in row.iter().enumerate() {
            if !aij.is_zero() {
                out = &out + &elementary_action(i + 1, j + 1, form).scale(aij);
            }
        }
    }
    out
}

/// Group action dx_j -> sum_i g_ij dx_i extended multiplicatively, i.e. the
/// r-th exterior power of g.
pub fn linear_action(g: &Matrix, form: &Multivector) -> Multivector {
    let n = form.dim();
    let images: Vec<Multivector> = (0..n)
        .map(|j| {
            let mut v = Multivector::zero(n, 1);
            for i in 0..n {
                if !g[i][j].is_zero() {
                    v = &v + &Multivector::dx(n, &[i + 1]).scale(&g[i][j]);
                }
            }
            v
        })
        .collect();
    let mut out = Multivector::zero(n, form.degree());
    for (mask, c) in form.raw_terms() {
        let mut term = Multivector::scalar(n, c.clone());
        for k in indices_of(mask) {
            term = term.wedge(&images[k - 1]).expect("same dimension");
        }
        out = &out + &term;
    }
    out
}

/// Basis E_ij - E_ji (i < j) of so(n).
pub fn so_basis(n: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut m = vec![vec![Q::zero(); n]; n];
            m[i][j] = Q::one();
            m[j][i] = -Q::one();
            out.push(m);
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct StabilizerResult {
    pub form: Multivector,
    pub dim: usize,
    /// n x n matrices spanning the annihilator subalgebra.
    pub basis: Vec<Matrix>,
}

/// Exact kernel of A -> A . form on gl(n). Matrices are flattened row-major,
/// A_ij at position i*n + j.
pub fn stabilizer(form: &Multivector) -> StabilizerResult {
    let n = form.dim();
    let fb = FormBasis::new(n, form.degree());
    let columns: Vec<Vec<Q>> = (0..n * n)
        .map(|k| elementary_action(k / n + 1, k % n + 1, form).coords(&fb))
        .collect();
    let rows = linalg::transpose(&columns);
    let kernel = linalg::kernel(&rows, n * n);
    let basis: Vec<Matrix> = kernel
        .into_iter()
        .map(|v| v.chunks(n).map(<[Q]>::to_vec).collect())
        .collect();
    StabilizerResult {
        form: form.clone(),
        dim: basis.len(),
        basis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{cayley_form, g2_form};
    use crate::q;

    #[test]
    fn elementary_action_replaces_index() {
        let f = Multivector::dx(4, &[1, 2]);
        assert_eq!(elementary_action(3, 2, &f), Multivector::dx(4, &[1, 3]));
        assert_eq!(elementary_action(2, 2, &f), f);
        assert!(elementary_action(3, 4, &f).is_zero());
    }

    #[test]
    fn linear_action_matches_derivative_on_diagonal() {
        // diag(2,1,1,1) scales dx1-containing terms by 2
        let mut g = linalg::identity(4);
        g[0][0] = q(2);
        let f = &Multivector::dx(4, &[1, 2]) + &Multivector::dx(4, &[3, 4]);
        let expect = &Multivector::dx(4, &[1, 2]).scale(&q(2)) + &Multivector::dx(4, &[3, 4]);
        assert_eq!(linear_action(&g, &f), expect);
    }

    #[test]
    fn stabilizer_dimensions() {
        let s = stabilizer(&cayley_form());
        assert_eq!(s.dim, 21);
        for a in &s.basis {
            assert!(infinitesimal_action(a, &cayley_form()).is_zero());
            for i in 0..8 {
                for j in 0..8 {
                    assert_eq!(a[i][j], -a[j][i].clone());
                }
            }
        }
        assert_eq!(stabilizer(&g2_form()).dim, 14);
        assert_eq!(stabilizer(&Multivector::volume(8)).dim, 63);
    }
}
