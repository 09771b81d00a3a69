//! Dense exact linear algebra over the rationals.
//!
//! Matrices are plain `Vec<Vec<Q>>` in row-major order. Everything here is
//! Gaussian elimination; the sizes in this crate never exceed 70 x 70.

use num_traits::{One, Zero};

use crate::Q;

pub type Vector = Vec<Q>;
pub type Matrix = Vec<Vec<Q>>;

pub fn zeros(n: usize) -> Vector {
    vec![Q::zero(); n]
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + x * y
        }
    })
}

pub fn axpy(alpha: &Q, x: &[Q], y: &mut [Q]) {
    if alpha.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += alpha * xi;
        }
    }
}

pub fn is_zero(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// In-place reduced row echelon form. Returns the pivot column of each
/// nonzero row; rows past `pivots.len()` are zero afterwards.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let nrows = m.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = m[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Q::one() / &m[row][col];
        for x in m[row].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let factor = -other[col].clone();
                axpy(&factor, &pivot_row, other);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(rows: &[Vector]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : A x = 0}` where `rows` are the rows of `A`.
pub fn kernel(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = zeros(ncols);
        v[free] = Q::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// A basis of the span of `vectors` (the nonzero rows of the echelon form).
pub fn span_basis(vectors: &[Vector]) -> Vec<Vector> {
    let mut m = vectors.to_vec();
    let r = rref(&mut m).len();
    m.truncate(r);
    m
}

/// Orthogonal complement (standard inner product) of the span of `vectors`
/// inside `Q^dim`.
pub fn orthogonal_complement(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    kernel(vectors, dim)
}

/// Solves `A x = b` for square invertible `A`; `None` if singular.
pub fn solve(a: &Matrix, b: &[Q]) -> Option<Vector> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Orthogonal projection of `v` onto the span of the linearly independent
/// `basis` vectors.
pub fn project(basis: &[Vector], v: &[Q]) -> Vector {
    if basis.is_empty() {
        return zeros(v.len());
    }
    let gram: Matrix = basis
        .iter()
        .map(|a| basis.iter().map(|b| dot(a, b)).collect())
        .collect();
    let rhs: Vector = basis.iter().map(|b| dot(b, v)).collect();
    let coeffs = solve(&gram, &rhs).expect("projection basis must be independent");
    let mut out = zeros(v.len());
    for (c, b) in coeffs.iter().zip(basis) {
        axpy(c, b, &mut out);
    }
    out
}

/// True when `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vector], v: &[Q]) -> bool {
    let mut rows = basis.to_vec();
    let r0 = rank(&rows);
    rows.push(v.to_vec());
    rank(&rows) == r0
}

/// True when the two families span the same subspace.
pub fn same_span(a: &[Vector], b: &[Vector]) -> bool {
    let ra = rank(a);
    let rb = rank(b);
    if ra != rb {
        return false;
    }
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    rank(&all) == ra
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect()
}

pub fn mat_vec(m: &Matrix, v: &[Q]) -> Vector {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let bt = transpose(b);
    a.iter()
        .map(|row| bt.iter().map(|col| dot(row, col)).collect())
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            let mut r = zeros(n);
            r[i] = Q::one();
            r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 1);
        assert!(is_zero(&mat_vec(&a, &k[0])));
    }

    #[test]
    fn solve_and_project() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![crate::qf(4, 5), crate::qf(7, 5)]);
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &[q(1), q(1)]).is_none());

        let basis = m(&[&[1, 1, 0]]);
        let p = project(&basis, &[q(1), q(0), q(5)]);
        assert_eq!(p, vec![crate::qf(1, 2), crate::qf(1, 2), q(0)]);
    }

    #[test]
    fn spans() {
        let a = m(&[&[1, 0, 0], &[0, 1, 0]]);
        let b = m(&[&[1, 1, 0], &[1, -1, 0]]);
        assert!(same_span(&a, &b));
        assert!(in_span(&a, &[q(3), q(4), q(0)]));
        assert!(!in_span(&a, &[q(0), q(0), q(1)]));
        assert_eq!(orthogonal_complement(&a, 3).len(), 1);
    }
}
