use num_traits::Zero;

use super::{CompleteIntersection, WpsError, CQ};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quasismooth {
    pub ok: bool,
    pub reason: Option<String>,
}

impl Quasismooth {
    fn yes() -> Self {
        Self { ok: true, reason: None }
    }

    fn no(reason: String) -> Self {
        Self {
            ok: false,
            reason: Some(reason),
        }
    }
}

/// Quasismoothness of diagonal members.
///
/// A hypersurface sum c_i z_i^{e_i} is quasismooth exactly when every
/// variable occurs. For k equations sharing the exponents e_i, the cone is
/// smooth when every k x k minor of the coefficient matrix is nonzero, and
/// singular when some minor vanishes and all e_i >= 2. With degrees only,
/// the question is whether a diagonal member exists, i.e. a_i | d for all i.
pub fn diagonal_quasismooth(ci: &CompleteIntersection) -> Result<Quasismooth, WpsError> {
    let a = ci.space.weights();
    let Some(equations) = &ci.equations else {
        if ci.degrees.len() > 1 && ci.degrees.iter().any(|&d| d != ci.degrees[0]) {
            return Err(WpsError::Unsupported(
                "diagonal members of complete intersections with unequal degrees".into(),
            ));
        }
        for &d in &ci.degrees {
            if let Some(i) = (0..a.len()).find(|&i| d % a[i] != 0) {
                return Ok(Quasismooth::no(format!(
                    "variable not represented: z{i} of weight {} has no pure power of degree {d}",
                    a[i]
                )));
            }
        }
        return Ok(Quasismooth::yes());
    };
    if ci.certified_quasismooth {
        return Ok(Quasismooth {
            ok: true,
            reason: Some("certified by the user".into()),
        });
    }
    let n = a.len();
    let k = equations.len();
    let mut exponents: Vec<Option<u32>> = vec![None; n];
    let mut coeffs: Vec<Vec<CQ>> = vec![vec![CQ::zero(); n]; k];
    for (row, f) in equations.iter().enumerate() {
        let terms = f.diagonal_terms().ok_or_else(|| {
            WpsError::Unsupported(format!("general quasismoothness of non-diagonal {f}"))
        })?;
        for (i, e, c) in terms {
            match exponents[i] {
                Some(e0) if e0 != e => {
                    return Err(WpsError::Unsupported(format!(
                        "diagonal equations with different exponents of z{i}"
                    )))
                }
                _ => exponents[i] = Some(e),
            }
            coeffs[row][i] = c;
        }
    }
    if let Some(i) = (0..n).find(|&i| exponents[i].is_none()) {
        return Ok(Quasismooth::no(format!("variable not represented: z{i} occurs in no equation")));
    }
    if k <= 1 {
        return Ok(Quasismooth::yes());
    }
    for cols in combinations(n, k) {
        let m: Vec<Vec<CQ>> = coeffs
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        if determinant(m).is_zero() {
            let vars: Vec<String> = cols.iter().map(|c| format!("z{c}")).collect();
            if exponents.iter().all(|e| e.unwrap_or(0) >= 2) {
                return Ok(Quasismooth::no(format!(
                    "coefficient minor on {} vanishes",
                    vars.join(", ")
                )));
            }
            return Err(WpsError::Unsupported(format!(
                "degenerate minor on {} with a linear variable",
                vars.join(", ")
            )));
        }
    }
    Ok(Quasismooth::yes())
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..n {
            acc.push(i);
            rec(i + 1, n, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn determinant(mut m: Vec<Vec<CQ>>) -> CQ {
    let n = m.len();
    let mut det = super::cq_int(1);
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return CQ::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= pivot.clone();
        for r in col + 1..n {
            let factor = m[r][col].clone() / pivot.clone();
            for c in col..n {
                let x = m[col][c].clone() * factor.clone();
                m[r][c] -= x;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wps::{Polynomial, WeightedSpace};

    fn ci(weights: &[u32], eqs: &[&str]) -> CompleteIntersection {
        let n = weights.len();
        CompleteIntersection::from_equations(
            WeightedSpace::new(weights.to_vec()).unwrap(),
            eqs.iter().map(|s| Polynomial::parse(s, n).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn fermat_members() {
        let d = ci(&[1, 1, 1, 1, 4], &["z0^8 + z1^8 + z2^8 + z3^8 + z4^2"]);
        assert!(diagonal_quasismooth(&d).unwrap().ok);
        let v = ci(&[1, 1, 1, 1, 4, 4], &["z0^8 + z1^8 + z2^8 + z3^8 + z4^2 + z5^2"]);
        assert!(diagonal_quasismooth(&v).unwrap().ok);
        let s = ci(
            &[1, 1, 1, 1, 4],
            &["z0^8 + z1^8 + z2^8 + z3^8 + z4^2", "z0^8 - z1^8 + 2*z2^8 - 2*z3^8 + i*z4^2"],
        );
        assert!(diagonal_quasismooth(&s).unwrap().ok);
    }

    #[test]
    fn failures() {
        let degrees_only = CompleteIntersection::from_degrees(
            WeightedSpace::new(vec![1, 1, 1, 1, 4]).unwrap(),
            vec![7],
        );
        let r = diagonal_quasismooth(&degrees_only).unwrap();
        assert!(!r.ok);
        assert!(r.reason.unwrap().contains("variable not represented"));

        let missing = ci(&[1, 1, 1], &["z0^2 + z1^2"]);
        assert!(!diagonal_quasismooth(&missing).unwrap().ok);

        let dependent = ci(&[1, 1, 1, 1], &["z0^2 + z1^2 + z2^2 + z3^2", "z0^2 + z1^2 + 2*z2^2 + 3*z3^2"]);
        let r = diagonal_quasismooth(&dependent).unwrap();
        assert!(!r.ok);
        assert!(r.reason.unwrap().contains("z0, z1"));

        let mixed = ci(&[1, 1], &["z0*z1"]);
        assert!(matches!(diagonal_quasismooth(&mixed), Err(WpsError::Unsupported(_))));
    }
}
