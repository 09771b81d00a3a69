use serde::Serialize;

use super::{
    cq_int, diagonal_quasismooth, gcd_all, involution_check, isolated_z4_check, well_formed,
    CompleteIntersection, Involution, Polynomial, WeightedSpace,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanCandidate {
    pub weights: Vec<u32>,
    pub admissible: bool,
    pub checks: Vec<ScanCheck>,
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> ScanCheck {
    ScanCheck {
        name,
        passed,
        detail: detail.into(),
    }
}

/// Non-decreasing tuples of `len` entries in 1..=max with gcd 1, in
/// lexicographic order.
fn sorted_tuples(len: usize, max: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, lo: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if acc.len() == len {
            if gcd_all(acc.iter().copied()) == 1 {
                out.push(acc.clone());
            }
            return;
        }
        for a in lo..=max {
            acc.push(a);
            rec(len, a, max, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, 1, max, &mut Vec::new(), &mut out);
    out
}

/// Pairs adjacent equal weights with phases (+1, -1); unpaired indices are
/// fixed with phase +1.
fn pairing_involution(weights: &[u32]) -> Involution {
    let n = weights.len();
    let mut permutation: Vec<usize> = (0..n).collect();
    let mut phases = vec![1i8; n];
    let mut i = 0;
    while i + 1 < n {
        if weights[i] == weights[i + 1] {
            permutation.swap(i, i + 1);
            phases[i + 1] = -1;
            i += 2;
        } else {
            i += 1;
        }
    }
    Involution { permutation, phases }
}

fn fermat(weights: &[u32], degree: u32) -> Option<Polynomial> {
    let n = weights.len();
    let mut f = Polynomial::zero(n);
    for (i, &a) in weights.iter().enumerate() {
        if !degree.is_multiple_of(a) {
            return None;
        }
        let mut e = vec![0; n];
        e[i] = degree / a;
        f = f.add(&Polynomial::monomial(e, cq_int(1)));
    }
    Some(f)
}

fn examine(weights: Vec<u32>) -> ScanCandidate {
    let space = WeightedSpace::new(weights.clone()).expect("tuples have gcd 1");
    let ambient = CompleteIntersection::from_degrees(space.clone(), Vec::new());
    let mut checks = Vec::new();

    let wf = well_formed(&ambient).expect("no equations");
    checks.push(check(
        "ambient well-formed",
        wf.ok,
        if wf.ok {
            "every n-1 weights are coprime".to_string()
        } else {
            format!("violations {:?}", wf.violations.iter().map(|v| &v.omitted).collect::<Vec<_>>())
        },
    ));

    let degree: u32 = weights.iter().sum();
    let divisor = fermat(&weights, degree).map(|f| {
        CompleteIntersection::from_equations(space.clone(), vec![f]).expect("Fermat sums are homogeneous")
    });
    let (divisor_ok, divisor_detail) = match &divisor {
        None => (false, format!("variable not represented in degree {degree}")),
        Some(d) => match diagonal_quasismooth(d) {
            Ok(q) if q.ok => (true, format!("Fermat member of degree {degree}")),
            Ok(q) => (false, q.reason.unwrap_or_default()),
            Err(e) => (false, e.to_string()),
        },
    };
    checks.push(check("anticanonical Fermat member quasismooth", divisor_ok, divisor_detail));

    let (dwf_ok, dwf_detail) = match divisor.as_ref().map(well_formed) {
        Some(Ok(w)) if w.ok => (true, "well-formed".to_string()),
        Some(Ok(w)) => (
            false,
            format!("violations {:?}", w.violations.iter().map(|v| &v.omitted).collect::<Vec<_>>()),
        ),
        Some(Err(e)) => (false, e.to_string()),
        None => (false, "no divisor".to_string()),
    };
    checks.push(check("divisor well-formed", dwf_ok, dwf_detail));

    let (z4_ok, z4_detail) = match isolated_z4_check(&ambient) {
        Ok(z) if z.ok() => (true, format!("{} point(s) of type C^4/Z4", z.count())),
        Ok(z) if z.isolated && z.points.is_empty() => (false, "no singular points".to_string()),
        Ok(z) => (false, z.explanation.unwrap_or_default()),
        Err(e) => (false, e.to_string()),
    };
    checks.push(check("isolated Z4 singularities", z4_ok, z4_detail));

    let rho = pairing_involution(&weights);
    let (inv_ok, inv_detail) = match &divisor {
        None => (false, "no divisor to preserve".to_string()),
        Some(d) => {
            let f = d.equations.as_ref().expect("built from equations")[0].clone();
            match involution_check(&ambient, &[f], &rho) {
                Ok(v) if v.ok => (
                    true,
                    format!("fixes {}", v.fixed_point_strings().join(" ")),
                ),
                Ok(v) => (false, v.failure.unwrap_or_default()),
                Err(e) => (false, e.to_string()),
            }
        }
    };
    checks.push(check("weight-pairing involution", inv_ok, inv_detail));

    ScanCandidate {
        admissible: checks.iter().all(|c| c.passed),
        weights,
        checks,
    }
}

/// Weighted projective 4-spaces with all weights at most `max_weight`,
/// examined against the necessary conditions for an admissible orbifold:
/// well-formed ambient and anticanonical Fermat divisor, isolated C^4/Z4
/// points and a pairing involution. Only `ambient_dim == 4` is searched.
pub fn scan_admissible(max_weight: u32, ambient_dim: usize) -> Vec<ScanCandidate> {
    if ambient_dim != 4 || max_weight == 0 {
        return Vec::new();
    }
    sorted_tuples(ambient_dim + 1, max_weight)
        .into_iter()
        .map(examine)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_weight_four() {
        let all = scan_admissible(4, 4);
        let admissible: Vec<_> = all.iter().filter(|c| c.admissible).map(|c| c.weights.clone()).collect();
        assert_eq!(admissible, vec![vec![1, 1, 1, 1, 4]]);
        let mut sorted = all.iter().map(|c| c.weights.clone()).collect::<Vec<_>>();
        sorted.sort();
        assert_eq!(sorted, all.iter().map(|c| c.weights.clone()).collect::<Vec<_>>());
    }

    #[test]
    fn projective_space_is_rejected() {
        let all = scan_admissible(1, 4);
        assert_eq!(all.len(), 1);
        assert!(!all[0].admissible);
        let z4 = all[0].checks.iter().find(|c| c.name == "isolated Z4 singularities").unwrap();
        assert_eq!(z4.detail, "no singular points");
    }

    #[test]
    fn other_dimensions_are_empty() {
        assert!(scan_admissible(4, 2).is_empty());
    }

    #[test]
    fn pairing() {
        let rho = pairing_involution(&[1, 1, 1, 1, 4]);
        assert_eq!(rho.permutation, vec![1, 0, 3, 2, 4]);
        assert_eq!(rho.phases, vec![1, -1, 1, -1, 1]);
    }
}
