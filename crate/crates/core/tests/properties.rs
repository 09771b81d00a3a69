use proptest::prelude::*;
use spin7_core::char_numbers::{
    cy3_hodge_from_chi, euler_characteristics, steenbrink_hodge, GradedMonomialRing, TruncatedSeries,
};
use spin7_core::exterior::{FormBasis, Multivector};
use spin7_core::wps::{
    involution_check, isolated_z4_check, CompleteIntersection, Involution, Polynomial, WeightedSpace,
};
use spin7_core::{q, Q};

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn form(dim: usize, degree: usize, coeffs: &[i64]) -> Multivector {
    let basis = FormBasis::new(dim, degree);
    let c: Vec<Q> = coeffs.iter().take(basis.len()).map(|&x| q(x)).collect();
    Multivector::from_coords(&basis, &c)
}

fn sign(k: usize) -> Q {
    if k.is_multiple_of(2) {
        q(1)
    } else {
        q(-1)
    }
}

/// (dim, p, r, coefficients of a p-form, of an r-form, of a second p-form).
fn form_pair() -> impl Strategy<Value = (usize, usize, usize, Vec<i64>, Vec<i64>, Vec<i64>)> {
    (1usize..=6)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(|(n, p)| (Just(n), Just(p), 0..=n - p))
        .prop_flat_map(|(n, p, r)| {
            let c = |k| proptest::collection::vec(-3i64..=3, binomial(n, k));
            (Just(n), Just(p), Just(r), c(p), c(r), c(p))
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn series_reciprocal(c0 in 1i64..5, rest in proptest::collection::vec(-4i64..=4, 0..8)) {
        let order = rest.len();
        let mut coeffs = vec![q(c0)];
        coeffs.extend(rest.iter().map(|&x| q(x)));
        let s = TruncatedSeries::new(coeffs, order);
        let r = s.reciprocal().unwrap();
        prop_assert_eq!(s.mul(&r), TruncatedSeries::one(order));
    }

    #[test]
    fn hilbert_series_counts_monomials(
        pairs in proptest::collection::vec((1u32..=6, 1u32..=12), 1..=6),
    ) {
        let (weights, bounds): (Vec<u32>, Vec<u32>) = pairs.into_iter().unzip();
        let ring = GradedMonomialRing::new(weights, bounds).unwrap();
        let series = ring.hilbert_series(30);
        for d in 0..=30u32 {
            prop_assert_eq!(series[d as usize].clone(), ring.count_monomials(d).into());
        }
    }

    #[test]
    fn jacobian_duality(weights in proptest::collection::vec(1u32..=4, 2..=5), mult in 2u32..=3) {
        let lcm = weights.iter().fold(1u32, |l, &a| l * a / gcd(l, a));
        let degree = lcm * mult;
        let ring = GradedMonomialRing::jacobian_of_diagonal(&weights, degree).unwrap();
        let top = ring.top_degree().unwrap();
        prop_assert_eq!(top, weights.iter().map(|a| degree - 2 * a).sum::<u32>());
        let h = ring.hilbert_series(top as usize + 1);
        prop_assert_eq!(h[top as usize].clone(), 1.into());
        prop_assert_eq!(h[top as usize + 1].clone(), 0.into());
        for j in 0..=top as usize {
            prop_assert_eq!(&h[j], &h[top as usize - j]);
        }
    }

    #[test]
    fn wedge_graded_commutative((n, p, r, a, b, _) in form_pair()) {
        let a = form(n, p, &a);
        let b = form(n, r, &b);
        let ab = a.wedge(&b).unwrap();
        prop_assert_eq!(ab, b.wedge(&a).unwrap().scale(&sign(p * r)));
    }

    #[test]
    fn double_star((n, p, _, a, _, _) in form_pair()) {
        let a = form(n, p, &a);
        prop_assert_eq!(a.hodge_star().hodge_star(), a.scale(&sign(p * (n - p))));
    }

    #[test]
    fn wedge_star_is_inner_product((n, p, _, a, _, c) in form_pair()) {
        let a = form(n, p, &a);
        let c = form(n, p, &c);
        let top = a.wedge(&c.hodge_star()).unwrap();
        prop_assert_eq!(top, Multivector::volume(n).scale(&a.inner(&c).unwrap()));
    }

    #[test]
    fn contraction_is_adjoint_to_wedge(
        (n, p, _, a, _, b) in form_pair(),
        v in proptest::collection::vec(-3i64..=3, 6),
    ) {
        prop_assume!(p >= 1);
        let a = form(n, p, &a);
        let b = form(n, p - 1, &b);
        let v: Vec<Q> = v[..n].iter().map(|&x| q(x)).collect();
        let v_flat = Multivector::from_coords(&FormBasis::new(n, 1), &v);
        let lhs = a.contract(&v).unwrap().inner(&b).unwrap();
        let rhs = a.inner(&v_flat.wedge(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn smooth_hypersurface_euler(n in 2usize..=5, d in 1u32..=9) {
        let weights = vec![1; n + 1];
        let chi = euler_characteristics(&weights, &[d], &[]).unwrap();
        // ((1 - d)^{n+1} - 1)/d + n + 1
        let d = i64::from(d);
        let expected = ((1 - d).pow(n as u32 + 1) - 1) / d + n as i64 + 1;
        prop_assert_eq!(chi.topological, expected);
        prop_assert!(chi.orbifold.is_integer());
    }

    #[test]
    fn relabeling_preserves_octic_checks(perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let (ci, preserved, rho) = octic_fourfold(&[0, 1, 2, 3, 4, 5]);
        let (ci2, preserved2, rho2) = octic_fourfold(&perm);

        let z = isolated_z4_check(&ci).unwrap();
        let z2 = isolated_z4_check(&ci2).unwrap();
        prop_assert_eq!(z.ok(), z2.ok());
        prop_assert_eq!(z.count(), z2.count());

        let v = involution_check(&ci, &preserved, &rho).unwrap();
        let v2 = involution_check(&ci2, &preserved2, &rho2).unwrap();
        prop_assert_eq!(v.ok, v2.ok);
        prop_assert_eq!(v.fixed_points.len(), v2.fixed_points.len());
        prop_assert_eq!(v.multipliers, v2.multipliers);
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The octic in CP^5_{1,1,1,1,4,4} with divisor and surface cuts and its
/// involution, after renaming z_i to z_{perm[i]}.
fn octic_fourfold(perm: &[usize]) -> (CompleteIntersection, Vec<Polynomial>, Involution) {
    let rename = |s: &str| {
        let mut out = s.to_string();
        for (i, &j) in perm.iter().enumerate() {
            out = out.replace(&format!("z{i}"), &format!("y{j}"));
        }
        out.replace('y', "z")
    };
    let base_weights = [1, 1, 1, 1, 4, 4];
    let mut weights = vec![0; 6];
    for (i, &j) in perm.iter().enumerate() {
        weights[j] = base_weights[i];
    }
    let parse = |s: &str| Polynomial::parse(&rename(s), 6).unwrap();
    let f = parse("z0^8 + z1^8 + z2^8 + z3^8 + z4^2 + z5^2");
    let ci = CompleteIntersection::from_equations(WeightedSpace::new(weights).unwrap(), vec![f]).unwrap();
    let preserved = vec![parse("z4 + z5"), parse("z4 - z5")];

    let sigma = [1, 0, 3, 2, 5, 4];
    let eps = [1, -1, 1, -1, 1, 1];
    let mut permutation = vec![0; 6];
    let mut phases = vec![0; 6];
    for i in 0..6 {
        permutation[perm[i]] = perm[sigma[i]];
        phases[perm[i]] = eps[i];
    }
    (ci, preserved, Involution::new(permutation, phases).unwrap())
}

#[test]
fn steenbrink_agrees_with_euler_characteristic() {
    // Fermat Calabi-Yau threefolds in CP^4_{1,1,1,1,a} missing the singular point
    for a in [1u32, 2, 4] {
        let weights = [1, 1, 1, 1, a];
        let degree = 4 + a;
        let hodge = steenbrink_hodge(&weights, degree).unwrap();
        let chi = euler_characteristics(&weights, &[degree], &[]).unwrap();
        assert_eq!(hodge.full[0], 1);
        let h21 = cy3_hodge_from_chi(chi.topological, 1).unwrap();
        assert_eq!(hodge.h(2, 1), Some(h21 as u64), "weights {weights:?}");
    }
}

#[test]
fn quintic_hodge() {
    let h = steenbrink_hodge(&[1; 5], 5).unwrap();
    assert_eq!(h.full, vec![1, 101, 101, 1]);
}
