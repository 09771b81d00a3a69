use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{CharError, TruncatedSeries};
use crate::{q, Q};

/// C[z_0..z_n]/(z_i^{b_i}) graded by deg z_i = a_i.
///
/// For a diagonal f = sum z_i^{e_i} this is the Jacobian ring with
/// b_i = e_i - 1, whose generators z_i^{e_i - 1} have degree d - a_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMonomialRing {
    weights: Vec<u32>,
    bounds: Vec<u32>,
}

impl GradedMonomialRing {
    pub fn new(weights: Vec<u32>, bounds: Vec<u32>) -> Result<Self, CharError> {
        if weights.len() != bounds.len() {
            return Err(CharError::Invalid(format!(
                "{} weights but {} exponent bounds",
                weights.len(),
                bounds.len()
            )));
        }
        if weights.contains(&0) {
            return Err(CharError::Invalid("zero weight".into()));
        }
        Ok(Self { weights, bounds })
    }

    /// Jacobian ring of the Fermat member of degree d.
    pub fn jacobian_of_diagonal(weights: &[u32], degree: u32) -> Result<Self, CharError> {
        let mut bounds = Vec::with_capacity(weights.len());
        for (i, &a) in weights.iter().enumerate() {
            if a == 0 || !degree.is_multiple_of(a) {
                return Err(CharError::NonDiagonal(format!(
                    "z{i} of weight {a} has no pure power of degree {degree}"
                )));
            }
            let e = degree / a;
            if e < 2 {
                return Err(CharError::NonDiagonal(format!(
                    "z{i} enters linearly; eliminate the linear cone first"
                )));
            }
            bounds.push(e - 1);
        }
        Self::new(weights.to_vec(), bounds)
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    /// Degrees a_i b_i of the ideal generators.
    pub fn generator_degrees(&self) -> Vec<u32> {
        self.weights.iter().zip(&self.bounds).map(|(a, b)| a * b).collect()
    }

    /// Degree of the socle, sum a_i (b_i - 1); `None` for the zero ring.
    pub fn top_degree(&self) -> Option<u32> {
        if self.bounds.contains(&0) {
            return None;
        }
        Some(self.weights.iter().zip(&self.bounds).map(|(a, b)| a * (b - 1)).sum())
    }

    /// Coefficients 0..=max of prod (1 - t^{a_i b_i}) / (1 - t^{a_i}),
    /// expanded as truncated power series.
    pub fn hilbert_series(&self, max_degree: usize) -> Vec<BigInt> {
        let mut s = TruncatedSeries::one(max_degree);
        for (&a, &g) in self.weights.iter().zip(&self.generator_degrees()) {
            let mut num = vec![Q::zero(); max_degree + 1];
            num[0] = q(1);
            if (g as usize) <= max_degree {
                num[g as usize] -= q(1);
            }
            let mut den = vec![Q::zero(); max_degree + 1];
            den[0] = q(1);
            if (a as usize) <= max_degree {
                den[a as usize] = q(-1);
            }
            let den = TruncatedSeries::new(den, max_degree)
                .reciprocal()
                .expect("constant term 1");
            s = s.mul(&TruncatedSeries::new(num, max_degree)).mul(&den);
        }
        s.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "Hilbert series has integer coefficients");
                c.to_integer()
            })
            .collect()
    }

    /// Hilbert function at one degree from the series.
    pub fn hilbert(&self, degree: i64) -> u64 {
        if degree < 0 {
            return 0;
        }
        let d = degree as usize;
        self.hilbert_series(d)[d]
            .to_u64()
            .expect("nonnegative Hilbert value")
    }

    /// Counts exponent vectors 0 <= k_i < b_i with sum a_i k_i = degree.
    pub fn count_monomials(&self, degree: u32) -> u64 {
        fn rec(i: usize, left: u32, a: &[u32], b: &[u32]) -> u64 {
            if i == a.len() {
                return u64::from(left == 0);
            }
            let mut total = 0;
            let mut k = 0;
            while k < b[i] && k * a[i] <= left {
                total += rec(i + 1, left - k * a[i], a, b);
                k += 1;
            }
            total
        }
        rec(0, degree, &self.weights, &self.bounds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventh_powers() {
        // V: four weight-1 variables bounded by z^7, two weight-4 ones by z^1
        let r = GradedMonomialRing::jacobian_of_diagonal(&[1, 1, 1, 1, 4, 4], 8).unwrap();
        assert_eq!(r.bounds(), &[7, 7, 7, 7, 1, 1]);
        assert_eq!(r.hilbert(4), 35);
        assert_eq!(r.count_monomials(4), 35);
        assert_eq!(r.top_degree(), Some(24));
    }

    #[test]
    fn series_matches_enumeration_small() {
        let r = GradedMonomialRing::new(vec![1, 2, 3], vec![3, 2, 4]).unwrap();
        let s = r.hilbert_series(20);
        for (t, v) in s.iter().enumerate() {
            assert_eq!(v.to_u64().unwrap(), r.count_monomials(t as u32));
        }
    }

    #[test]
    fn rejects_non_fermat_degrees() {
        assert!(GradedMonomialRing::jacobian_of_diagonal(&[1, 1, 1, 1, 4], 7).is_err());
        assert!(GradedMonomialRing::jacobian_of_diagonal(&[1, 4], 4).is_err());
    }
}
