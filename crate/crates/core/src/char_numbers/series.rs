use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::Q;

/// c_0 + c_1 x + ... + c_N x^N modulo x^{N+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Q>,
}

impl TruncatedSeries {
    /// Pads with zeros or truncates to order `order`.
    pub fn new(mut coeffs: Vec<Q>, order: usize) -> Self {
        coeffs.resize(order + 1, Q::zero());
        Self { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![Q::one()], order)
    }

    /// 1 + a x.
    pub fn linear(a: Q, order: usize) -> Self {
        Self::new(vec![Q::one(), a], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new(
            (0..=order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
            order,
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![Q::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// The inverse series; `None` when c_0 = 0.
    pub fn reciprocal(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let n = self.order();
        let mut inv = vec![Q::zero(); n + 1];
        inv[0] = c0.recip();
        for k in 1..=n {
            let mut acc = Q::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &inv[k - j];
            }
            inv[k] = -acc / c0;
        }
        Some(Self { coeffs: inv })
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.order()), |acc, _| acc.mul(self))
    }

    /// Top coefficient c_N.
    pub fn top(&self) -> Q {
        self.coeffs[self.order()].clone()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qf};

    #[test]
    fn geometric_series() {
        let s = TruncatedSeries::linear(q(-1), 5).reciprocal().unwrap();
        assert!(s.coeffs().iter().all(|c| *c == q(1)));
        assert_eq!(s.to_string(), "1 + x + x^2 + x^3 + x^4 + x^5 + O(x^6)");
    }

    #[test]
    fn binomial() {
        let s = TruncatedSeries::linear(q(1), 4).pow(5);
        let c: Vec<Q> = [1, 5, 10, 10, 5].iter().map(|&n| q(n)).collect();
        assert_eq!(s.coeffs(), c.as_slice());
        assert!(TruncatedSeries::new(vec![q(0), q(1)], 3).reciprocal().is_none());
    }

    #[test]
    fn display_fractions() {
        let s = TruncatedSeries::new(vec![q(0), qf(-1, 2), q(3)], 2);
        assert_eq!(s.to_string(), "-1/2x + 3x^2 + O(x^3)");
    }
}
