use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::{CharError, TruncatedSeries};
use crate::{q, Q};

/// Complex dimension n - k of a complete intersection of k hypersurfaces
/// in CP^n_a.
pub fn ci_dimension(weights: &[u32], degrees: &[u32]) -> Result<usize, CharError> {
    let n = weights.len().checked_sub(1).ok_or_else(|| CharError::Invalid("no weights".into()))?;
    n.checked_sub(degrees.len())
        .ok_or_else(|| CharError::Invalid(format!("{} equations in CP^{n}", degrees.len())))
}

/// prod_j (1 + a_j x) * prod_i (1 + d_i x)^{-1}, truncated at the dimension.
pub fn total_chern(weights: &[u32], degrees: &[u32]) -> Result<TruncatedSeries, CharError> {
    let order = ci_dimension(weights, degrees)?;
    let mut c = TruncatedSeries::one(order);
    for &a in weights {
        c = c.mul(&TruncatedSeries::linear(q(a.into()), order));
    }
    for &d in degrees {
        let inv = TruncatedSeries::linear(q(d.into()), order)
            .reciprocal()
            .expect("constant term 1");
        c = c.mul(&inv);
    }
    Ok(c)
}

/// <x^power, [Z]> = prod d_i / prod a_j for the orbifold hyperplane class x.
pub fn degree_pairing(weights: &[u32], degrees: &[u32], power: usize) -> Result<Q, CharError> {
    let dim = ci_dimension(weights, degrees)?;
    if power != dim {
        return Err(CharError::DimensionMismatch {
            expected: dim,
            found: power,
        });
    }
    let num: Q = degrees.iter().fold(Q::one(), |p, &d| p * q(d.into()));
    let den: Q = weights.iter().fold(Q::one(), |p, &a| p * q(a.into()));
    Ok(num / den)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiResult {
    pub top_chern: Q,
    pub pairing: Q,
    pub orbifold: Q,
    pub topological: i64,
    pub corrections: Vec<(u32, Q)>,
}

/// chi_orb from the top Chern coefficient and chi_top = chi_orb +
/// sum (1 - 1/m) over isolated cyclic quotient points of order m.
pub fn euler_characteristics(
    weights: &[u32],
    degrees: &[u32],
    point_orders: &[u32],
) -> Result<ChiResult, CharError> {
    let dim = ci_dimension(weights, degrees)?;
    let c = total_chern(weights, degrees)?;
    let top_chern = c.top();
    let pairing = degree_pairing(weights, degrees, dim)?;
    let orbifold = &top_chern * &pairing;
    let mut topological = orbifold.clone();
    let mut corrections = Vec::new();
    for &m in point_orders {
        if m == 0 {
            return Err(CharError::Invalid("singular point of order 0".into()));
        }
        let corr = q(1) - Q::new(1.into(), m.into());
        topological += &corr;
        corrections.push((m, corr));
    }
    if !topological.is_integer() {
        return Err(CharError::NotIntegral(format!(
            "topological Euler characteristic {topological} from orbifold value {orbifold} and point orders {point_orders:?}"
        )));
    }
    Ok(ChiResult {
        top_chern,
        pairing,
        orbifold,
        topological: topological.to_integer().to_i64().expect("fits in i64"),
        corrections,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoetherResult {
    pub chi_top: i64,
    pub k_squared: i64,
    pub chi_o: i64,
    pub p_g: i64,
}

/// Noether's formula on a smooth regular surface complete intersection:
/// K^2 = (sum d - sum a)^2 <x^2, [S]>, chi(O) = (K^2 + chi)/12,
/// p_g = chi(O) - 1.
pub fn noether_pg(weights: &[u32], degrees: &[u32]) -> Result<NoetherResult, CharError> {
    let dim = ci_dimension(weights, degrees)?;
    if dim != 2 {
        return Err(CharError::DimensionMismatch {
            expected: 2,
            found: dim,
        });
    }
    let chi = euler_characteristics(weights, degrees, &[])?.topological;
    let canonical: i64 = degrees.iter().map(|&d| i64::from(d)).sum::<i64>()
        - weights.iter().map(|&a| i64::from(a)).sum::<i64>();
    let k2 = q(canonical * canonical) * degree_pairing(weights, degrees, 2)?;
    if !k2.is_integer() {
        return Err(CharError::NotIntegral(format!("K^2 = {k2}")));
    }
    let k_squared = k2.to_integer().to_i64().expect("fits in i64");
    let numerator = k_squared + chi;
    if numerator % 12 != 0 {
        return Err(CharError::NotIntegral(format!(
            "chi(O) = ({k_squared} + {chi})/12"
        )));
    }
    let chi_o = numerator / 12;
    Ok(NoetherResult {
        chi_top: chi,
        k_squared,
        chi_o,
        p_g: chi_o - 1,
    })
}
