//! Characteristic numbers of quasismooth weighted complete intersections:
//! Chern series by adjunction, Euler characteristics, Noether's formula and
//! Jacobian-ring Hodge numbers of diagonal hypersurfaces.

mod chern;
mod hilbert;
mod hodge;
mod series;

pub use chern::{ci_dimension, degree_pairing, euler_characteristics, noether_pg, total_chern, ChiResult, NoetherResult};
pub use hilbert::GradedMonomialRing;
pub use hodge::{cy3_hodge_from_chi, steenbrink_hodge, steenbrink_hodge_of, HypersurfaceHodge};
pub use series::TruncatedSeries;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("not integral: {0}")]
    NotIntegral(String),
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("expected power {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported: non-diagonal input {0}")]
    NonDiagonal(String),
    #[error("{0}")]
    Invalid(String),
}
