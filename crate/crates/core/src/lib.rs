//! Exact-arithmetic toolkit for Spin(7)-structures on R^8 and the topology of
//! asymptotically cylindrical Spin(7)-manifolds obtained from weighted
//! projective orbifolds.
//!
//! The crate is organised bottom-up:
//!
//! * [`exterior`]: exact multilinear algebra over an oriented Euclidean R^n
//!   (wedge, Hodge star, contraction) and the named forms (Cayley form,
//!   G2 3-form, SU(4) pair).
//! * [`spin7`]: type decompositions of form spaces, stabilizer algebras and
//!   the Newton realisation of the projection onto admissible 4-forms.
//! * [`wps`]: weighted projective spaces, well-formedness, quasismoothness of
//!   diagonal members, Z4 singular points and antiholomorphic involutions.
//! * [`char_numbers`]: Chern series, Euler characteristics, Noether's formula
//!   and Jacobian-ring Hodge numbers.
//! * [`invariants`]: Betti numbers, signature and moduli dimension of the
//!   resulting 8-manifold.
//! * [`config`], [`analysis`], [`report`], [`verify`]: configuration files,
//!   the end-to-end pipeline and report rendering used by the CLI and the
//!   browser demo.

// Matrix code indexes several arrays with the same loop variable.
#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod char_numbers;
pub mod config;
pub mod exterior;
pub mod invariants;
pub mod linalg;
pub mod report;
pub mod spin7;
pub mod verify;
pub mod wps;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Exact rational scalar used throughout the exact modules.
pub type Q = BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}
