//! Spin(7), G2 and SU(4) linear algebra on a single tangent space.

mod projection;
mod splits;
mod stabilizer;

pub use projection::{
    fit_slope, quadratic_probe, DirectionKind, DirectionResult, random_in_ball, FloatForm, ProjectionOptions, ProjectionOutcome,
    SlopeStudy, ThetaProjector,
};
pub use splits::{
    cylinder_two_form_types, four_form_split, operator_matrix, su4_two_form_refinement,
    three_form_split, two_form_split, Block, CylinderTypes, TypeSplit,
};
pub use stabilizer::{
    elementary_action, infinitesimal_action, linear_action, so_basis, stabilizer, StabilizerResult,
};

use thiserror::Error;

use crate::exterior::FormError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Spin7Error {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("form not admissible: {0}")]
    NotAdmissible(String),
    #[error("Newton projection did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("singular Newton step at iteration {0}")]
    SingularStep(usize),
}
