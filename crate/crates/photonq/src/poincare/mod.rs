//! Poincare generators on photon wavefunctions, the covariant derivative and
//! light-cone curvature, and the position-momentum uncertainty product.

mod derivative;
mod generators;
mod uncertainty;

pub use derivative::{
    connection_alpha, covariant_component, covariant_derivative, flagged_weight_share,
    ConnectionPolicy, DerivativeScheme, VectorAction,
};
pub use generators::{
    apply_angular_momentum, apply_boost, apply_energy, apply_momentum, axis_weight_share,
    commutator_rp_expectations, commutator_rr_xy_expectation, curvature_action,
    expectation, expected_curvature, hermiticity_defect, position_operator, raw_partials,
    AngularMomentumParts,
};
pub use uncertainty::{uncertainty_bound, uncertainty_product, UncertaintyReport};
