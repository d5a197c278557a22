//! Toric Kähler metrics from symplectic potentials.
//!
//! A metric on a toric manifold is described, in action-angle coordinates
//! `(x, y)` over the interior of its moment polytope, by a convex potential
//! `s(x)` with Hessian `S`: the metric is `diag(S, S⁻¹)`. This crate builds
//! such potentials ([`potential`]), solves Calabi's extremal family on the
//! polytopes `P^n_m(a, b)` ([`calabi`]), catalogues the constant curvature
//! surfaces ([`dim2`]), and checks curvature ([`curvature`]) and boundary
//! behaviour ([`validate`]) numerically.

pub mod calabi;
pub mod curvature;
pub mod dim2;
pub mod error;
pub mod polytope;
pub mod potential;
mod quadrature;
pub mod rational;
pub mod sampling;
pub mod schema;
pub mod validate;

pub use calabi::{
    build_potential, classify, scalar_curvature_radial, solve_parameters, Classification, Constraint,
    Param, PolytopeSpec, RadialDomain, RadialProfile,
};
pub use curvature::{cross_validate, scalar_curvature_general, verify_extremal, CurvatureReport};
pub use dim2::{classify_dim2, gauss_curvature_check, potential_dim2, Dim2Case, Dim2Family};
pub use error::{Error, Result};
pub use polytope::{Facet, LinearChange, PolyhedralSet};
pub use potential::{canonical_potential, radial_inverse_hessian, transform_potential, HessianSample, Potential};
pub use rational::Rational;
pub use sampling::Exec;
pub use validate::{q_positivity, validate_potential, ValidationReport};
