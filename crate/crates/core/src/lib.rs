//! Exact computation of p-filtered symplectic cohomology for finite
//! commutative differential graded algebra models.
//!
//! A [`GradedModel`] stands in for the de Rham complex of a closed symplectic
//! manifold: a Chevalley-Eilenberg algebra for nilmanifolds, a cohomology ring
//! for formal spaces, or a tensor product of such. From a model and a filtration
//! level `p` the crate builds the mapping cone of `ω^{p+1} ∧ ·` ([`ConeComplex`]),
//! computes its Betti numbers both directly and through the long exact sequence
//! ([`invariants`]), and checks the operator-level statements about the
//! adjoint coboundary and the skew-adjoint block operator ([`spectral`]).
//!
//! Everything is generic over [`Scalar`]; the aliases below fix the
//! coefficient field to arbitrary-precision rationals.

pub mod catalog;
pub mod cone;
mod error;
pub mod invariants;
pub mod linalg;
pub mod model;
pub mod modelfile;
mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use cone::ConeComplex;
pub use invariants::{CohomologyTable, Semicharacteristics, VerificationReport};
pub use linalg::{Matrix, Quotient, Subspace};
pub use model::{BasisElement, Element, GradedModel, ValidationReport};
pub use spectral::OperatorBundle;

/// Default coefficient field.
pub type Rational = num_rational::BigRational;
pub type RationalMatrix = Matrix<Rational>;
pub type RationalSubspace = Subspace<Rational>;
pub type Model = GradedModel<Rational>;
pub type RationalElement = Element<Rational>;
pub type Cone<'a> = ConeComplex<'a, Rational>;
pub type Bundle<'a, 'b> = OperatorBundle<'a, 'b, Rational>;
