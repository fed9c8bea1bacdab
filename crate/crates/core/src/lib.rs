//! Orbit-type stratifications, obstruction-bundle partitions and exact
//! equivariant localization for circle and finite cyclic group actions.
//!
//! The combinatorial layers ([`group_lattice`], [`representations`],
//! [`stratification`], [`moduli_partition`], [`covariants`]) work with integer
//! data. The cohomological layers ([`equivariant_classes`], [`localization`])
//! are generic over a [`Scalar`] coefficient type; the aliases below fix the
//! exact rational instantiation used throughout the workbench.

pub mod covariants;
pub mod equivariant_classes;
pub mod group_lattice;
pub mod localization;
pub mod moduli_partition;
pub mod representations;
pub mod scalar;
pub mod stratification;

pub use group_lattice::{AmbientGroup, Subgroup};
pub use representations::Representation;
pub use scalar::Scalar;
pub use stratification::{StratifiedSpace, Stratum};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;

pub type Ring = equivariant_classes::FiniteBasisRing<Rational>;
pub type RingElement = equivariant_classes::RingElement<Rational>;
pub type Class = equivariant_classes::EquivariantClass<Rational>;
pub type Laurent = equivariant_classes::LaurentPoly<Rational>;
pub type LineSummand = equivariant_classes::LineSummand<Rational>;
pub type FixedComponent = localization::FixedComponent<Rational>;
pub type LocalizationProblem = localization::LocalizationProblem<Rational>;
