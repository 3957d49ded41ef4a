//! Steiner presentations: builders for logarithmic, Schwarzenberger and
//! plane-curve pushforward bundles, restriction to linear subspaces,
//! bundle validation and isomorphism testing through hom spaces.

mod build;
mod hom;
mod presentation;
mod restrict;
mod validate;

pub use build::{build_curve_twist, build_logarithmic, build_schwarzenberger};
pub use hom::{hom_space, intertwines, is_isomorphic, HomElement, HomSpace, IsoOutcome};
pub use presentation::{PresentationJson, Provenance, SteinerPresentation, MONOMIAL_ORDER};
pub use restrict::{restrict_to_hyperplane, restrict_to_subspace, substituted_matrices};
pub use validate::{linear_minors, maximal_minors, validate_bundle, ValidationStrategy, ValidityReport};

#[cfg(test)]
mod tests;
