//! Exact-arithmetic toolkit for graph algebras and their homotopes.
//!
//! The library works over a tower of exact scalars (arbitrary-precision
//! rationals, cyclotomic numbers, multivariate Laurent polynomials) and
//! implements:
//!
//! * the algebra `B(Γ)` of a simply laced graph in its contracted-path
//!   basis, together with the Poincaré groupoid `KΓ` and the homomorphisms
//!   `ψ₁`, `ψ₂` induced by the generalized Laplace operator `Δ`;
//! * generic homotope constructions for finite-dimensional algebras and
//!   rectangular operators, well-temperedness and quiver-class invariants;
//! * exact linear algebra over Laurent rings: determinants, coranks via
//!   minor gcds, Smith normal form and cokernel comparison;
//! * systems of rank-1 projectors subordinated to a graph, their trace
//!   invariants, minimalization and construction from characters;
//! * generalized/complex Hadamard matrices and mutually unbiased bases;
//! * the disc operator and the sphere-with-double-point comparison.

pub mod balgebra;
pub mod configurations;
pub mod error;
pub mod fieldmat;
pub mod graph;
pub mod groupoid;
pub mod hadamard;
pub mod homotope;
pub mod laurent_linalg;
pub mod perverse;
pub mod scalars;

pub use error::Error;
pub use scalars::{Cyclotomic, LaurentPoly, Monomial, Rational, Scalar};

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Outcome of a filtered (length-truncated) check whose mathematical
/// precondition may be violated without invalidating the computation.
///
/// The check is still carried out; `warning` records the violated
/// hypothesis so callers can qualify the verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckedVerdict {
    pub holds: bool,
    pub warning: Option<String>,
}

impl CheckedVerdict {
    pub fn clean(holds: bool) -> Self {
        CheckedVerdict { holds, warning: None }
    }

    pub fn with_warning(holds: bool, warning: impl Into<String>) -> Self {
        CheckedVerdict { holds, warning: Some(warning.into()) }
    }
}
