//! Exact computer algebra for the twisted de Rham model of the primitive
//! middle cohomology of smooth projective complete intersections.
//!
//! The crate is organized bottom-up:
//!
//! * [`superalgebra`]: rationals, graded variables and super-polynomials.
//! * [`operators`]: the differentials `Delta`, `Q_G`, `K_G`, descendant brackets,
//!   descendant maps of linear functionals and Bell polynomials.
//! * [`cohomology`]: graded pieces, the quotient basis with reduction
//!   certificates, Hodge numbers and the charge witness.
//! * [`deformation`]: Maurer-Cartan data, the deformed basis, the power series
//!   `T^rho(t)`, the `D` matrix ladder and period-matrix transport.
//! * [`polyparse`]: text syntax for elements.
//! * [`verify`]: seeded invariant suites shared by the tests and the CLI.

pub mod cohomology;
pub mod deformation;
mod error;
pub mod linalg;
pub mod operators;
pub mod polyparse;
pub mod superalgebra;
pub mod verify;

pub use error::Error;
pub use superalgebra::{Scalar, SuperElement, SuperMonomial, VariableContext};
