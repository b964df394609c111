//! Differentials, descendant brackets and maps, and Bell polynomials.

pub mod bell;
mod descendant;
mod dwork;
pub mod exp_identity;
pub mod partition;

pub use bell::{bell_complete, bell_complete_all, bell_partial, BellRing, IntPoly};
pub use descendant::{phi_n, DescendantMaps, LinearFunctional};
pub(crate) use dwork::check_form;
pub use dwork::{apply_delta, DworkData};
