//! The bigraded super-commutative algebra `Q[q_1..q_N][eta_1..eta_N]`.

mod context;
mod element;
mod monomial;
pub mod scalar;

pub use context::{VariableContext, MAX_VARIABLES};
pub use element::{GradedComponent, SuperElement};
pub use monomial::{MonomialRecord, SuperMonomial};
pub use scalar::Scalar;
