//! The quotient `A^0_{c_G} / K_G(A^{-1})`: graded pieces, a monomial basis
//! with reduction certificates, Hodge numbers and the charge witness.

mod document;
mod piece;
mod presentation;
mod solver;
mod witness;

pub use document::{
    PivotRecord, PresentationDocument, TermRecord, WeightRecord, PRESENTATION_FORMAT, PRESENTATION_VERSION,
};
pub use piece::{enumerate_piece, piece_size_bound, GradedPiece};
pub use presentation::{build_presentation, QuotientPresentation, ReductionResult, DEFAULT_SLACK};
pub use solver::{WeightSolution, WeightSolver, MAX_PIECE_SIZE};
pub use witness::{charge_witness_check, ChargeWitness};
