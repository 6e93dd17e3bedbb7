//! Exact arithmetic in `Z[L][atoms]`, the polynomial subring of the
//! Grothendieck ring of varieties generated by the Lefschetz class
//! `L = [A^1]` and formal atoms standing for irreducible classes.
//!
//! This ring is an integral domain. The full Grothendieck ring is not (and
//! `L` is a zero divisor there); nothing here can represent that torsion.
//!
//! All coefficients are `i64` and every operation is checked: overflow
//! surfaces as [`RingError::Overflow`] rather than wrapping.

mod class;
mod json;
mod lpoly;
mod monomial;
mod text;

pub use class::MotivicClass;
pub use json::{AtomJson, ClassJson, CoeffJson, TermJson};
pub use lpoly::LPolynomial;
pub use monomial::AtomMonomial;
pub use text::ClassParseError;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("arithmetic overflow in 64-bit coefficients")]
    Overflow,
    #[error("cannot specialize L to {0}: field size must be at least 2")]
    InvalidEvaluationPoint(i64),
    #[error("class contains atoms and has no numeric specialization")]
    AtomsPresent,
}
