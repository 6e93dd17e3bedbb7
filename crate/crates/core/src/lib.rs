//! Symbolic classes in the Grothendieck ring of varieties.
//!
//! Constructions written as [`VarietyExpr`] trees (projective and affine
//! spaces, products, scissor differences, fibrations, blow-ups) normalize to
//! canonical [`MotivicClass`]es, polynomials in the Lefschetz class `L` with
//! formal atoms. The [`oracle`] module re-derives atom-free classes by
//! counting points over small prime fields.
//!
//! ```
//! use motivic_core::{dsl, normalize};
//!
//! let x = dsl::parse_expr("blowup(P(3); 8*pt, codim=3)").unwrap();
//! assert_eq!(normalize(&x).unwrap().to_string(), "L^3 + 9*L^2 + 9*L + 1");
//! ```

pub mod dsl;
pub mod equivalence;
pub mod normalize;
pub mod oracle;
pub mod ring;
pub mod variety;

pub use equivalence::{
    birational_difference, l_equivalent, rationality_witness, stable_birational_class, EquivalenceReport,
    WitnessReport,
};
pub use normalize::{normalize, NormalizeError, NormalizeOutcome};
pub use ring::{AtomMonomial, LPolynomial, MotivicClass, RingError};
pub use variety::{blowup_p3_points, validate, Diagnostic, PointConfiguration, VarietyExpr};
