//! An independent check on the normalizer: count rational points over small
//! prime fields by brute force, interpolate the counting polynomial, and
//! compare with the computed class evaluated at `L = q`.

mod expr;
mod field;
mod fit;
mod poly;
mod problem;

pub use expr::{count_expression, expression_points, pure_dimension, CenterSelection, CountOptions, Pt};
pub use field::{PrimeField, MAX_PRIME};
pub use fit::fit_polynomial;
pub use poly::{MPoly, ReducedPoly};
pub use problem::{
    count_points, enumerate_affine, enumerate_projective, one_point_blowup_p3, Ambient, Block, CountSample,
    CountingProblem, ProblemFile, BLOCK_LETTERS,
};

use serde::Serialize;
use thiserror::Error;

use crate::normalize::{normalize, NormalizeError};
use crate::ring::{LPolynomial, MotivicClass, RingError};
use crate::variety::VarietyExpr;

/// Cap on the number of candidate tuples or points a single enumeration may
/// touch. Exceeding it is an error, never a truncated count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(100_000_000);
}

impl Default for Budget {
    fn default() -> Self {
        Self::DEFAULT
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} is not a supported prime (need a prime in 2..=97)")]
    InvalidPrime(i64),
    #[error("enumeration needs {} candidates, budget is {budget}", needed.map_or("more than 2^64".to_string(), |n| n.to_string()))]
    BudgetExceeded { needed: Option<u64>, budget: u64 },
    #[error("equation {equation} is not homogeneous in projective block {block}")]
    NonHomogeneous { equation: usize, block: usize },
    #[error("invalid counting problem: {0}")]
    InvalidProblem(String),
    #[error("not countable at {path}: {reason}")]
    NotCountable { path: String, reason: String },
    #[error("at {path}: {needed} rational points requested but only {available} exist over F_{q}")]
    TooFewRationalPoints {
        path: String,
        needed: u64,
        available: u64,
        q: i64,
    },
    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("two samples share q = {0}")]
    DuplicateSample(i64),
    #[error("interpolation is not integral (coefficient of L^{degree} is {value})")]
    NonIntegralFit { degree: u32, value: String },
    #[error("arithmetic overflow")]
    Overflow,
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Result of checking one expression against the oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub samples: Vec<CountSample>,
    /// Interpolated counting polynomial, when the fit succeeded.
    pub fitted: Option<LPolynomial>,
    pub fit_error: Option<String>,
    pub normalized: MotivicClass,
    /// Whether every sample equals the normalized class at `L = q`.
    pub counts_match: bool,
    /// Whether the fitted polynomial equals the normalized class.
    pub fit_matches: bool,
}

impl Verification {
    pub fn is_match(&self) -> bool {
        self.counts_match && self.fit_matches
    }
}

/// Counts `e` over every field in `fields`, interpolates, and compares both
/// the raw counts and the fit with `normalize(e)`.
pub fn verify(e: &VarietyExpr, fields: &[PrimeField], opts: CountOptions) -> Result<Verification, OracleError> {
    let normalized = normalize(e)?;
    if !normalized.is_atom_free() {
        return Err(OracleError::NotCountable {
            path: e.kind().to_string(),
            reason: "class contains atoms".into(),
        });
    }
    let samples = fields
        .iter()
        .map(|f| count_expression(e, *f, opts))
        .collect::<Result<Vec<_>, _>>()?;
    let mut counts_match = true;
    for s in &samples {
        let expected = normalized.eval(s.q)?;
        counts_match &= u64::try_from(expected).ok() == Some(s.count);
    }
    let (fitted, fit_error) = match fit_polynomial(&samples) {
        Ok(p) => (Some(p), None),
        Err(err) => (None, Some(err.to_string())),
    };
    let fit_matches = fitted
        .as_ref()
        .is_some_and(|p| MotivicClass::from(p.clone()) == normalized);
    Ok(Verification {
        samples,
        fitted,
        fit_error,
        normalized,
        counts_match,
        fit_matches,
    })
}
