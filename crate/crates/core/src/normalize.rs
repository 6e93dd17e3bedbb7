//! Rewriting of [`VarietyExpr`] trees into canonical [`MotivicClass`]es.
//!
//! Rules, applied bottom-up:
//!
//! | node                 | class                                   |
//! |----------------------|-----------------------------------------|
//! | `empty`              | `0`                                     |
//! | `pt`                 | `1`                                     |
//! | `A(n)`               | `L^n`                                   |
//! | `P(n)`               | `1 + L + ... + L^n`                     |
//! | `X * Y`, `fib(S; F)` | `[X][Y]`, `[S][F]`                      |
//! | `X + Y`              | `[X] + [Y]`                             |
//! | `X - Z`              | `[X] - [Z]`                             |
//! | `blowup(Y; Z, c)`    | `[Y] - [Z] + [Z][P^(c-1)]`              |
//! | `k*X`                | `k[X]`                                  |
//! | `atom(name)`         | the formal generator `name`             |
//!
//! The blow-up rule takes the exceptional divisor to be a Zariski locally
//! trivial `P^(c-1)`-bundle over the center. The target ring is commutative
//! and every rule is compositional, so the result does not depend on
//! evaluation order.

use thiserror::Error;

use crate::ring::{AtomMonomial, LPolynomial, MotivicClass, RingError};
use crate::variety::VarietyExpr;

/// Which rewrite rule was being applied when normalization failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Empty,
    Point,
    Affine,
    Projective,
    Product,
    Disjoint,
    Complement,
    Fibration,
    BlowUp,
    Scale,
    Atom,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("normalization failed at {path} ({rule:?} rule): {reason}")]
pub struct NormalizeError {
    pub path: String,
    pub rule: Rule,
    pub reason: NormalizeFailure,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeFailure {
    #[error(transparent)]
    Arithmetic(#[from] RingError),
    #[error("malformed node: {0}")]
    Malformed(&'static str),
}

/// Either the canonical class or a diagnostic naming the failing subterm.
pub type NormalizeOutcome = Result<MotivicClass, NormalizeError>;

pub fn normalize(e: &VarietyExpr) -> NormalizeOutcome {
    go(e, e.kind())
}

fn go(e: &VarietyExpr, path: &str) -> NormalizeOutcome {
    let fail = |rule: Rule, reason: NormalizeFailure| NormalizeError {
        path: path.to_string(),
        rule,
        reason,
    };
    let arith = |rule: Rule| move |err: RingError| fail(rule, err.into());
    let sub = |suffix: &str, child: &VarietyExpr| go(child, &format!("{path}/{suffix}"));

    match e {
        VarietyExpr::Empty => Ok(MotivicClass::zero()),
        VarietyExpr::Point => Ok(MotivicClass::one()),
        VarietyExpr::Affine(n) => Ok(LPolynomial::affine(*n).into()),
        VarietyExpr::Projective(n) => Ok(LPolynomial::projective(*n).into()),
        VarietyExpr::Product(a, b) => {
            let a = sub("left", a)?;
            let b = sub("right", b)?;
            a.checked_mul(&b).map_err(arith(Rule::Product))
        }
        VarietyExpr::Disjoint(parts) => {
            if parts.is_empty() {
                return Err(fail(Rule::Disjoint, NormalizeFailure::Malformed("empty disjoint union")));
            }
            let mut acc = MotivicClass::zero();
            for (i, part) in parts.iter().enumerate() {
                let c = sub(&i.to_string(), part)?;
                acc = acc.checked_add(&c).map_err(arith(Rule::Disjoint))?;
            }
            Ok(acc)
        }
        VarietyExpr::Complement { total, closed } => {
            let x = sub("total", total)?;
            let z = sub("closed", closed)?;
            x.checked_sub(&z).map_err(arith(Rule::Complement))
        }
        VarietyExpr::Fibration { base, fiber } => {
            let s = sub("base", base)?;
            let f = sub("fiber", fiber)?;
            s.checked_mul(&f).map_err(arith(Rule::Fibration))
        }
        VarietyExpr::BlowUp { ambient, center, codim } => {
            if *codim == 0 {
                return Err(fail(Rule::BlowUp, NormalizeFailure::Malformed("codim must be >= 1")));
            }
            let y = sub("ambient", ambient)?;
            let z = sub("center", center)?;
            let exceptional = z
                .checked_mul(&LPolynomial::projective(codim - 1).into())
                .map_err(arith(Rule::BlowUp))?;
            y.checked_sub(&z)
                .and_then(|d| d.checked_add(&exceptional))
                .map_err(arith(Rule::BlowUp))
        }
        VarietyExpr::Scale(k, inner) => {
            if *k == 0 {
                return Err(fail(Rule::Scale, NormalizeFailure::Malformed("scale factor must be >= 1")));
            }
            let c = sub("inner", inner)?;
            c.checked_scale(i64::from(*k)).map_err(arith(Rule::Scale))
        }
        VarietyExpr::Atom { name, .. } => {
            if name.is_empty() {
                return Err(fail(Rule::Atom, NormalizeFailure::Malformed("empty atom name")));
            }
            Ok(MotivicClass::term(AtomMonomial::atom(name.clone()), LPolynomial::one()))
        }
    }
}
