//! L-equivalence, the stable-birational invariant (classes mod `L`), and
//! the `L`-divisibility witnesses that birational varieties must satisfy.
//!
//! Everything here is decided inside `Z[L][atoms]`. Multiplication by `L`
//! is injective in that ring, so `([X] - [Y]) * L^n = 0` holds exactly when
//! `[X] = [Y]`. Torsion of the full Grothendieck ring is invisible to these
//! checks.

use serde::Serialize;

use crate::ring::{LPolynomial, MotivicClass, RingError};

pub const MODEL_NOTE: &str = "decided in Z[L][atoms], where multiplication by L is injective: \
     ([X]-[Y])*L^n = 0 iff [X] = [Y]; L-torsion of the full Grothendieck ring is not represented";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub verdict: bool,
    pub difference: MotivicClass,
    pub note: Option<String>,
}

pub fn l_equivalent(a: &MotivicClass, b: &MotivicClass) -> Result<EquivalenceReport, RingError> {
    let difference = a.checked_sub(b)?;
    Ok(EquivalenceReport {
        verdict: difference.is_zero(),
        difference,
        note: Some(MODEL_NOTE.to_string()),
    })
}

/// The image of `a` in the quotient by `L`. For an atom-free class of a
/// smooth projective connected variety this is an integer, and it is `1`
/// for stably rational ones.
pub fn stable_birational_class(a: &MotivicClass) -> MotivicClass {
    a.mod_l()
}

/// `M` with `a = [P^d] + L * M`, if it exists. Existence is necessary for a
/// smooth `d`-dimensional variety with class `a` to be rational; it is not
/// sufficient.
pub fn rationality_witness(a: &MotivicClass, d: u32) -> Result<Option<MotivicClass>, RingError> {
    Ok(a.checked_sub(&LPolynomial::projective(d).into())?.div_l())
}

/// `M` with `a - b = L * M`, if it exists. Absence rules out `a` and `b`
/// being classes of smooth birationally equivalent varieties.
pub fn birational_difference(a: &MotivicClass, b: &MotivicClass) -> Result<Option<MotivicClass>, RingError> {
    Ok(a.checked_sub(b)?.div_l())
}

/// Writes an atom-free `m` as `sum n_i [P^i]` with `n_i >= 0` and `i <= max_dim`,
/// returning `[n_0, n_1, ...]`. The decomposition is unique when it exists:
/// `n_i = c_i - c_(i+1)` where `c_i` is the coefficient of `L^i`.
pub fn projective_decomposition(m: &MotivicClass, max_dim: u32) -> Option<Vec<u64>> {
    let p = m.as_lpoly()?;
    let Some(top) = p.degree() else {
        return Some(Vec::new());
    };
    if top > max_dim {
        return None;
    }
    (0..=top)
        .map(|i| {
            let n = p.coeff(i).checked_sub(p.coeff(i + 1))?;
            u64::try_from(n).ok()
        })
        .collect()
}

/// Human-readable form of a decomposition, e.g. `8*[P^1] + [P^0]`.
pub fn format_projective_combination(counts: &[u64]) -> String {
    let parts: Vec<String> = counts
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, n)| **n > 0)
        .map(|(i, n)| if *n == 1 { format!("[P^{i}]") } else { format!("{n}*[P^{i}]") })
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Outcome of a divisibility-by-`L` check. `verdict` is true iff a witness
/// exists; `difference` is the class that was divided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub verdict: bool,
    pub difference: MotivicClass,
    pub witness: Option<MotivicClass>,
    pub note: Option<String>,
}

/// Rationality report: the witness (if any) plus a remark when it is a
/// nonnegative combination of `[P^i]` with `i <= d - 2`.
pub fn rationality_report(a: &MotivicClass, d: u32) -> Result<WitnessReport, RingError> {
    let witness = rationality_witness(a, d)?;
    let difference = a.checked_sub(&LPolynomial::projective(d).into())?;
    let note = match &witness {
        None => format!("[X] - [P^{d}] is not divisible by L: not rational in dimension {d}"),
        Some(m) => {
            let shape = d
                .checked_sub(2)
                .and_then(|max| projective_decomposition(m, max))
                .map(|counts| {
                    format!(
                        "; witness = {} is a nonnegative combination of [P^i], i <= {}",
                        format_projective_combination(&counts),
                        d.saturating_sub(2)
                    )
                })
                .unwrap_or_default();
            format!(
                "[X] = [P^{d}] + L*M holds (necessary, not sufficient, for rationality){shape}"
            )
        }
    };
    Ok(WitnessReport {
        verdict: witness.is_some(),
        difference,
        witness,
        note: Some(note),
    })
}

/// Birational-difference report for `a - b`.
pub fn birational_report(a: &MotivicClass, b: &MotivicClass) -> Result<WitnessReport, RingError> {
    let difference = a.checked_sub(b)?;
    let witness = difference.div_l();
    let note = match &witness {
        Some(_) => "[X'] - [X] = L*M holds (necessary for smooth birational equivalence)",
        None => "[X'] - [X] is not divisible by L: the classes cannot belong to smooth birationally equivalent varieties",
    };
    Ok(WitnessReport {
        verdict: witness.is_some(),
        difference,
        witness,
        note: Some(note.to_string()),
    })
}
