use std::collections::BTreeMap;
use std::fmt;

use super::RingError;

/// A polynomial in the Lefschetz class `L` with exact `i64` coefficients.
///
/// Stored sparsely: only nonzero coefficients are kept, so the zero
/// polynomial is the empty map and structural equality is equality of
/// polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LPolynomial {
    coeffs: BTreeMap<u32, i64>,
}

impl LPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, c)
    }

    /// `c * L^deg`.
    pub fn monomial(deg: u32, c: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(deg, c);
        }
        Self { coeffs }
    }

    /// The Lefschetz class itself.
    pub fn lefschetz() -> Self {
        Self::monomial(1, 1)
    }

    /// `[A^n] = L^n`.
    pub fn affine(n: u32) -> Self {
        Self::monomial(n, 1)
    }

    /// `[P^n] = 1 + L + ... + L^n`.
    pub fn projective(n: u32) -> Self {
        Self {
            coeffs: (0..=n).map(|d| (d, 1)).collect(),
        }
    }

    /// Builds a polynomial from `(degree, coefficient)` pairs; repeated
    /// degrees are summed.
    pub fn from_terms<I>(terms: I) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = (u32, i64)>,
    {
        let mut coeffs: BTreeMap<u32, i64> = BTreeMap::new();
        for (deg, c) in terms {
            let slot = coeffs.entry(deg).or_insert(0);
            *slot = slot.checked_add(c).ok_or(RingError::Overflow)?;
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(Self { coeffs })
    }

    /// Builds from a dense ascending coefficient list, `[c0, c1, ...]`.
    pub fn from_dense(coeffs: &[i64]) -> Self {
        Self {
            coeffs: coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(d, c)| (d as u32, *c))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, deg: u32) -> i64 {
        self.coeffs.get(&deg).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> i64 {
        self.coeff(0)
    }

    /// Nonzero terms in ascending degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, i64)> + '_ {
        self.coeffs.iter().map(|(d, c)| (*d, *c))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RingError> {
        let mut coeffs = self.coeffs.clone();
        for (deg, c) in other.terms() {
            let slot = coeffs.entry(deg).or_insert(0);
            *slot = slot.checked_add(c).ok_or(RingError::Overflow)?;
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(Self { coeffs })
    }

    pub fn checked_neg(&self) -> Result<Self, RingError> {
        let coeffs = self
            .terms()
            .map(|(d, c)| c.checked_neg().map(|c| (d, c)).ok_or(RingError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Self { coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, RingError> {
        let mut coeffs: BTreeMap<u32, i64> = BTreeMap::new();
        for (da, ca) in self.terms() {
            for (db, cb) in other.terms() {
                let deg = da.checked_add(db).ok_or(RingError::Overflow)?;
                let prod = ca.checked_mul(cb).ok_or(RingError::Overflow)?;
                let slot = coeffs.entry(deg).or_insert(0);
                *slot = slot.checked_add(prod).ok_or(RingError::Overflow)?;
            }
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(Self { coeffs })
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self, RingError> {
        self.checked_mul(&Self::constant(k))
    }

    /// Value at `L = q` for a field size `q >= 2`.
    pub fn eval(&self, q: i64) -> Result<i64, RingError> {
        if q < 2 {
            return Err(RingError::InvalidEvaluationPoint(q));
        }
        // Horner over the dense range, high degree first.
        let Some(top) = self.degree() else {
            return Ok(0);
        };
        let mut acc: i64 = 0;
        for deg in (0..=top).rev() {
            acc = acc
                .checked_mul(q)
                .and_then(|v| v.checked_add(self.coeff(deg)))
                .ok_or(RingError::Overflow)?;
        }
        Ok(acc)
    }

    /// Image in the quotient by `L`: the constant term.
    pub fn mod_l(&self) -> Self {
        Self::constant(self.constant_term())
    }

    /// `Some(m)` with `self = L * m` when the constant term vanishes.
    pub fn div_l(&self) -> Option<Self> {
        if self.constant_term() != 0 {
            return None;
        }
        Some(Self {
            coeffs: self.terms().map(|(d, c)| (d - 1, c)).collect(),
        })
    }

    /// `L * self`.
    pub fn shift(&self) -> Result<Self, RingError> {
        let coeffs = self
            .terms()
            .map(|(d, c)| d.checked_add(1).map(|d| (d, c)).ok_or(RingError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Self { coeffs })
    }

    /// Writes `c * L^d * <suffix>` terms in descending degree. Used both for
    /// plain polynomials (`suffix` empty) and for class terms carrying atoms.
    pub(crate) fn fmt_terms(
        &self,
        f: &mut fmt::Formatter<'_>,
        suffix: &str,
        first: &mut bool,
    ) -> fmt::Result {
        for (deg, c) in self.terms().rev() {
            let sign_neg = c < 0;
            let mag = c.unsigned_abs();
            if *first {
                if sign_neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if sign_neg { " - " } else { " + " })?;
            }
            *first = false;

            let mut factors: Vec<String> = Vec::new();
            match deg {
                0 => {}
                1 => factors.push("L".to_string()),
                d => factors.push(format!("L^{d}")),
            }
            if !suffix.is_empty() {
                factors.push(suffix.to_string());
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        self.fmt_terms(f, "", &mut first)
    }
}
