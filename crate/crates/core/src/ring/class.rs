use std::collections::BTreeMap;
use std::fmt;

use super::{AtomMonomial, LPolynomial, RingError};

/// An element of `Z[L][atoms]`: a finite sum of atom monomials with
/// [`LPolynomial`] coefficients.
///
/// Zero coefficients are never stored, so two classes are equal exactly when
/// their maps are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MotivicClass {
    terms: BTreeMap<AtomMonomial, LPolynomial>,
}

impl MotivicClass {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The class of a point.
    pub fn one() -> Self {
        LPolynomial::one().into()
    }

    pub fn lefschetz() -> Self {
        LPolynomial::lefschetz().into()
    }

    pub fn atom(name: impl Into<String>) -> Self {
        Self::term(AtomMonomial::atom(name), LPolynomial::one())
    }

    pub fn term(monomial: AtomMonomial, coeff: LPolynomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        Self { terms }
    }

    pub fn from_terms<I>(terms: I) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = (AtomMonomial, LPolynomial)>,
    {
        terms
            .into_iter()
            .try_fold(Self::zero(), |acc, (m, p)| acc.checked_add(&Self::term(m, p)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_atom_free(&self) -> bool {
        self.terms.keys().all(AtomMonomial::is_unit)
    }

    /// The `L`-polynomial of an atom-free class.
    pub fn as_lpoly(&self) -> Option<LPolynomial> {
        if !self.is_atom_free() {
            return None;
        }
        Some(
            self.terms
                .get(&AtomMonomial::unit())
                .cloned()
                .unwrap_or_default(),
        )
    }

    /// Terms in canonical (lexicographic monomial) order.
    pub fn terms(&self) -> impl Iterator<Item = (&AtomMonomial, &LPolynomial)> {
        self.terms.iter()
    }

    pub fn coeff(&self, monomial: &AtomMonomial) -> LPolynomial {
        self.terms.get(monomial).cloned().unwrap_or_default()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RingError> {
        let mut terms = self.terms.clone();
        for (m, p) in &other.terms {
            let sum = match terms.get(m) {
                Some(existing) => existing.checked_add(p)?,
                None => p.clone(),
            };
            if sum.is_zero() {
                terms.remove(m);
            } else {
                terms.insert(m.clone(), sum);
            }
        }
        Ok(Self { terms })
    }

    pub fn checked_neg(&self) -> Result<Self, RingError> {
        let terms = self
            .terms
            .iter()
            .map(|(m, p)| Ok((m.clone(), p.checked_neg()?)))
            .collect::<Result<_, RingError>>()?;
        Ok(Self { terms })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, RingError> {
        let mut acc = Self::zero();
        for (ma, pa) in &self.terms {
            for (mb, pb) in &other.terms {
                let term = Self::term(ma.checked_mul(mb)?, pa.checked_mul(pb)?);
                acc = acc.checked_add(&term)?;
            }
        }
        Ok(acc)
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self, RingError> {
        self.checked_mul(&LPolynomial::constant(k).into())
    }

    /// Value at `L = q` of an atom-free class.
    pub fn eval(&self, q: i64) -> Result<i64, RingError> {
        self.as_lpoly().ok_or(RingError::AtomsPresent)?.eval(q)
    }

    /// Image in the quotient ring by `L`: every coefficient keeps only its
    /// constant term.
    pub fn mod_l(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, p)| (m.clone(), p.mod_l()))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        Self { terms }
    }

    /// `Some(m)` with `self = L * m`, or `None` when some coefficient has a
    /// nonzero constant term.
    pub fn div_l(&self) -> Option<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(m, p)| p.div_l().map(|q| (m.clone(), q)))
            .collect::<Option<_>>()?;
        Some(Self { terms })
    }

    /// `L * self`.
    pub fn mul_l(&self) -> Result<Self, RingError> {
        let terms = self
            .terms
            .iter()
            .map(|(m, p)| Ok((m.clone(), p.shift()?)))
            .collect::<Result<_, RingError>>()?;
        Ok(Self { terms })
    }
}

impl From<LPolynomial> for MotivicClass {
    fn from(p: LPolynomial) -> Self {
        Self::term(AtomMonomial::unit(), p)
    }
}

impl fmt::Display for MotivicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, p) in &self.terms {
            let suffix = if m.is_unit() { String::new() } else { m.to_string() };
            p.fmt_terms(f, &suffix, &mut first)?;
        }
        Ok(())
    }
}
