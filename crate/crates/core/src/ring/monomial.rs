use std::fmt;

use super::RingError;

/// A product of named atoms with positive exponents, e.g. `C^2*M`.
///
/// Factors are kept sorted by name with no repeats, so the derived ordering
/// is lexicographic and the empty monomial (the unit) sorts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomMonomial {
    factors: Vec<(String, u32)>,
}

impl AtomMonomial {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn atom(name: impl Into<String>) -> Self {
        Self {
            factors: vec![(name.into(), 1)],
        }
    }

    /// Builds a monomial from `(name, exponent)` pairs; zero exponents are
    /// dropped and repeated names multiply.
    pub fn from_factors<I, S>(factors: I) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut out = Self::unit();
        for (name, exp) in factors {
            if exp == 0 {
                continue;
            }
            let single = Self {
                factors: vec![(name.into(), exp)],
            };
            out = out.checked_mul(&single)?;
        }
        Ok(out)
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.factors
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, RingError> {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, ea) = &self.factors[i];
            let (b, eb) = &other.factors[j];
            match a.cmp(b) {
                std::cmp::Ordering::Less => {
                    factors.push((a.clone(), *ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    factors.push((b.clone(), *eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = ea.checked_add(*eb).ok_or(RingError::Overflow)?;
                    factors.push((a.clone(), e));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        Ok(Self { factors })
    }
}

/// Whether `name` can be written bare in class text.
pub(crate) fn is_bare_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    let head_ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_');
    head_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && name != "L"
}

pub(crate) fn write_atom_name(f: &mut impl fmt::Write, name: &str) -> fmt::Result {
    if is_bare_atom_name(name) {
        return f.write_str(name);
    }
    f.write_char('"')?;
    for c in name.chars() {
        match c {
            '"' => f.write_str("\\\"")?,
            '\\' => f.write_str("\\\\")?,
            '\n' => f.write_str("\\n")?,
            c => f.write_char(c)?,
        }
    }
    f.write_char('"')
}

impl fmt::Display for AtomMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        for (idx, (name, exp)) in self.factors.iter().enumerate() {
            if idx > 0 {
                f.write_str("*")?;
            }
            write_atom_name(f, name)?;
            if *exp != 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}
