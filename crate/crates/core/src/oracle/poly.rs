use std::collections::BTreeMap;
use std::fmt;

use crate::ring::RingError;

use super::PrimeField;

/// A sparse multivariate polynomial with integer coefficients over a fixed
/// number of variables. Keys are exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        let mut out = Self::zero(nvars);
        if c != 0 {
            out.terms.insert(vec![0; nvars], c);
        }
        out
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        let mut out = Self::zero(nvars);
        out.terms.insert(exps, 1);
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], i64)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), *c))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RingError> {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let slot = terms.entry(e.clone()).or_insert(0);
            *slot = slot.checked_add(*c).ok_or(RingError::Overflow)?;
        }
        terms.retain(|_, c| *c != 0);
        Ok(Self { nvars: self.nvars, terms })
    }

    pub fn checked_neg(&self) -> Result<Self, RingError> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| c.checked_neg().map(|c| (e.clone(), c)).ok_or(RingError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Self { nvars: self.nvars, terms })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, RingError> {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut terms: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea
                    .iter()
                    .zip(eb)
                    .map(|(a, b)| a.checked_add(*b).ok_or(RingError::Overflow))
                    .collect::<Result<Vec<_>, _>>()?;
                let prod = ca.checked_mul(*cb).ok_or(RingError::Overflow)?;
                let slot = terms.entry(e).or_insert(0);
                *slot = slot.checked_add(prod).ok_or(RingError::Overflow)?;
            }
        }
        terms.retain(|_, c| *c != 0);
        Ok(Self { nvars: self.nvars, terms })
    }

    pub fn checked_pow(&self, exp: u32) -> Result<Self, RingError> {
        let mut acc = Self::constant(self.nvars, 1);
        for _ in 0..exp {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Total degree of every monomial restricted to `vars`, if they agree.
    /// The zero polynomial is homogeneous of every degree (`Some(None)`).
    pub fn block_degree(&self, vars: std::ops::Range<usize>) -> Option<Option<u32>> {
        let mut degree = None;
        for e in self.terms.keys() {
            let d: u32 = e[vars.clone()].iter().sum();
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => return None,
                Some(_) => {}
            }
        }
        Some(degree)
    }

    /// Reduces coefficients mod `p` once, for repeated evaluation.
    pub fn reduced(&self, field: PrimeField) -> ReducedPoly {
        ReducedPoly {
            field,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), field.reduce(*c)))
                .filter(|(_, c)| *c != 0)
                .collect(),
        }
    }

    /// Text form using `names` for the variables, e.g. `x1*y1 - x2*y0`.
    pub fn to_string_with(&self, names: &[String]) -> String {
        let mut out = String::new();
        self.write_with(&mut out, names).expect("writing to a String cannot fail");
        out
    }

    fn write_with(&self, f: &mut impl fmt::Write, names: &[String]) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mut factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, x)| **x > 0)
                .map(|(i, x)| if *x == 1 { names[i].clone() } else { format!("{}^{x}", names[i]) })
                .collect();
            let mag = c.unsigned_abs();
            if factors.is_empty() || mag != 1 {
                factors.insert(0, mag.to_string());
            }
            match (idx, *c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// An [`MPoly`] with coefficients reduced into `F_p`.
#[derive(Clone, Debug)]
pub struct ReducedPoly {
    field: PrimeField,
    terms: Vec<(Vec<u32>, u32)>,
}

impl ReducedPoly {
    pub fn eval(&self, point: &[u32]) -> u32 {
        let f = self.field;
        self.terms.iter().fold(0, |acc, (e, c)| {
            let mono = e
                .iter()
                .zip(point)
                .fold(*c, |m, (x, v)| if *x == 0 { m } else { f.mul(m, f.pow(*v, *x)) });
            f.add(acc, mono)
        })
    }

    pub fn vanishes_at(&self, point: &[u32]) -> bool {
        self.eval(point) == 0
    }
}
