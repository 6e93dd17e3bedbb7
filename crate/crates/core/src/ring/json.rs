//! JSON form of classes:
//! `{"terms": [{"atoms": [{"name", "exp"}], "coeffs": [{"deg", "c"}]}]}`.
//! Terms follow canonical monomial order; coefficients are listed in
//! descending degree, matching the text form.

use serde::{Deserialize, Serialize};

use super::{AtomMonomial, LPolynomial, MotivicClass, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomJson {
    pub name: String,
    pub exp: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub deg: u32,
    pub c: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub atoms: Vec<AtomJson>,
    pub coeffs: Vec<CoeffJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub terms: Vec<TermJson>,
}

impl From<&MotivicClass> for ClassJson {
    fn from(class: &MotivicClass) -> Self {
        let terms = class
            .terms()
            .map(|(m, p)| TermJson {
                atoms: m
                    .factors()
                    .iter()
                    .map(|(name, exp)| AtomJson {
                        name: name.clone(),
                        exp: *exp,
                    })
                    .collect(),
                coeffs: p.terms().rev().map(|(deg, c)| CoeffJson { deg, c }).collect(),
            })
            .collect();
        Self { terms }
    }
}

impl TryFrom<ClassJson> for MotivicClass {
    type Error = RingError;

    fn try_from(json: ClassJson) -> Result<Self, Self::Error> {
        MotivicClass::from_terms(
            json.terms
                .into_iter()
                .map(|t| {
                    let m = AtomMonomial::from_factors(t.atoms.into_iter().map(|a| (a.name, a.exp)))?;
                    let p = LPolynomial::from_terms(t.coeffs.into_iter().map(|c| (c.deg, c.c)))?;
                    Ok((m, p))
                })
                .collect::<Result<Vec<_>, RingError>>()?,
        )
    }
}

impl Serialize for MotivicClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ClassJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MotivicClass {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = ClassJson::deserialize(deserializer)?;
        MotivicClass::try_from(json).map_err(serde::de::Error::custom)
    }
}

impl Serialize for LPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MotivicClass::from(self.clone()).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        MotivicClass::deserialize(deserializer)?
            .as_lpoly()
            .ok_or_else(|| serde::de::Error::custom("polynomial JSON contains atoms"))
    }
}
