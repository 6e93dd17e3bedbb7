use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{CountSample, OracleError};
use crate::ring::LPolynomial;

/// Exact Lagrange interpolation through `samples`, over the rationals.
///
/// Succeeds only if the interpolant has integer coefficients. With `n`
/// samples the result has degree below `n`, so callers must supply at least
/// `degree + 1` of them.
pub fn fit_polynomial(samples: &[CountSample]) -> Result<LPolynomial, OracleError> {
    if samples.len() < 2 {
        return Err(OracleError::TooFewSamples(samples.len()));
    }
    let mut seen = HashSet::new();
    for s in samples {
        if !seen.insert(s.q) {
            return Err(OracleError::DuplicateSample(s.q));
        }
    }

    let n = samples.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for (i, si) in samples.iter().enumerate() {
        // basis_i(x) = prod_{j != i} (x - q_j) / (q_i - q_j), built ascending
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, sj) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            let qj = BigRational::from_integer(BigInt::from(sj.q));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &qj;
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(si.q - sj.q));
        }
        let scale = BigRational::from_integer(BigInt::from(si.count)) / denom;
        for (k, c) in basis.into_iter().enumerate() {
            coeffs[k] += c * &scale;
        }
    }

    let mut dense = Vec::with_capacity(n);
    for (deg, c) in coeffs.into_iter().enumerate() {
        if !c.is_integer() {
            return Err(OracleError::NonIntegralFit {
                degree: deg as u32,
                value: c.to_string(),
            });
        }
        let c = c.to_integer().to_i64().ok_or(OracleError::Overflow)?;
        dense.push(c);
    }
    let poly = LPolynomial::from_dense(&dense);

    for s in samples {
        let v = poly.eval(s.q).map_err(|_| OracleError::Overflow)?;
        if u64::try_from(v).ok() != Some(s.count) {
            return Err(OracleError::NonIntegralFit {
                degree: 0,
                value: format!("fit does not reproduce count {} at q = {}", s.count, s.q),
            });
        }
    }
    Ok(poly)
}
