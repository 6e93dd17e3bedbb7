//! Point counting for construction expressions by explicit enumeration.
//!
//! Each countable expression is realized as a concrete finite set of
//! `F_q`-points ([`Pt`] values). Complements and blow-ups need the closed
//! part as an actual subset of the ambient points, so `embed` realizes
//! a center or closed subvariety through one of a fixed set of closed
//! immersions: linear subspaces `A^m < A^n` and `P^m < P^n` (trailing
//! coordinates zero), finite sets of rational points, products of
//! immersions, and inclusion into a disjoint component, an open complement,
//! or the untouched part of a blow-up. Anything else is not countable.

use std::collections::HashSet;

use super::{enumerate_affine, enumerate_projective, Budget, CountSample, OracleError, PrimeField};
use crate::variety::VarietyExpr;

/// A rational point of a constructed variety.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pt {
    /// The point of `pt`.
    Unit,
    /// Affine coordinates, or a normalized projective representative.
    Coords(Vec<u32>),
    /// A point of a product.
    Pair(Box<Pt>, Box<Pt>),
    /// A point in component `i` of a disjoint union, scale, or blow-up
    /// (`0` = outside the center, `1` = on the exceptional divisor).
    Tag(u32, Box<Pt>),
}

/// Which rational points a finite point set (`pt`, `k*pt`) occupies when it
/// is embedded as a closed subvariety.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CenterSelection {
    /// The first `k` points in lexicographic order.
    #[default]
    First,
    /// The last `k` points in lexicographic order.
    Last,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CountOptions {
    pub budget: Budget,
    pub centers: CenterSelection,
}

pub fn count_expression(e: &VarietyExpr, field: PrimeField, opts: CountOptions) -> Result<CountSample, OracleError> {
    let pts = Enumerator { field, opts }.points(e, e.kind())?;
    Ok(CountSample {
        q: field.q(),
        count: pts.len() as u64,
    })
}

/// The enumerated `F_q`-points of `e`, sorted.
pub fn expression_points(e: &VarietyExpr, field: PrimeField, opts: CountOptions) -> Result<Vec<Pt>, OracleError> {
    let mut pts = Enumerator { field, opts }.points(e, e.kind())?;
    pts.sort();
    Ok(pts)
}

/// Dimension of an equidimensional countable expression, `None` when it is
/// empty, mixed, or unknown.
pub fn pure_dimension(e: &VarietyExpr) -> Option<u32> {
    match e {
        VarietyExpr::Empty => None,
        VarietyExpr::Point => Some(0),
        VarietyExpr::Affine(n) | VarietyExpr::Projective(n) => Some(*n),
        VarietyExpr::Product(a, b) => Some(pure_dimension(a)? + pure_dimension(b)?),
        VarietyExpr::Disjoint(parts) => {
            let first = pure_dimension(parts.first()?)?;
            parts
                .iter()
                .all(|p| pure_dimension(p) == Some(first))
                .then_some(first)
        }
        VarietyExpr::Scale(_, inner) => pure_dimension(inner),
        VarietyExpr::Complement { total, closed } => {
            let d = pure_dimension(total)?;
            match closed.as_ref() {
                VarietyExpr::Empty => Some(d),
                z => (pure_dimension(z)? < d).then_some(d),
            }
        }
        VarietyExpr::BlowUp { ambient, .. } => pure_dimension(ambient),
        VarietyExpr::Fibration { base, fiber } => Some(pure_dimension(base)? + pure_dimension(fiber)?),
        VarietyExpr::Atom { dim, .. } => *dim,
    }
}

struct Enumerator {
    field: PrimeField,
    opts: CountOptions,
}

impl Enumerator {
    fn check_size(&self, n: Option<u64>) -> Result<(), OracleError> {
        match n {
            Some(n) if n <= self.opts.budget.0 => Ok(()),
            _ => Err(OracleError::BudgetExceeded {
                needed: n,
                budget: self.opts.budget.0,
            }),
        }
    }

    fn points(&self, e: &VarietyExpr, path: &str) -> Result<Vec<Pt>, OracleError> {
        let sub = |suffix: &str| format!("{path}/{suffix}");
        let budget = self.opts.budget;
        match e {
            VarietyExpr::Empty => Ok(Vec::new()),
            VarietyExpr::Point => Ok(vec![Pt::Unit]),
            VarietyExpr::Affine(n) => Ok(enumerate_affine(*n, self.field, budget)?
                .into_iter()
                .map(Pt::Coords)
                .collect()),
            VarietyExpr::Projective(n) => Ok(enumerate_projective(*n, self.field, budget)?
                .into_iter()
                .map(Pt::Coords)
                .collect()),
            VarietyExpr::Product(a, b) => {
                let a = self.points(a, &sub("left"))?;
                let b = self.points(b, &sub("right"))?;
                self.check_size((a.len() as u64).checked_mul(b.len() as u64))?;
                Ok(product(&a, &b))
            }
            VarietyExpr::Disjoint(parts) => {
                let mut out = Vec::new();
                for (i, part) in parts.iter().enumerate() {
                    let pts = self.points(part, &sub(&i.to_string()))?;
                    out.extend(tag(i as u32, pts));
                    self.check_size(Some(out.len() as u64))?;
                }
                Ok(out)
            }
            VarietyExpr::Scale(k, inner) => {
                let pts = self.points(inner, &sub("inner"))?;
                self.check_size((pts.len() as u64).checked_mul(u64::from(*k)))?;
                Ok((0..*k).flat_map(|i| tag(i, pts.clone())).collect())
            }
            VarietyExpr::Complement { total, closed } => {
                let x = self.points(total, &sub("total"))?;
                let image = self.closed_image(closed, total, path)?;
                Ok(x.into_iter().filter(|p| !image.contains(p)).collect())
            }
            VarietyExpr::BlowUp { ambient, center, codim } => {
                if *codim == 0 {
                    return Err(OracleError::NotCountable {
                        path: path.to_string(),
                        reason: "codim must be >= 1".into(),
                    });
                }
                let dim_y = pure_dimension(ambient);
                let dim_z = pure_dimension(center);
                if let (Some(dy), Some(dz)) = (dim_y, dim_z) {
                    if dy.checked_sub(dz) != Some(*codim) {
                        return Err(OracleError::NotCountable {
                            path: path.to_string(),
                            reason: format!(
                                "codim {codim} does not match dim {dy} ambient and dim {dz} center"
                            ),
                        });
                    }
                } else if !matches!(center.as_ref(), VarietyExpr::Empty) {
                    return Err(OracleError::NotCountable {
                        path: path.to_string(),
                        reason: "blow-up needs equidimensional ambient and center".into(),
                    });
                }
                let y = self.points(ambient, &sub("ambient"))?;
                let image = self.closed_image(center, ambient, path)?;
                let fiber = enumerate_projective(codim - 1, self.field, budget)?;
                self.check_size(
                    (image.len() as u64)
                        .checked_mul(fiber.len() as u64)
                        .and_then(|n| n.checked_add(y.len() as u64)),
                )?;
                let mut centers: Vec<&Pt> = image.iter().collect();
                centers.sort();
                let mut out: Vec<Pt> = y
                    .into_iter()
                    .filter(|p| !image.contains(p))
                    .map(|p| Pt::Tag(0, Box::new(p)))
                    .collect();
                for c in centers {
                    for f in &fiber {
                        out.push(Pt::Tag(
                            1,
                            Box::new(Pt::Pair(Box::new(c.clone()), Box::new(Pt::Coords(f.clone())))),
                        ));
                    }
                }
                Ok(out)
            }
            VarietyExpr::Fibration { .. } => Err(OracleError::NotCountable {
                path: path.to_string(),
                reason: "an abstract fibration has no concrete points".into(),
            }),
            VarietyExpr::Atom { name, .. } => Err(OracleError::NotCountable {
                path: path.to_string(),
                reason: format!("atom \"{name}\" has no concrete points"),
            }),
        }
    }

    /// Image of `closed` inside `total`, as a set of `total`'s points.
    fn closed_image(&self, closed: &VarietyExpr, total: &VarietyExpr, path: &str) -> Result<HashSet<Pt>, OracleError> {
        let Some(img) = self.embed(closed, total, path)? else {
            return Err(OracleError::NotCountable {
                path: path.to_string(),
                reason: format!(
                    "no closed immersion of {} into {} is known",
                    closed.kind(),
                    total.kind()
                ),
            });
        };
        let set: HashSet<Pt> = img.iter().cloned().collect();
        if set.len() != img.len() {
            return Err(OracleError::NotCountable {
                path: path.to_string(),
                reason: "closed part does not embed injectively".into(),
            });
        }
        Ok(set)
    }

    /// Images in `x` of the points of `z` (in `z`'s enumeration order)
    /// under a structural closed immersion, or `None` if none applies.
    fn embed(&self, z: &VarietyExpr, x: &VarietyExpr, path: &str) -> Result<Option<Vec<Pt>>, OracleError> {
        use VarietyExpr as V;
        if z == x {
            return self.points(x, path).map(Some);
        }
        if matches!(z, V::Empty) {
            return Ok(Some(Vec::new()));
        }
        if let Some(k) = z.point_count() {
            let mut pts = self.points(x, path)?;
            pts.sort();
            let available = pts.len() as u64;
            if k > available {
                return Err(OracleError::TooFewRationalPoints {
                    path: path.to_string(),
                    needed: k,
                    available,
                    q: self.field.q(),
                });
            }
            let k = k as usize;
            let chosen = match self.opts.centers {
                CenterSelection::First => pts[..k].to_vec(),
                CenterSelection::Last => pts[pts.len() - k..].to_vec(),
            };
            return Ok(Some(chosen));
        }
        let budget = self.opts.budget;
        let pad = |v: Vec<u32>, n: u32| {
            let mut v = v;
            v.resize(n as usize, 0);
            Pt::Coords(v)
        };
        Ok(match (z, x) {
            (V::Affine(m), V::Affine(n)) if m <= n => Some(
                enumerate_affine(*m, self.field, budget)?
                    .into_iter()
                    .map(|v| pad(v, *n))
                    .collect(),
            ),
            (V::Projective(m), V::Projective(n)) if m <= n => Some(
                enumerate_projective(*m, self.field, budget)?
                    .into_iter()
                    .map(|v| pad(v, n + 1))
                    .collect(),
            ),
            (V::Product(a, b), V::Product(c, d)) => {
                match (self.embed(a, c, path)?, self.embed(b, d, path)?) {
                    (Some(ia), Some(ib)) => Some(product(&ia, &ib)),
                    _ => None,
                }
            }
            (V::Disjoint(zs), V::Disjoint(xs)) if zs.len() == xs.len() => {
                let mut out = Vec::new();
                for (i, (zi, xi)) in zs.iter().zip(xs).enumerate() {
                    match self.embed(zi, xi, path)? {
                        Some(img) => out.extend(tag(i as u32, img)),
                        None => return Ok(None),
                    }
                }
                Some(out)
            }
            (V::Scale(k, zi), V::Scale(l, xi)) if k <= l => self
                .embed(zi, xi, path)?
                .map(|img| (0..*k).flat_map(|i| tag(i, img.clone())).collect()),
            (_, V::Disjoint(xs)) => {
                for (i, xi) in xs.iter().enumerate() {
                    if let Some(img) = self.embed(z, xi, path)? {
                        return Ok(Some(tag(i as u32, img).collect()));
                    }
                }
                None
            }
            (_, V::Scale(_, xi)) => self.embed(z, xi, path)?.map(|img| tag(0, img).collect()),
            (_, V::Complement { total, closed }) => match self.embed(z, total, path)? {
                Some(img) => {
                    let removed = self.closed_image(closed, total, path)?;
                    (!img.iter().any(|p| removed.contains(p))).then_some(img)
                }
                None => None,
            },
            (_, V::BlowUp { ambient, center, .. }) => match self.embed(z, ambient, path)? {
                Some(img) => {
                    let removed = self.closed_image(center, ambient, path)?;
                    (!img.iter().any(|p| removed.contains(p))).then(|| tag(0, img).collect())
                }
                None => None,
            },
            _ => None,
        })
    }
}

fn product(a: &[Pt], b: &[Pt]) -> Vec<Pt> {
    a.iter()
        .flat_map(|p| b.iter().map(move |r| Pt::Pair(Box::new(p.clone()), Box::new(r.clone()))))
        .collect()
}

fn tag(i: u32, pts: Vec<Pt>) -> impl Iterator<Item = Pt> {
    pts.into_iter().map(move |p| Pt::Tag(i, Box::new(p)))
}
