//! Expressions for geometric constructions and their structural checks.
//!
//! The tree records *how* a variety is built (products, scissor
//! differences, blow-ups, ...) and nothing about its equations; the
//! normalizer turns it into a class and the oracle counts its points.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VarietyExpr {
    Empty,
    Point,
    Affine(u32),
    Projective(u32),
    Product(Box<VarietyExpr>, Box<VarietyExpr>),
    /// Disjoint union of one or more parts.
    Disjoint(Vec<VarietyExpr>),
    /// `total \ closed`, the open complement of a closed subvariety.
    Complement {
        total: Box<VarietyExpr>,
        closed: Box<VarietyExpr>,
    },
    /// Zariski locally trivial fibration over `base` with fiber `fiber`.
    Fibration {
        base: Box<VarietyExpr>,
        fiber: Box<VarietyExpr>,
    },
    /// Blow-up of `ambient` along a smooth `center` of constant codimension.
    BlowUp {
        ambient: Box<VarietyExpr>,
        center: Box<VarietyExpr>,
        codim: u32,
    },
    /// `k` disjoint copies of `inner`.
    Scale(u32, Box<VarietyExpr>),
    /// An opaque generator; `dim` is advisory metadata.
    Atom { name: String, dim: Option<u32> },
}

impl VarietyExpr {
    pub fn product(a: VarietyExpr, b: VarietyExpr) -> Self {
        Self::Product(Box::new(a), Box::new(b))
    }

    pub fn complement(total: VarietyExpr, closed: VarietyExpr) -> Self {
        Self::Complement {
            total: Box::new(total),
            closed: Box::new(closed),
        }
    }

    pub fn fibration(base: VarietyExpr, fiber: VarietyExpr) -> Self {
        Self::Fibration {
            base: Box::new(base),
            fiber: Box::new(fiber),
        }
    }

    pub fn blow_up(ambient: VarietyExpr, center: VarietyExpr, codim: u32) -> Self {
        Self::BlowUp {
            ambient: Box::new(ambient),
            center: Box::new(center),
            codim,
        }
    }

    pub fn scale(k: u32, inner: VarietyExpr) -> Self {
        Self::Scale(k, Box::new(inner))
    }

    pub fn atom(name: impl Into<String>, dim: Option<u32>) -> Self {
        Self::Atom {
            name: name.into(),
            dim,
        }
    }

    /// `k` rational points, as `pt` or `k*pt`.
    pub fn points(k: u32) -> Self {
        if k == 1 {
            Self::Point
        } else {
            Self::scale(k, Self::Point)
        }
    }

    /// Number of points if this is `pt` or `k*pt` (nested scales multiply).
    pub fn point_count(&self) -> Option<u64> {
        match self {
            Self::Point => Some(1),
            Self::Scale(k, inner) => inner.point_count().map(|n| n * u64::from(*k)),
            _ => None,
        }
    }

    pub fn contains_atoms(&self) -> bool {
        match self {
            Self::Atom { .. } => true,
            Self::Empty | Self::Point | Self::Affine(_) | Self::Projective(_) => false,
            Self::Product(a, b) => a.contains_atoms() || b.contains_atoms(),
            Self::Disjoint(parts) => parts.iter().any(Self::contains_atoms),
            Self::Complement { total, closed } => total.contains_atoms() || closed.contains_atoms(),
            Self::Fibration { base, fiber } => base.contains_atoms() || fiber.contains_atoms(),
            Self::BlowUp { ambient, center, .. } => ambient.contains_atoms() || center.contains_atoms(),
            Self::Scale(_, inner) => inner.contains_atoms(),
        }
    }

    /// Short constructor name, used in diagnostic paths.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Empty => "empty",
            Self::Point => "pt",
            Self::Affine(_) => "A",
            Self::Projective(_) => "P",
            Self::Product(..) => "product",
            Self::Disjoint(_) => "disjoint",
            Self::Complement { .. } => "complement",
            Self::Fibration { .. } => "fib",
            Self::BlowUp { .. } => "blowup",
            Self::Scale(..) => "scale",
            Self::Atom { .. } => "atom",
        }
    }
}

/// A structural problem found by [`validate`]. `path` names the offending
/// subterm from the root, e.g. `blowup/center`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "error: {}", self.message)
        } else {
            write!(f, "error at {}: {}", self.path, self.message)
        }
    }
}

/// Collects diagnostics across several expressions, so that atom
/// declarations are checked for consistency over a whole script.
#[derive(Debug, Default)]
pub struct Validator {
    atom_dims: BTreeMap<String, u32>,
    diagnostics: Vec<Diagnostic>,
}

impl Validator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, e: &VarietyExpr) {
        self.walk(e, e.kind().to_string());
    }

    pub fn finish(self) -> Vec<Diagnostic> {
        self.diagnostics
    }

    fn walk(&mut self, e: &VarietyExpr, path: String) {
        let child = |suffix: &str| format!("{path}/{suffix}");
        match e {
            VarietyExpr::Empty | VarietyExpr::Point | VarietyExpr::Affine(_) | VarietyExpr::Projective(_) => {}
            VarietyExpr::Product(a, b) => {
                self.walk(a, child("left"));
                self.walk(b, child("right"));
            }
            VarietyExpr::Disjoint(parts) => {
                if parts.is_empty() {
                    self.diagnostics
                        .push(Diagnostic::new(path.clone(), "disjoint union needs at least one part"));
                }
                for (i, part) in parts.iter().enumerate() {
                    self.walk(part, child(&i.to_string()));
                }
            }
            VarietyExpr::Complement { total, closed } => {
                self.walk(total, child("total"));
                self.walk(closed, child("closed"));
            }
            VarietyExpr::Fibration { base, fiber } => {
                self.walk(base, child("base"));
                self.walk(fiber, child("fiber"));
            }
            VarietyExpr::BlowUp { ambient, center, codim } => {
                if *codim == 0 {
                    self.diagnostics
                        .push(Diagnostic::new(path.clone(), "codim must be >= 1"));
                }
                self.walk(ambient, child("ambient"));
                self.walk(center, child("center"));
            }
            VarietyExpr::Scale(k, inner) => {
                if *k == 0 {
                    self.diagnostics
                        .push(Diagnostic::new(path.clone(), "scale factor must be >= 1"));
                }
                self.walk(inner, child("inner"));
            }
            VarietyExpr::Atom { name, dim } => {
                if name.is_empty() {
                    self.diagnostics
                        .push(Diagnostic::new(path, "atom name must be nonempty"));
                    return;
                }
                let Some(dim) = dim else { return };
                match self.atom_dims.get(name) {
                    Some(prev) if prev != dim => self.diagnostics.push(Diagnostic::new(
                        path,
                        format!("atom \"{name}\" redeclared with dim {dim} (previously {prev})"),
                    )),
                    Some(_) => {}
                    None => {
                        self.atom_dims.insert(name.clone(), *dim);
                    }
                }
            }
        }
    }
}

/// Structural problems in `e`; an empty list means well-formed.
pub fn validate(e: &VarietyExpr) -> Vec<Diagnostic> {
    let mut v = Validator::new();
    v.check(e);
    v.finish()
}

/// An ordered tuple of distinct points. Only `count` reaches the class
/// computation; labels are bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    pub count: u32,
    pub labels: Option<Vec<String>>,
}

impl PointConfiguration {
    pub fn new(count: u32) -> Self {
        Self { count, labels: None }
    }

    pub fn labeled<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        Self {
            count: labels.len() as u32,
            labels: Some(labels),
        }
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.count == 0 {
            out.push(Diagnostic::new("points", "point count must be >= 1"));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.count as usize {
                out.push(Diagnostic::new(
                    "points",
                    format!("{} labels given for {} points", labels.len(), self.count),
                ));
            }
            let mut seen = HashSet::new();
            for label in labels {
                if !seen.insert(label) {
                    out.push(Diagnostic::new("points", format!("duplicate label {label:?}")));
                }
            }
        }
        out
    }
}

/// `X_p`: the blow-up of `P^3` at the points of `cfg`.
pub fn blowup_p3_points(cfg: &PointConfiguration) -> Result<VarietyExpr, Vec<Diagnostic>> {
    let diags = cfg.validate();
    if !diags.is_empty() {
        return Err(diags);
    }
    Ok(VarietyExpr::blow_up(
        VarietyExpr::Projective(3),
        VarietyExpr::points(cfg.count),
        3,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn well_formed_has_no_diagnostics() {
        assert!(validate(&VarietyExpr::Projective(3)).is_empty());
    }

    #[test]
    fn zero_codim_rejected() {
        let e = VarietyExpr::blow_up(VarietyExpr::Projective(3), VarietyExpr::Point, 0);
        let d = validate(&e);
        assert_eq!(d.len(), 1);
        assert!(d[0].message.contains("codim must be >= 1"));
        assert_eq!(d[0].path, "blowup");
    }

    #[test]
    fn zero_scale_rejected_with_path() {
        let e = VarietyExpr::product(VarietyExpr::Point, VarietyExpr::scale(0, VarietyExpr::Point));
        let d = validate(&e);
        assert_eq!(d, vec![Diagnostic::new("product/right", "scale factor must be >= 1")]);
    }

    #[test]
    fn atom_dimension_conflict() {
        let e = VarietyExpr::Disjoint(vec![
            VarietyExpr::atom("C", Some(1)),
            VarietyExpr::atom("C", None),
            VarietyExpr::atom("C", Some(2)),
        ]);
        let d = validate(&e);
        assert_eq!(d.len(), 1);
        assert!(d[0].message.contains("redeclared"));
        assert!(!validate(&VarietyExpr::atom("", None)).is_empty());
    }

    #[test]
    fn conflicts_span_expressions() {
        let mut v = Validator::new();
        v.check(&VarietyExpr::atom("S", Some(2)));
        v.check(&VarietyExpr::atom("S", Some(3)));
        assert_eq!(v.finish().len(), 1);
    }

    #[test]
    fn duplicate_labels() {
        let mut labels: Vec<String> = (1..=7).map(|i| format!("p{i}")).collect();
        labels.push("p1".into());
        let cfg = PointConfiguration::labeled(labels);
        assert_eq!(cfg.count, 8);
        let d = cfg.validate();
        assert_eq!(d.len(), 1);
        assert!(d[0].message.contains("duplicate label"));
        assert!(blowup_p3_points(&cfg).is_err());
    }

    #[test]
    fn p3_blowups() {
        let eight = blowup_p3_points(&PointConfiguration::new(8)).unwrap();
        assert_eq!(
            eight,
            VarietyExpr::blow_up(
                VarietyExpr::Projective(3),
                VarietyExpr::scale(8, VarietyExpr::Point),
                3
            )
        );
        let one = blowup_p3_points(&PointConfiguration::new(1)).unwrap();
        assert_eq!(one, VarietyExpr::blow_up(VarietyExpr::Projective(3), VarietyExpr::Point, 3));

        let a = PointConfiguration::labeled((0..8).map(|i| format!("p{i}")));
        let b = PointConfiguration::labeled((0..8).map(|i| format!("q{i}")));
        assert_eq!(blowup_p3_points(&a).unwrap(), blowup_p3_points(&b).unwrap());
        assert!(blowup_p3_points(&PointConfiguration::new(0)).is_err());
    }
}
