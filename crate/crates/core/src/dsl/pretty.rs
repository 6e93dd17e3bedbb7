//! Printing of [`VarietyExpr`] in the concrete syntax. The output re-parses
//! to a structurally identical tree.

use std::fmt::{self, Write};

use crate::variety::VarietyExpr;

fn sum(e: &VarietyExpr, f: &mut impl Write) -> fmt::Result {
    match e {
        VarietyExpr::Disjoint(parts) => {
            for (i, part) in parts.iter().enumerate() {
                if i == 0 {
                    // A leading union must stay grouped or it would flatten.
                    match part {
                        VarietyExpr::Complement { .. } => sum(part, f)?,
                        _ => term(part, f)?,
                    }
                } else {
                    f.write_str(" + ")?;
                    term(part, f)?;
                }
            }
            Ok(())
        }
        VarietyExpr::Complement { total, closed } => {
            match total.as_ref() {
                VarietyExpr::Disjoint(_) | VarietyExpr::Complement { .. } => sum(total, f)?,
                _ => term(total, f)?,
            }
            f.write_str(" - ")?;
            term(closed, f)
        }
        _ => term(e, f),
    }
}

fn term(e: &VarietyExpr, f: &mut impl Write) -> fmt::Result {
    match e {
        VarietyExpr::Product(a, b) => {
            term(a, f)?;
            f.write_str(" * ")?;
            factor(b, f)
        }
        _ => factor(e, f),
    }
}

fn factor(e: &VarietyExpr, f: &mut impl Write) -> fmt::Result {
    match e {
        VarietyExpr::Scale(k, inner) => {
            write!(f, "{k}*")?;
            factor(inner, f)
        }
        VarietyExpr::Product(..) | VarietyExpr::Disjoint(_) | VarietyExpr::Complement { .. } => {
            f.write_char('(')?;
            sum(e, f)?;
            f.write_char(')')
        }
        _ => primary(e, f),
    }
}

fn primary(e: &VarietyExpr, f: &mut impl Write) -> fmt::Result {
    match e {
        VarietyExpr::Empty => f.write_str("empty"),
        VarietyExpr::Point => f.write_str("pt"),
        VarietyExpr::Affine(n) => write!(f, "A({n})"),
        VarietyExpr::Projective(n) => write!(f, "P({n})"),
        VarietyExpr::BlowUp { ambient, center, codim } => {
            f.write_str("blowup(")?;
            sum(ambient, f)?;
            f.write_str("; ")?;
            sum(center, f)?;
            write!(f, ", codim={codim})")
        }
        VarietyExpr::Fibration { base, fiber } => {
            f.write_str("fib(")?;
            sum(base, f)?;
            f.write_str("; ")?;
            sum(fiber, f)?;
            f.write_char(')')
        }
        VarietyExpr::Atom { name, dim } => {
            f.write_str("atom(\"")?;
            for c in name.chars() {
                match c {
                    '"' => f.write_str("\\\"")?,
                    '\\' => f.write_str("\\\\")?,
                    '\n' => f.write_str("\\n")?,
                    c => f.write_char(c)?,
                }
            }
            f.write_char('"')?;
            if let Some(d) = dim {
                write!(f, ", dim={d}")?;
            }
            f.write_char(')')
        }
        VarietyExpr::Scale(..) | VarietyExpr::Product(..) | VarietyExpr::Disjoint(_) | VarietyExpr::Complement { .. } => {
            factor(e, f)
        }
    }
}

impl fmt::Display for VarietyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        sum(self, f)
    }
}
