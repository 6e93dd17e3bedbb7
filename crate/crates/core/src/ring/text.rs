//! Reader for the canonical class text form, e.g. `L^3 + 9*L^2 + 9*L + 1`
//! or `8*L + L*C`. Accepts any sum of products of integers, `L`, `L^k`,
//! atoms and atom powers; the result is canonicalized.

use std::str::FromStr;

use thiserror::Error;

use super::{AtomMonomial, LPolynomial, MotivicClass, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("class text, offset {offset}: {message}")]
pub struct ClassParseError {
    pub offset: usize,
    pub message: String,
}

impl ClassParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        Self {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ClassParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '+' | '-' | '*' | '^' => {
                chars.next();
                out.push((
                    pos,
                    match c {
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        '*' => Tok::Star,
                        _ => Tok::Caret,
                    },
                ));
            }
            '0'..='9' => {
                let mut value: u64 = 0;
                while let Some(&(_, d)) = chars.peek() {
                    let Some(digit) = d.to_digit(10) else { break };
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(u64::from(digit)))
                        .ok_or_else(|| ClassParseError::new(pos, "integer too large"))?;
                    chars.next();
                }
                out.push((pos, Tok::Int(value)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    name.push(d);
                    chars.next();
                }
                out.push((pos, Tok::Name(name)));
            }
            '"' => {
                chars.next();
                let mut name = String::new();
                loop {
                    match chars.next() {
                        None => return Err(ClassParseError::new(pos, "unterminated quoted atom")),
                        Some((_, '"')) => break,
                        Some((epos, '\\')) => match chars.next() {
                            Some((_, '"')) => name.push('"'),
                            Some((_, '\\')) => name.push('\\'),
                            Some((_, 'n')) => name.push('\n'),
                            _ => return Err(ClassParseError::new(epos, "bad escape")),
                        },
                        Some((_, d)) => name.push(d),
                    }
                }
                // A quoted `L` is an atom, never the Lefschetz class.
                out.push((pos, Tok::Name(format!("\"{name}"))));
            }
            other => {
                return Err(ClassParseError::new(
                    pos,
                    format!("unexpected character {other:?}"),
                ))
            }
        }
    }
    Ok(out)
}

struct Reader {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Reader {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn exponent(&mut self) -> Result<u32, ClassParseError> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(1);
        }
        self.pos += 1;
        let at = self.offset();
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = u32::try_from(*n).map_err(|_| ClassParseError::new(at, "exponent too large"))?;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(ClassParseError::new(at, "expected exponent")),
        }
    }

    fn term(&mut self) -> Result<MotivicClass, ClassParseError> {
        let mut coeff: i64 = 1;
        let mut degree: u32 = 0;
        let mut atoms: Vec<(String, u32)> = Vec::new();
        loop {
            let at = self.offset();
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let n = i64::try_from(n).map_err(|_| ClassParseError::new(at, "integer too large"))?;
                    coeff = coeff
                        .checked_mul(n)
                        .ok_or_else(|| ClassParseError::new(at, "coefficient overflow"))?;
                }
                Some(Tok::Name(name)) => {
                    self.pos += 1;
                    let exp = self.exponent()?;
                    if name == "L" {
                        degree = degree
                            .checked_add(exp)
                            .ok_or_else(|| ClassParseError::new(at, "degree overflow"))?;
                    } else {
                        let name = name.strip_prefix('"').map(str::to_string).unwrap_or(name);
                        atoms.push((name, exp));
                    }
                }
                _ => return Err(ClassParseError::new(at, "expected integer, L, or atom")),
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        let monomial = AtomMonomial::from_factors(atoms).map_err(|e| ClassParseError::new(self.offset(), e.to_string()))?;
        Ok(MotivicClass::term(monomial, LPolynomial::monomial(degree, coeff)))
    }

    fn class(&mut self) -> Result<MotivicClass, ClassParseError> {
        let overflow = |r: Result<MotivicClass, RingError>, at: usize| {
            r.map_err(|e| ClassParseError::new(at, e.to_string()))
        };
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            negate = true;
            self.pos += 1;
        }
        let mut acc = MotivicClass::zero();
        loop {
            let at = self.offset();
            let mut t = self.term()?;
            if negate {
                t = overflow(t.checked_neg(), at)?;
            }
            acc = overflow(acc.checked_add(&t), at)?;
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                None => return Ok(acc),
                Some(_) => return Err(ClassParseError::new(self.offset(), "expected '+' or '-'")),
            }
            self.pos += 1;
        }
    }
}

impl FromStr for MotivicClass {
    type Err = ClassParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks = lex(s)?;
        if toks.is_empty() {
            return Err(ClassParseError::new(0, "empty class text"));
        }
        let mut r = Reader {
            toks,
            pos: 0,
            end: s.len(),
        };
        r.class()
    }
}

impl FromStr for LPolynomial {
    type Err = ClassParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let class: MotivicClass = s.parse()?;
        class
            .as_lpoly()
            .ok_or_else(|| ClassParseError::new(0, "polynomial text contains atoms"))
    }
}
