use std::collections::HashMap;

use super::lexer::{tokenize, Span, Token, TokenKind};
use super::{Command, ParseError, ParseErrorKind, ScriptProgram};
use crate::oracle::{MPoly, PrimeField};
use crate::variety::VarietyExpr;

pub(super) struct Parser {
    toks: Vec<Token>,
    pos: usize,
    bindings: Vec<(String, VarietyExpr)>,
    atom_dims: HashMap<String, u32>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    pub(super) fn new(toks: Vec<Token>) -> Self {
        Self {
            toks,
            pos: 0,
            bindings: Vec::new(),
            atom_dims: HashMap::new(),
        }
    }

    fn peek(&self) -> &TokenKind {
        &self.toks[self.pos].kind
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn advance(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if !matches!(t.kind, TokenKind::Eof) {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, span: Span, msg: impl Into<String>) -> ParseError {
        ParseError::new(ParseErrorKind::Syntax, span, msg)
    }

    fn expected(&self, what: &str) -> ParseError {
        self.syntax(self.span(), format!("expected {what}, found {}", self.peek()))
    }

    fn expect(&mut self, kind: TokenKind) -> PResult<Span> {
        if *self.peek() == kind {
            Ok(self.advance().span)
        } else {
            Err(self.expected(&format!("'{kind}'")))
        }
    }

    fn expect_int(&mut self, what: &str) -> PResult<(u64, Span)> {
        match *self.peek() {
            TokenKind::Int(n) => {
                let span = self.advance().span;
                Ok((n, span))
            }
            _ => Err(self.expected(what)),
        }
    }

    fn expect_u32(&mut self, what: &str) -> PResult<(u32, Span)> {
        let (n, span) = self.expect_int(what)?;
        let n = u32::try_from(n).map_err(|_| self.syntax(span, format!("{what} {n} is too large")))?;
        Ok((n, span))
    }

    /// Consumes an identifier equal to `word` (used for contextual keywords
    /// such as `dim` and `primes`).
    fn expect_word(&mut self, word: &str) -> PResult<()> {
        match self.peek() {
            TokenKind::Ident(s) if s == word => {
                self.advance();
                Ok(())
            }
            _ => Err(self.expected(&format!("'{word}'"))),
        }
    }

    pub(super) fn at_eof(&self) -> bool {
        matches!(self.peek(), TokenKind::Eof)
    }

    pub(super) fn expect_eof(&self) -> PResult<()> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.expected("end of input"))
        }
    }

    // expr := term (('+' | '-') term)*
    pub(super) fn expr(&mut self) -> PResult<VarietyExpr> {
        let mut acc = self.term()?;
        let mut open_union = false;
        loop {
            match self.peek() {
                TokenKind::Plus => {
                    self.advance();
                    let rhs = self.term()?;
                    match (&mut acc, open_union) {
                        (VarietyExpr::Disjoint(parts), true) => parts.push(rhs),
                        _ => {
                            acc = VarietyExpr::Disjoint(vec![acc, rhs]);
                            open_union = true;
                        }
                    }
                }
                TokenKind::Minus => {
                    self.advance();
                    let rhs = self.term()?;
                    acc = VarietyExpr::complement(acc, rhs);
                    open_union = false;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> PResult<VarietyExpr> {
        let mut acc = self.factor()?;
        while *self.peek() == TokenKind::Star {
            self.advance();
            let rhs = self.factor()?;
            acc = VarietyExpr::product(acc, rhs);
        }
        Ok(acc)
    }

    // factor := INT '*' factor | primary
    fn factor(&mut self) -> PResult<VarietyExpr> {
        if let TokenKind::Int(_) = self.peek() {
            let (k, span) = self.expect_u32("scale factor")?;
            if k == 0 {
                return Err(self.syntax(span, "scale factor must be >= 1"));
            }
            if *self.peek() != TokenKind::Star {
                return Err(self.expected("'*' after integer (k*X denotes k disjoint copies of X)"));
            }
            self.advance();
            let inner = self.factor()?;
            return Ok(VarietyExpr::scale(k, inner));
        }
        self.primary()
    }

    fn dimension_arg(&mut self) -> PResult<u32> {
        self.expect(TokenKind::LParen)?;
        let (n, _) = self.expect_u32("dimension")?;
        self.expect(TokenKind::RParen)?;
        Ok(n)
    }

    fn primary(&mut self) -> PResult<VarietyExpr> {
        let span = self.span();
        match self.peek().clone() {
            TokenKind::P => {
                self.advance();
                Ok(VarietyExpr::Projective(self.dimension_arg()?))
            }
            TokenKind::A => {
                self.advance();
                Ok(VarietyExpr::Affine(self.dimension_arg()?))
            }
            TokenKind::Pt => {
                self.advance();
                Ok(VarietyExpr::Point)
            }
            TokenKind::Empty => {
                self.advance();
                Ok(VarietyExpr::Empty)
            }
            TokenKind::L => Err(self.syntax(
                span,
                "L is a class literal, not a variety (classes appear only in outputs); use A(1) for the affine line",
            )),
            TokenKind::Blowup => {
                self.advance();
                self.expect(TokenKind::LParen)?;
                let ambient = self.expr()?;
                self.expect(TokenKind::Semi)?;
                let center = self.expr()?;
                let codim = if *self.peek() == TokenKind::Comma {
                    self.advance();
                    self.expect(TokenKind::Codim)?;
                    self.expect(TokenKind::Eq)?;
                    let (c, cspan) = self.expect_u32("codimension")?;
                    if c == 0 {
                        return Err(self.syntax(cspan, "codim must be >= 1"));
                    }
                    c
                } else {
                    match (&ambient, center.point_count()) {
                        (VarietyExpr::Projective(n), Some(_)) if *n >= 1 => *n,
                        _ => {
                            return Err(self.expected(
                                "', codim=<int>' (codim may only be omitted when blowing up P(n), n >= 1, at points)",
                            ))
                        }
                    }
                };
                self.expect(TokenKind::RParen)?;
                Ok(VarietyExpr::blow_up(ambient, center, codim))
            }
            TokenKind::Fib => {
                self.advance();
                self.expect(TokenKind::LParen)?;
                let base = self.expr()?;
                self.expect(TokenKind::Semi)?;
                let fiber = self.expr()?;
                self.expect(TokenKind::RParen)?;
                Ok(VarietyExpr::fibration(base, fiber))
            }
            TokenKind::Atom => {
                self.advance();
                self.expect(TokenKind::LParen)?;
                let name_span = self.span();
                let name = match self.peek().clone() {
                    TokenKind::Str(s) => {
                        self.advance();
                        s
                    }
                    _ => return Err(self.expected("atom name string")),
                };
                if name.is_empty() {
                    return Err(self.syntax(name_span, "atom name must be nonempty"));
                }
                let dim = if *self.peek() == TokenKind::Comma {
                    self.advance();
                    self.expect_word("dim")?;
                    self.expect(TokenKind::Eq)?;
                    let (d, dspan) = self.expect_u32("dimension")?;
                    match self.atom_dims.get(&name) {
                        Some(prev) if *prev != d => {
                            return Err(self.syntax(
                                dspan,
                                format!("atom \"{name}\" redeclared with dim {d} (previously {prev})"),
                            ))
                        }
                        _ => {
                            self.atom_dims.insert(name.clone(), d);
                        }
                    }
                    Some(d)
                } else {
                    None
                };
                self.expect(TokenKind::RParen)?;
                Ok(VarietyExpr::atom(name, dim))
            }
            TokenKind::Ident(name) => {
                self.advance();
                match self.bindings.iter().find(|(n, _)| *n == name) {
                    Some((_, e)) => Ok(e.clone()),
                    None => Err(ParseError::new(
                        ParseErrorKind::UndefinedName,
                        span,
                        format!("undefined name '{name}'"),
                    )),
                }
            }
            TokenKind::LParen => {
                self.advance();
                let inner = self.expr()?;
                self.expect(TokenKind::RParen)?;
                Ok(inner)
            }
            _ => Err(self.expected("a variety expression")),
        }
    }

    fn prime(&mut self) -> PResult<u32> {
        let (p, span) = self.expect_int("prime")?;
        u32::try_from(p)
            .ok()
            .and_then(|p| PrimeField::new(p).ok())
            .map(PrimeField::p)
            .ok_or_else(|| self.syntax(span, format!("{p} is not a prime in 2..=97")))
    }

    fn command(&mut self, word: &str, span: Span) -> PResult<Command> {
        Ok(match word {
            "normalize" => Command::Normalize(self.expr()?),
            "modl" => Command::ModL(self.expr()?),
            "equiv" | "biratdiff" => {
                let a = self.expr()?;
                self.expect(TokenKind::Comma)?;
                let b = self.expr()?;
                if word == "equiv" {
                    Command::Equiv(a, b)
                } else {
                    Command::BiratDiff(a, b)
                }
            }
            "rational" => {
                let e = self.expr()?;
                self.expect(TokenKind::Comma)?;
                self.expect_word("dim")?;
                self.expect(TokenKind::Eq)?;
                let (d, _) = self.expect_u32("dimension")?;
                Command::Rationality(e, d)
            }
            "count" => {
                let e = self.expr()?;
                self.expect(TokenKind::Comma)?;
                self.expect_word("p")?;
                self.expect(TokenKind::Eq)?;
                Command::Count(e, self.prime()?)
            }
            "verify" => {
                let e = self.expr()?;
                self.expect(TokenKind::Comma)?;
                self.expect_word("primes")?;
                self.expect(TokenKind::Eq)?;
                self.expect(TokenKind::LParen)?;
                let mut primes = vec![self.prime()?];
                while *self.peek() == TokenKind::Comma {
                    self.advance();
                    primes.push(self.prime()?);
                }
                self.expect(TokenKind::RParen)?;
                Command::Verify(e, primes)
            }
            "demo" => {
                self.expect_word("lesieutre")?;
                self.expect(TokenKind::LParen)?;
                let (m, mspan) = self.expect_u32("number of points")?;
                if m == 0 {
                    return Err(self.syntax(mspan, "number of points must be >= 1"));
                }
                self.expect(TokenKind::RParen)?;
                Command::DemoLesieutre(m)
            }
            other => {
                return Err(self.syntax(
                    span,
                    format!(
                        "unknown command '{other}' (expected let, normalize, equiv, modl, rational, biratdiff, count, verify, or demo)"
                    ),
                ))
            }
        })
    }
}

/// Parses a whole script.
pub fn parse_script(text: &str) -> Result<ScriptProgram, ParseError> {
    let mut p = Parser::new(tokenize(text)?);
    let mut commands = Vec::new();

    while !p.at_eof() {
        let span = p.span();
        match p.peek().clone() {
            TokenKind::Let => {
                p.advance();
                let name_span = p.span();
                let name = match p.peek().clone() {
                    TokenKind::Ident(n) => {
                        p.advance();
                        n
                    }
                    _ => return Err(p.expected("binding name")),
                };
                if p.bindings.iter().any(|(n, _)| *n == name) {
                    return Err(ParseError::new(
                        ParseErrorKind::DuplicateBinding,
                        name_span,
                        format!("'{name}' is already bound"),
                    ));
                }
                p.expect(TokenKind::Eq)?;
                let e = p.expr()?;
                p.expect(TokenKind::Semi)?;
                p.bindings.push((name, e));
            }
            TokenKind::Ident(word) => {
                p.advance();
                let cmd = p.command(&word, span)?;
                p.expect(TokenKind::Semi)?;
                commands.push(cmd);
            }
            _ => return Err(p.expected("'let' or a command")),
        }
    }
    Ok(ScriptProgram {
        bindings: p.bindings,
        commands,
    })
}

/// Parses one expression with no bindings in scope.
pub fn parse_expr(text: &str) -> Result<VarietyExpr, ParseError> {
    let mut p = Parser::new(tokenize(text)?);
    let e = p.expr()?;
    p.expect_eof()?;
    Ok(e)
}

/// Parses a polynomial such as `x0*y1 - x1*y0` or `(x0 + 2*x1)^2` over the
/// given variable names.
pub fn parse_polynomial(text: &str, names: &[String]) -> Result<MPoly, ParseError> {
    let toks = tokenize(text)?;
    let mut p = PolyParser {
        toks,
        pos: 0,
        names,
    };
    let poly = p.sum()?;
    if !matches!(p.toks[p.pos].kind, TokenKind::Eof) {
        let t = &p.toks[p.pos];
        return Err(ParseError::new(
            ParseErrorKind::Syntax,
            t.span,
            format!("expected '+', '-', '*' or end of input, found {}", t.kind),
        ));
    }
    Ok(poly)
}

struct PolyParser<'a> {
    toks: Vec<Token>,
    pos: usize,
    names: &'a [String],
}

impl PolyParser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn advance(&mut self) {
        if !matches!(self.peek().kind, TokenKind::Eof) {
            self.pos += 1;
        }
    }

    fn err(&self, span: Span, msg: String) -> ParseError {
        ParseError::new(ParseErrorKind::Syntax, span, msg)
    }

    fn overflow(&self, span: Span) -> ParseError {
        self.err(span, "coefficient overflow".into())
    }

    fn sum(&mut self) -> PResult<MPoly> {
        let n = self.names.len();
        let mut negate = false;
        if self.peek().kind == TokenKind::Minus {
            self.advance();
            negate = true;
        }
        let mut acc = MPoly::zero(n);
        loop {
            let span = self.peek().span;
            let mut t = self.product()?;
            if negate {
                t = t.checked_neg().map_err(|_| self.overflow(span))?;
            }
            acc = acc.checked_add(&t).map_err(|_| self.overflow(span))?;
            match self.peek().kind {
                TokenKind::Plus => negate = false,
                TokenKind::Minus => negate = true,
                _ => return Ok(acc),
            }
            self.advance();
        }
    }

    fn product(&mut self) -> PResult<MPoly> {
        let mut acc = self.power()?;
        while self.peek().kind == TokenKind::Star {
            self.advance();
            let span = self.peek().span;
            let rhs = self.power()?;
            acc = acc.checked_mul(&rhs).map_err(|_| self.overflow(span))?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> PResult<MPoly> {
        let base = self.atom()?;
        if self.peek().kind != TokenKind::Caret {
            return Ok(base);
        }
        self.advance();
        let t = self.peek().clone();
        match t.kind {
            TokenKind::Int(e) if e <= 64 => {
                self.advance();
                base.checked_pow(e as u32).map_err(|_| self.overflow(t.span))
            }
            _ => Err(self.err(t.span, format!("expected exponent (0..=64), found {}", t.kind))),
        }
    }

    fn atom(&mut self) -> PResult<MPoly> {
        let t = self.peek().clone();
        let n = self.names.len();
        match t.kind {
            TokenKind::Int(c) => {
                self.advance();
                let c = i64::try_from(c).map_err(|_| self.overflow(t.span))?;
                Ok(MPoly::constant(n, c))
            }
            TokenKind::Ident(name) => {
                self.advance();
                match self.names.iter().position(|v| *v == name) {
                    Some(i) => Ok(MPoly::var(n, i)),
                    None => Err(ParseError::new(
                        ParseErrorKind::UndefinedName,
                        t.span,
                        format!("unknown variable '{name}' (ambient variables: {})", self.names.join(", ")),
                    )),
                }
            }
            TokenKind::LParen => {
                self.advance();
                let inner = self.sum()?;
                let close = self.peek().clone();
                if close.kind != TokenKind::RParen {
                    return Err(self.err(close.span, format!("expected ')', found {}", close.kind)));
                }
                self.advance();
                Ok(inner)
            }
            other => Err(self.err(t.span, format!("expected a term, found {other}"))),
        }
    }
}
