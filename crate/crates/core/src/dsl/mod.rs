//! Concrete syntax for constructions and scripts.
//!
//! ```text
//! expr    := term (('+' | '-') term)* ;
//! term    := factor ('*' factor)* ;
//! factor  := INT '*' factor | primary ;
//! primary := 'P' '(' INT ')' | 'A' '(' INT ')' | 'pt' | 'empty'
//!          | 'blowup' '(' expr ';' expr (',' 'codim' '=' INT)? ')'
//!          | 'fib' '(' expr ';' expr ')'
//!          | 'atom' '(' STRING (',' 'dim' '=' INT)? ')'
//!          | IDENT | '(' expr ')' ;
//! ```
//!
//! `X + Y` is a disjoint union and `X - Z` the complement of a closed `Z`
//! (closedness is taken on trust). `k*X` is `k` disjoint copies of `X`,
//! never a `k`-fold product. Scripts are sequences of `let NAME = expr;`
//! bindings and commands terminated by `;`:
//!
//! ```text
//! normalize X;            equiv X, Y;          modl X;
//! rational X, dim=3;      biratdiff X, Y;      count X, p=5;
//! verify X, primes=(2,3,5,7);                  demo lesieutre(8);
//! ```

mod lexer;
mod parser;
mod pretty;

pub use lexer::{tokenize, Span, Token, TokenKind};
pub use parser::{parse_expr, parse_polynomial, parse_script};

use std::fmt;

use thiserror::Error;

use crate::variety::VarietyExpr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    UndefinedName,
    DuplicateBinding,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Lexical => "lexical error",
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::UndefinedName => "undefined name",
            ParseErrorKind::DuplicateBinding => "duplicate binding",
        })
    }
}

/// A parse failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: u32,
    pub col: u32,
    pub message: String,
}

impl ParseError {
    pub fn new(kind: ParseErrorKind, span: Span, message: impl Into<String>) -> Self {
        Self {
            kind,
            line: span.line,
            col: span.col,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Normalize(VarietyExpr),
    Equiv(VarietyExpr, VarietyExpr),
    ModL(VarietyExpr),
    Rationality(VarietyExpr, u32),
    BiratDiff(VarietyExpr, VarietyExpr),
    Count(VarietyExpr, u32),
    Verify(VarietyExpr, Vec<u32>),
    DemoLesieutre(u32),
}

/// A parsed script. Names in later bindings and in commands have already
/// been replaced by the expressions they were bound to.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScriptProgram {
    pub bindings: Vec<(String, VarietyExpr)>,
    pub commands: Vec<Command>,
}

/// Parses script bytes, reporting invalid UTF-8 as a positioned lexical
/// error.
pub fn parse_script_bytes(bytes: &[u8]) -> Result<ScriptProgram, ParseError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse_script(text),
        Err(err) => {
            let valid = &bytes[..err.valid_up_to()];
            let valid = std::str::from_utf8(valid).unwrap_or_default();
            let line = valid.matches('\n').count() as u32 + 1;
            let col = valid.rsplit('\n').next().map_or(0, |l| l.chars().count()) as u32 + 1;
            Err(ParseError {
                kind: ParseErrorKind::Lexical,
                line,
                col,
                message: "invalid UTF-8".into(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::VarietyExpr as V;

    #[test]
    fn blowup_with_codim() {
        assert_eq!(
            parse_expr("blowup(P(3); 8*pt, codim=3)").unwrap(),
            V::blow_up(V::Projective(3), V::scale(8, V::Point), 3)
        );
    }

    #[test]
    fn codim_defaults_only_for_points_in_projective_space() {
        assert_eq!(
            parse_expr("blowup(P(3); 8*pt)").unwrap(),
            V::blow_up(V::Projective(3), V::scale(8, V::Point), 3)
        );
        assert_eq!(
            parse_expr("blowup(P(2); pt)").unwrap(),
            V::blow_up(V::Projective(2), V::Point, 2)
        );
        assert!(parse_expr("blowup(P(3); P(1))").is_err());
        assert!(parse_expr("blowup(A(3); pt)").is_err());
    }

    #[test]
    fn l_is_not_a_variety() {
        let e = parse_expr("P(1) + L").unwrap_err();
        assert_eq!((e.kind, e.line, e.col), (ParseErrorKind::Syntax, 1, 8));
        assert!(e.message.contains("class literal"));
    }

    #[test]
    fn fibration() {
        assert_eq!(
            parse_expr("fib(P(1); P(1))").unwrap(),
            V::fibration(V::Projective(1), V::Projective(1))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse_expr("pt + P(1) * A(1)").unwrap(),
            V::Disjoint(vec![V::Point, V::product(V::Projective(1), V::Affine(1))])
        );
        assert_eq!(
            parse_expr("P(2) - P(1) - pt").unwrap(),
            V::complement(V::complement(V::Projective(2), V::Projective(1)), V::Point)
        );
        assert_eq!(
            parse_expr("pt + pt - pt + A(1)").unwrap(),
            V::Disjoint(vec![
                V::complement(V::Disjoint(vec![V::Point, V::Point]), V::Point),
                V::Affine(1)
            ])
        );
        assert_eq!(
            parse_expr("2*P(1) * A(1)").unwrap(),
            V::product(V::scale(2, V::Projective(1)), V::Affine(1))
        );
        assert_eq!(
            parse_expr("2*(P(1) * A(1))").unwrap(),
            V::scale(2, V::product(V::Projective(1), V::Affine(1)))
        );
    }

    #[test]
    fn scripts() {
        let prog = parse_script("let X = blowup(P(3); 8*pt, codim=3); normalize X;").unwrap();
        assert_eq!(prog.bindings.len(), 1);
        assert_eq!(
            prog.commands,
            vec![Command::Normalize(V::blow_up(V::Projective(3), V::scale(8, V::Point), 3))]
        );
        let e = parse_script("normalize Y;").unwrap_err();
        assert_eq!((e.kind, e.line, e.col), (ParseErrorKind::UndefinedName, 1, 11));
        assert_eq!(parse_script("").unwrap(), ScriptProgram::default());
        assert_eq!(parse_script("  # only a comment\n").unwrap(), ScriptProgram::default());
    }

    #[test]
    fn all_commands() {
        let text = "let X = P(2);\n\
                    normalize X; equiv X, P(1) + A(2); modl X; rational X, dim=2;\n\
                    biratdiff X, P(2); count X, p=5; verify X, primes=(2,3,5); demo lesieutre(8);";
        let prog = parse_script(text).unwrap();
        assert_eq!(prog.commands.len(), 8);
        assert_eq!(prog.commands[5], Command::Count(V::Projective(2), 5));
        assert_eq!(prog.commands[6], Command::Verify(V::Projective(2), vec![2, 3, 5]));
        assert_eq!(prog.commands[7], Command::DemoLesieutre(8));
    }

    #[test]
    fn script_errors() {
        let cases = [
            ("let X = pt; let X = pt;", ParseErrorKind::DuplicateBinding, 1, 17),
            ("let Y = X; let X = pt;", ParseErrorKind::UndefinedName, 1, 9),
            ("count pt, p=4;", ParseErrorKind::Syntax, 1, 13),
            ("verify pt, primes=(2,101);", ParseErrorKind::Syntax, 1, 22),
            ("demo lesieutre(0);", ParseErrorKind::Syntax, 1, 16),
            ("frobnicate pt;", ParseErrorKind::Syntax, 1, 1),
            ("normalize pt", ParseErrorKind::Syntax, 1, 13),
            ("normalize atom(\"C\", dim=1) * atom(\"C\", dim=2);", ParseErrorKind::Syntax, 1, 44),
        ];
        for (text, kind, line, col) in cases {
            let e = parse_script(text).unwrap_err();
            assert_eq!((e.kind, e.line, e.col), (kind, line, col), "{text}: {e}");
        }
    }

    #[test]
    fn invalid_utf8() {
        let e = parse_script_bytes(b"normalize pt;\n  \xff").unwrap_err();
        assert_eq!((e.kind, e.line, e.col), (ParseErrorKind::Lexical, 2, 3));
    }

    #[test]
    fn polynomials() {
        let names: Vec<String> = ["x0", "x1", "y0"].iter().map(|s| s.to_string()).collect();
        let p = parse_polynomial("x0*y0 - x1^2 + 3", &names).unwrap();
        let q = parse_polynomial("-(x1)^2 + y0*x0 + 1 + 2", &names).unwrap();
        assert_eq!(p, q);
        let e = parse_polynomial("x0 + z9", &names).unwrap_err();
        assert_eq!((e.kind, e.col), (ParseErrorKind::UndefinedName, 6));
        assert!(parse_polynomial("x0 x1", &names).is_err());
    }

    #[test]
    fn pretty_printing_round_trips() {
        for text in [
            "blowup(P(3); 8*pt, codim=3)",
            "pt + pt - pt + A(1)",
            "(pt + pt) + pt",
            "P(2) - (P(1) - pt)",
            "2*3*atom(\"a\\\"b\", dim=2)",
            "fib(P(1) + pt; A(2)) * (P(1) * P(1))",
        ] {
            let e = parse_expr(text).unwrap();
            let printed = e.to_string();
            assert_eq!(parse_expr(&printed).unwrap(), e, "{text} -> {printed}");
        }
        assert_eq!(
            parse_expr("blowup(P(3); 8*pt)").unwrap().to_string(),
            "blowup(P(3); 8*pt, codim=3)"
        );
    }
}
