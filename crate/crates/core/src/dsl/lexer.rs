use std::fmt;

use super::{ParseError, ParseErrorKind};

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Span {
    pub line: u32,
    pub col: u32,
    pub offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Int(u64),
    Ident(String),
    Str(String),
    // keywords
    P,
    A,
    Pt,
    Empty,
    L,
    Blowup,
    Fib,
    Atom,
    Let,
    Codim,
    // punctuation
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Eq,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Int(n) => write!(f, "{n}"),
            TokenKind::Ident(s) => write!(f, "{s}"),
            TokenKind::Str(s) => write!(f, "{s:?}"),
            TokenKind::P => f.write_str("P"),
            TokenKind::A => f.write_str("A"),
            TokenKind::Pt => f.write_str("pt"),
            TokenKind::Empty => f.write_str("empty"),
            TokenKind::L => f.write_str("L"),
            TokenKind::Blowup => f.write_str("blowup"),
            TokenKind::Fib => f.write_str("fib"),
            TokenKind::Atom => f.write_str("atom"),
            TokenKind::Let => f.write_str("let"),
            TokenKind::Codim => f.write_str("codim"),
            TokenKind::Plus => f.write_str("+"),
            TokenKind::Minus => f.write_str("-"),
            TokenKind::Star => f.write_str("*"),
            TokenKind::Caret => f.write_str("^"),
            TokenKind::LParen => f.write_str("("),
            TokenKind::RParen => f.write_str(")"),
            TokenKind::Comma => f.write_str(","),
            TokenKind::Semi => f.write_str(";"),
            TokenKind::Eq => f.write_str("="),
            TokenKind::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

fn keyword(word: &str) -> Option<TokenKind> {
    Some(match word {
        "P" => TokenKind::P,
        "A" => TokenKind::A,
        "pt" => TokenKind::Pt,
        "empty" => TokenKind::Empty,
        "L" => TokenKind::L,
        "blowup" => TokenKind::Blowup,
        "fib" => TokenKind::Fib,
        "atom" => TokenKind::Atom,
        "let" => TokenKind::Let,
        "codim" => TokenKind::Codim,
        _ => return None,
    })
}

struct Cursor<'a> {
    text: &'a str,
    offset: usize,
    line: u32,
    col: u32,
}

impl Cursor<'_> {
    fn span(&self) -> Span {
        Span {
            line: self.line,
            col: self.col,
            offset: self.offset,
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.offset..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.offset += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }
}

/// Splits `text` into tokens, ending with [`TokenKind::Eof`]. `#` starts a
/// comment that runs to the end of the line.
pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut cur = Cursor {
        text,
        offset: 0,
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    let lexical = |span: Span, msg: String| ParseError::new(ParseErrorKind::Lexical, span, msg);

    while let Some(c) = cur.peek() {
        let span = cur.span();
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '#' {
            while let Some(c) = cur.peek() {
                if c == '\n' {
                    break;
                }
                cur.bump();
            }
            continue;
        }
        let single = match c {
            '+' => Some(TokenKind::Plus),
            '-' => Some(TokenKind::Minus),
            '*' => Some(TokenKind::Star),
            '^' => Some(TokenKind::Caret),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            ',' => Some(TokenKind::Comma),
            ';' => Some(TokenKind::Semi),
            '=' => Some(TokenKind::Eq),
            _ => None,
        };
        if let Some(kind) = single {
            cur.bump();
            out.push(Token { kind, span });
            continue;
        }
        if c.is_ascii_digit() {
            let mut value: u64 = 0;
            let mut overflow = false;
            while let Some(d) = cur.peek().and_then(|c| c.to_digit(10)) {
                cur.bump();
                match value.checked_mul(10).and_then(|v| v.checked_add(u64::from(d))) {
                    Some(v) => value = v,
                    None => overflow = true,
                }
            }
            if overflow {
                return Err(lexical(span, "integer literal too large".into()));
            }
            out.push(Token {
                kind: TokenKind::Int(value),
                span,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = cur.offset;
            while cur.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                cur.bump();
            }
            let word = &text[start..cur.offset];
            let kind = keyword(word).unwrap_or_else(|| TokenKind::Ident(word.to_string()));
            out.push(Token { kind, span });
            continue;
        }
        if c == '"' {
            cur.bump();
            let mut s = String::new();
            loop {
                let at = cur.span();
                match cur.bump() {
                    None | Some('\n') => return Err(lexical(span, "unterminated string literal".into())),
                    Some('"') => break,
                    Some('\\') => match cur.bump() {
                        Some('"') => s.push('"'),
                        Some('\\') => s.push('\\'),
                        Some('n') => s.push('\n'),
                        other => {
                            return Err(lexical(
                                at,
                                format!("unknown escape sequence \\{}", other.map(String::from).unwrap_or_default()),
                            ))
                        }
                    },
                    Some(ch) => s.push(ch),
                }
            }
            out.push(Token {
                kind: TokenKind::Str(s),
                span,
            });
            continue;
        }
        return Err(lexical(span, format!("unexpected character {c:?}")));
    }
    out.push(Token {
        kind: TokenKind::Eof,
        span: cur.span(),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use TokenKind as K;

    fn kinds(s: &str) -> Vec<TokenKind> {
        tokenize(s).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn simple_products() {
        assert_eq!(
            kinds("P(3) * A(1)"),
            [K::P, K::LParen, K::Int(3), K::RParen, K::Star, K::A, K::LParen, K::Int(1), K::RParen, K::Eof]
        );
        assert_eq!(kinds("8*pt"), [K::Int(8), K::Star, K::Pt, K::Eof]);
        // unbalanced parentheses are a parse-stage problem
        assert_eq!(kinds("P(3"), [K::P, K::LParen, K::Int(3), K::Eof]);
    }

    #[test]
    fn positions_and_comments() {
        let toks = tokenize("# header\n  let X = pt; # trailing\nX").unwrap();
        let spans: Vec<(u32, u32)> = toks.iter().map(|t| (t.span.line, t.span.col)).collect();
        assert_eq!(spans, [(2, 3), (2, 7), (2, 9), (2, 11), (2, 13), (3, 1), (3, 2)]);
    }

    #[test]
    fn strings_and_identifiers() {
        assert_eq!(
            kinds(r#"atom("a \"b\"", dim=2) x_1"#),
            [
                K::Atom,
                K::LParen,
                K::Str("a \"b\"".into()),
                K::Comma,
                K::Ident("dim".into()),
                K::Eq,
                K::Int(2),
                K::RParen,
                K::Ident("x_1".into()),
                K::Eof
            ]
        );
    }

    #[test]
    fn lexical_errors_carry_positions() {
        let e = tokenize("pt +\n  @").unwrap_err();
        assert_eq!((e.kind, e.line, e.col), (ParseErrorKind::Lexical, 2, 3));
        let e = tokenize("atom(\"abc").unwrap_err();
        assert_eq!((e.line, e.col), (1, 6));
        assert!(tokenize("99999999999999999999999").is_err());
        assert!(tokenize("P(3) é").is_err());
    }
}
