//! Recursive-descent parser for polynomial text.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' INTEGER)?
//! atom   := INTEGER ('/' INTEGER)? | IDENT | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use super::{ParseError, ParseErrorKind, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Other(char),
}

fn tokenize(text: &str) -> Vec<(usize, Token)> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Token::Int(digits.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Token::Ident(name)));
        } else {
            let tok = match c {
                '+' => Token::Plus,
                '-' => Token::Minus,
                '*' => Token::Star,
                '/' => Token::Slash,
                '^' => Token::Caret,
                '(' => Token::LParen,
                ')' => Token::RParen,
                other => Token::Other(other),
            };
            out.push((pos, tok));
            i += 1;
        }
    }
    out
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    variables: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            position: self.offset(),
        }
    }

    fn unexpected(&self) -> ParseError {
        let kind = match self.peek() {
            None => ParseErrorKind::UnexpectedEnd,
            Some(t) => ParseErrorKind::UnexpectedToken(describe(t)),
        };
        self.error(kind)
    }

    fn nvars(&self) -> usize {
        self.variables.len()
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            let exponent = match self.peek() {
                Some(Token::Int(n)) => {
                    let n = n.clone();
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| self.error(ParseErrorKind::ExponentTooLarge))?;
                    self.pos += 1;
                    if matches!(self.peek(), Some(Token::Other('.'))) {
                        return Err(self.error(ParseErrorKind::NonIntegerExponent));
                    }
                    e
                }
                Some(Token::Minus) => return Err(self.error(ParseErrorKind::NegativeExponent)),
                None => return Err(self.error(ParseErrorKind::UnexpectedEnd)),
                Some(_) => return Err(self.error(ParseErrorKind::NonIntegerExponent)),
            };
            return Ok(base.pow(exponent));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                if let Some(Token::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Token::Int(d)) => {
                            if d.is_zero() {
                                return Err(self.error(ParseErrorKind::ZeroDenominator));
                            }
                            self.pos += 1;
                            Ok(Polynomial::constant(self.nvars(), Rational::new(n, d)))
                        }
                        _ => Err(self.unexpected()),
                    }
                } else {
                    Ok(Polynomial::constant(
                        self.nvars(),
                        Rational::from_integer(n),
                    ))
                }
            }
            Some(Token::Ident(name)) => match self.variables.iter().position(|v| *v == name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Polynomial::var(self.nvars(), i))
                }
                None => Err(self.error(ParseErrorKind::UnknownVariable(name))),
            },
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.unexpected()),
                }
            }
            _ => Err(self.unexpected()),
        }
    }
}

fn describe(t: &Token) -> String {
    match t {
        Token::Int(n) => n.to_string(),
        Token::Ident(s) => s.clone(),
        Token::Plus => "+".into(),
        Token::Minus => "-".into(),
        Token::Star => "*".into(),
        Token::Slash => "/".into(),
        Token::Caret => "^".into(),
        Token::LParen => "(".into(),
        Token::RParen => ")".into(),
        Token::Other(c) => c.to_string(),
    }
}

/// Parses `text` as a polynomial in the ordered variables `variables`
/// (two or three names).
pub fn parse_polynomial(text: &str, variables: &[&str]) -> Result<Polynomial, ParseError> {
    if !(2..=3).contains(&variables.len()) {
        return Err(ParseError {
            kind: ParseErrorKind::UnsupportedArity(variables.len()),
            position: 0,
        });
    }
    let mut parser = Parser {
        tokens: tokenize(text),
        pos: 0,
        end: text.len(),
        variables,
    };
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.unexpected());
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::SPATIAL_VARS;

    fn parse3(s: &str) -> Result<Polynomial, ParseError> {
        parse_polynomial(s, &SPATIAL_VARS)
    }

    #[test]
    fn quadratic_casimir() {
        let p = parse3("x*y + 1/2*z^2").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.to_string(), "x*y + 1/2*z^2");
    }

    #[test]
    fn zero_literal() {
        assert!(parse3("0").unwrap().is_zero());
    }

    #[test]
    fn identity_collapses() {
        let p = parse_polynomial("(x+y)^2 - x^2 - y^2 - 2*x*y", &["x", "y"]).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.nvars(), 2);
    }

    #[test]
    fn unary_and_nesting() {
        let p = parse3("-(x - 2/4*y)*-z").unwrap();
        assert_eq!(p, parse3("x*z - 1/2*y*z").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse3("x + w").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("w".into()));
        assert_eq!(e.position, 4);

        let e = parse3("x^-2").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NegativeExponent);

        let e = parse3("x^y").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonIntegerExponent);
        let e = parse3("x^1.5").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonIntegerExponent);

        let e = parse3("x + ").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);

        let e = parse3("(x + y").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);

        let e = parse3("x y").unwrap_err();
        assert_eq!(e.position, 2);

        assert_eq!(
            parse3("1/0").unwrap_err().kind,
            ParseErrorKind::ZeroDenominator
        );
        assert!(parse3("x/2").is_err());
    }
}
