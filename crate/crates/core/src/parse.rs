//! Concrete syntax for one-dimensional polyhedral sets.
//!
//! ```text
//! expr    := term (('u' | '|' | '\') term)*
//! term    := unary ('&' unary)*
//! unary   := '!' unary | atom
//! atom    := interval | '{' [number (',' number)*] '}' | '(' expr ')'
//! interval:= ('(' | '[') bound ',' bound (')' | ']')
//! bound   := number | 'inf' | '-inf' | '+inf'
//! number  := ['-'] digits ['/' digits | '.' digits]
//! ```
//!
//! `&` binds tighter than union and difference, which associate left.
//! A `(` followed by a bound starts an interval, otherwise it groups.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::interval_sets::{Literal, PolyhedralSet};
use crate::rational::{ExtendedRational, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Union,
    Intersect,
    Difference,
    Not,
    Number(Rational),
    Infinity(bool),
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::LBracket => "'['".into(),
            Token::RBracket => "']'".into(),
            Token::LBrace => "'{'".into(),
            Token::RBrace => "'}'".into(),
            Token::Comma => "','".into(),
            Token::Union => "union".into(),
            Token::Intersect => "'&'".into(),
            Token::Difference => "'\\'".into(),
            Token::Not => "'!'".into(),
            Token::Number(q) => format!("number {q}"),
            Token::Infinity(true) => "'-inf'".into(),
            Token::Infinity(false) => "'inf'".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn parse_error(position: usize, message: impl Into<String>, expected: &str) -> Error {
    Error::Parse {
        position,
        message: message.into(),
        expected: expected.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let simple = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            b'[' => Some(Token::LBracket),
            b']' => Some(Token::RBracket),
            b'{' => Some(Token::LBrace),
            b'}' => Some(Token::RBrace),
            b',' => Some(Token::Comma),
            b'|' => Some(Token::Union),
            b'&' => Some(Token::Intersect),
            b'\\' => Some(Token::Difference),
            b'!' => Some(Token::Not),
            _ => None,
        };
        if let Some(tok) = simple {
            tokens.push((start, tok));
            i += 1;
            continue;
        }

        let mut negative = false;
        if c == b'-' || c == b'+' {
            negative = c == b'-';
            i += 1;
        }
        if text[i..].starts_with("inf") && !is_ident_byte(bytes.get(i + 3)) {
            tokens.push((start, Token::Infinity(negative)));
            i += 3;
            continue;
        }
        if i < bytes.len() && bytes[i].is_ascii_digit() {
            let (q, end) = lex_number(text, i, start)?;
            tokens.push((start, Token::Number(if negative { -q } else { q })));
            i = end;
            continue;
        }
        if i == start && (c == b'u' || c == b'U') && !is_ident_byte(bytes.get(i + 1)) {
            tokens.push((start, Token::Union));
            i += 1;
            continue;
        }
        let found = text[start..].chars().next().unwrap_or(' ');
        return Err(parse_error(
            start,
            format!("unexpected character {found:?}"),
            "a set literal, operator, number or 'inf'",
        ));
    }
    tokens.push((text.len(), Token::End));
    Ok(tokens)
}

fn is_ident_byte(b: Option<&u8>) -> bool {
    b.is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
}

fn lex_number(text: &str, from: usize, start: usize) -> Result<(Rational, usize)> {
    let bytes = text.as_bytes();
    let digits_end = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    let int_end = digits_end(from);
    let whole = BigInt::from_str(&text[from..int_end]).expect("ascii digits");
    match bytes.get(int_end) {
        Some(b'/') => {
            let den_end = digits_end(int_end + 1);
            if den_end == int_end + 1 {
                return Err(parse_error(int_end + 1, "missing denominator", "digits"));
            }
            let den = BigInt::from_str(&text[int_end + 1..den_end]).expect("ascii digits");
            if den.is_zero() {
                return Err(parse_error(
                    start,
                    "division by zero in rational literal",
                    "a nonzero denominator",
                ));
            }
            Ok((Rational::new(whole, den), den_end))
        }
        Some(b'.') => {
            let frac_end = digits_end(int_end + 1);
            if frac_end == int_end + 1 {
                return Err(parse_error(
                    int_end + 1,
                    "missing fractional digits",
                    "digits",
                ));
            }
            let frac = &text[int_end + 1..frac_end];
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let value = whole * &scale + BigInt::from_str(frac).expect("ascii digits");
            Ok((Rational::new(value, scale), frac_end))
        }
        _ => Ok((Rational::from_integer(whole), int_end)),
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn peek_at(&self, offset: usize) -> &Token {
        let idx = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[idx].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].1.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn unexpected(&self, expected: &str) -> Error {
        parse_error(
            self.offset(),
            format!("unexpected {}", self.peek().describe()),
            expected,
        )
    }

    fn expect(&mut self, want: Token, expected: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn expr(&mut self) -> Result<PolyhedralSet> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Token::Union => {
                    self.bump();
                    acc = acc.union(&self.term()?);
                }
                Token::Difference => {
                    self.bump();
                    acc = acc.difference(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyhedralSet> {
        let mut acc = self.unary()?;
        while *self.peek() == Token::Intersect {
            self.bump();
            acc = acc.intersection(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<PolyhedralSet> {
        if *self.peek() == Token::Not {
            self.bump();
            return Ok(self.unary()?.complement());
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<PolyhedralSet> {
        const ATOM: &str = "'(', '[', '{' or '!'";
        match self.peek().clone() {
            Token::LParen => {
                if matches!(self.peek_at(1), Token::Number(_) | Token::Infinity(_)) {
                    self.interval()
                } else {
                    self.bump();
                    let inner = self.expr()?;
                    self.expect(Token::RParen, "')'")?;
                    Ok(inner)
                }
            }
            Token::LBracket => self.interval(),
            Token::LBrace => self.point_set(),
            _ => Err(self.unexpected(ATOM)),
        }
    }

    fn bound(&mut self) -> Result<ExtendedRational> {
        match self.bump() {
            Token::Number(q) => Ok(ExtendedRational::Finite(q)),
            Token::Infinity(true) => Ok(ExtendedRational::NegInfinity),
            Token::Infinity(false) => Ok(ExtendedRational::PosInfinity),
            _ => {
                self.pos -= 1;
                Err(self.unexpected("a number or 'inf'"))
            }
        }
    }

    fn interval(&mut self) -> Result<PolyhedralSet> {
        let start = self.offset();
        let lo_closed = self.bump() == Token::LBracket;
        let lo = self.bound()?;
        self.expect(Token::Comma, "','")?;
        let hi = self.bound()?;
        let hi_closed = match self.peek() {
            Token::RParen => false,
            Token::RBracket => true,
            _ => return Err(self.unexpected("')' or ']'")),
        };
        self.bump();
        let literal = Literal::Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        };
        PolyhedralSet::canonicalize(&[literal]).map_err(|e| match e {
            Error::InvalidInput(msg) => parse_error(start, msg, "a well-formed interval"),
            other => other,
        })
    }

    fn point_set(&mut self) -> Result<PolyhedralSet> {
        self.bump();
        let mut points = Vec::new();
        if *self.peek() == Token::RBrace {
            self.bump();
            return Ok(PolyhedralSet::empty());
        }
        loop {
            match self.bump() {
                Token::Number(q) => points.push(q),
                _ => {
                    self.pos -= 1;
                    return Err(self.unexpected("a number"));
                }
            }
            match self.bump() {
                Token::Comma => continue,
                Token::RBrace => break,
                _ => {
                    self.pos -= 1;
                    return Err(self.unexpected("',' or '}'"));
                }
            }
        }
        Ok(PolyhedralSet::points(points))
    }
}

/// Parses a set expression into its canonical form.
pub fn parse_set_expression(text: &str) -> Result<PolyhedralSet> {
    let mut parser = Parser {
        tokens: lex(text)?,
        pos: 0,
    };
    let set = parser.expr()?;
    if *parser.peek() != Token::End {
        return Err(parser.unexpected("an operator or end of input"));
    }
    Ok(set)
}

impl FromStr for PolyhedralSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_set_expression(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn two_open_intervals() {
        let set = parse_set_expression("(0,1) u (2,3)").unwrap();
        assert_eq!(set.pieces().len(), 2);
        assert_eq!(set.euler_measure(), -2);
    }

    #[test]
    fn half_open_literal() {
        let set = parse_set_expression("[0,1)").unwrap();
        assert_eq!(
            set,
            PolyhedralSet::point(int(0)).union(&PolyhedralSet::open(0, 1).unwrap())
        );
        assert_eq!(set.euler_measure(), 0);
    }

    #[test]
    fn points_intersect_interval() {
        let set = parse_set_expression("{1/2, 3} & (0,1)").unwrap();
        assert_eq!(set, PolyhedralSet::point(rat(1, 2)));
    }

    #[test]
    fn operators_and_grouping() {
        let set = parse_set_expression("!((0,1) | [2,inf))").unwrap();
        assert_eq!(set.to_string(), "(-inf,0] u [1,2)");
        let set = parse_set_expression("[0,3] \\ {1, 2}").unwrap();
        assert_eq!(set.euler_measure(), -1);
        // & binds tighter than u
        let set = parse_set_expression("{5} u (0,2) & (1,3)").unwrap();
        assert_eq!(set.to_string(), "(1,2) u {5}");
        let set = parse_set_expression("(-inf, +inf)").unwrap();
        assert_eq!(set, PolyhedralSet::real_line());
        let set = parse_set_expression("{-1.5, 0}").unwrap();
        assert_eq!(set, PolyhedralSet::points([rat(-3, 2), int(0)]));
    }

    #[test]
    fn errors_carry_position() {
        match parse_set_expression("(0,1) u (2 3)") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 11),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            parse_set_expression("(1,0)"),
            Err(Error::Parse { position: 0, .. })
        ));
        assert!(matches!(
            parse_set_expression("{1/0}"),
            Err(Error::Parse { .. })
        ));
        assert!(parse_set_expression("(0,1) u").is_err());
        assert!(parse_set_expression("(0,1) x").is_err());
        assert!(parse_set_expression("[-inf,0]").is_err());
        assert!(parse_set_expression("").is_err());
    }
}
