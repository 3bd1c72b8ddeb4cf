//! Text and JSON readers for polynomials.
//!
//! The text grammar accepts sums of products with `+ - * / ^`, parentheses,
//! implicit multiplication by juxtaposition, exact decimal or fractional
//! constants and the variables `x1 x2 x3 y1 y2 y3`. Division is only by
//! nonzero constants. Inputs are untrusted: nesting depth, degree and term
//! count are bounded.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::polynomial::{Monomial, Polynomial, MAX_VARS};
use crate::field::Rational;

const MAX_DEPTH: usize = 128;
const MAX_DEGREE: u32 = 24;
const MAX_TERMS: usize = 50_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at offset {at}")]
    UnexpectedChar { ch: char, at: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {expected} at offset {at}")]
    Expected { expected: &'static str, at: usize },
    #[error("division by a non-constant or zero at offset {0}")]
    BadDivision(usize),
    #[error("expression too large: {0}")]
    TooLarge(&'static str),
    #[error("invalid JSON polynomial: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '0'..='9' | '.' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_digit() || bytes[j] == b'.') {
                    j += 1;
                }
                let text = &s[i..j];
                out.push((start, Tok::Num(parse_decimal(text, start)?)));
                i = j;
                continue;
            }
            'x' | 'y' => {
                let block = if c == 'x' { 0 } else { 3 };
                let mut j = i + 1;
                if j < bytes.len() && bytes[j] == b'_' {
                    j += 1;
                }
                match bytes.get(j) {
                    Some(b @ b'1'..=b'3') => {
                        out.push((start, Tok::Var(block + (b - b'1') as usize)));
                        i = j + 1;
                        continue;
                    }
                    _ => {
                        return Err(ParseError::Expected {
                            expected: "variable index 1, 2 or 3",
                            at: j,
                        })
                    }
                }
            }
            _ => {
                let ch = s[i..].chars().next().unwrap_or('?');
                return Err(ParseError::UnexpectedChar { ch, at: start });
            }
        }
        i += 1;
    }
    Ok(out)
}

fn parse_decimal(text: &str, at: usize) -> Result<Rational, ParseError> {
    let mut parts = text.splitn(2, '.');
    let whole = parts.next().unwrap_or("");
    let frac = parts.next().unwrap_or("");
    if (whole.is_empty() && frac.is_empty()) || frac.contains('.') {
        return Err(ParseError::Expected {
            expected: "number",
            at,
        });
    }
    if whole.len() + frac.len() > 200 {
        return Err(ParseError::TooLarge("numeric literal"));
    }
    let digits = format!("{whole}{frac}");
    let n = BigInt::from_str(&digits).map_err(|_| ParseError::Expected {
        expected: "number",
        at,
    })?;
    let d = num_traits::pow(BigInt::from(10), frac.len());
    Ok(Rational::new(n, d))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    depth: usize,
}

type P = Polynomial<Rational>;

fn check_size(p: &P) -> Result<(), ParseError> {
    if p.len() > MAX_TERMS {
        return Err(ParseError::TooLarge("term count"));
    }
    Ok(())
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(usize::MAX, |(o, _)| *o)
    }

    fn expr(&mut self) -> Result<P, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError::TooLarge("nesting depth"));
        }
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
            check_size(&acc)?;
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<P, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = mul_checked(&acc, &rhs)?;
                }
                Some(Tok::Slash) => {
                    let at = self.offset();
                    self.pos += 1;
                    let rhs = self.unary()?;
                    let c = constant_value(&rhs).ok_or(ParseError::BadDivision(at))?;
                    if c.is_zero() {
                        return Err(ParseError::BadDivision(at));
                    }
                    acc = acc.scale(&(Rational::one() / c));
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    let rhs = self.power()?;
                    acc = mul_checked(&acc, &rhs)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<P, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError::TooLarge("nesting depth"));
        }
        let out = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        };
        self.depth -= 1;
        out
    }

    fn power(&mut self) -> Result<P, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let at = self.offset();
            let e = match self.toks.get(self.pos) {
                Some((_, Tok::Num(n))) if n.is_integer() => n.to_integer(),
                _ => {
                    return Err(ParseError::Expected {
                        expected: "non-negative integer exponent",
                        at,
                    })
                }
            };
            self.pos += 1;
            let e: u32 = u32::try_from(e).map_err(|_| ParseError::TooLarge("exponent"))?;
            let deg = base.degree().unwrap_or(0);
            if deg.saturating_mul(e) > MAX_DEGREE || (deg == 0 && e > 64) {
                return Err(ParseError::TooLarge("degree"));
            }
            let mut acc = P::one(MAX_VARS);
            for _ in 0..e {
                acc = mul_checked(&acc, &base)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<P, ParseError> {
        let at = self.offset();
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some((_, Tok::Num(n))) => Ok(P::constant(MAX_VARS, n)),
            Some((_, Tok::Var(v))) => Ok(P::var(MAX_VARS, v)),
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(ParseError::Expected {
                        expected: "')'",
                        at: self.offset(),
                    }),
                }
            }
            Some(_) => Err(ParseError::Expected {
                expected: "number, variable or '('",
                at,
            }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }
}

fn mul_checked(a: &P, b: &P) -> Result<P, ParseError> {
    let deg = a.degree().unwrap_or(0) + b.degree().unwrap_or(0);
    if deg > MAX_DEGREE {
        return Err(ParseError::TooLarge("degree"));
    }
    if a.len().saturating_mul(b.len()) > MAX_TERMS * 4 {
        return Err(ParseError::TooLarge("term count"));
    }
    let p = a * b;
    check_size(&p)?;
    Ok(p)
}

fn constant_value(p: &P) -> Option<Rational> {
    match p.degree() {
        None => Some(Rational::zero()),
        Some(0) => Some(p.coeff(&Monomial::one())),
        _ => None,
    }
}

fn shrink(p: P) -> P {
    let uses_y = p.terms().any(|(m, _)| m.0[3..].iter().any(|&e| e > 0));
    if uses_y {
        return p;
    }
    P::from_terms(3, p.terms().map(|(m, c)| (*m, c.clone()))).expect("x-only terms")
}

/// Parses the text form. The result has 6 variables if any `y` appears,
/// otherwise 3.
pub fn parse_polynomial(s: &str) -> Result<P, ParseError> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(ParseError::UnexpectedEnd);
    }
    let mut parser = Parser {
        toks,
        pos: 0,
        depth: 0,
    };
    let p = parser.expr()?;
    if parser.pos != parser.toks.len() {
        let (at, _) = parser.toks[parser.pos];
        return Err(ParseError::Expected {
            expected: "operator or end of input",
            at,
        });
    }
    Ok(shrink(p))
}

/// One entry of the JSON form `[{"exponents": [...], "num": .., "den": ..}]`.
/// `num` and `den` are integers, given either as JSON numbers or as decimal
/// strings for values outside the 64-bit range.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct JsonTerm {
    pub exponents: Vec<u16>,
    pub num: serde_json::Value,
    pub den: serde_json::Value,
}

fn json_int(v: &serde_json::Value) -> Result<BigInt, ParseError> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| ParseError::Json(format!("non-integer coefficient {n}"))),
        serde_json::Value::String(s) if s.len() <= 400 => BigInt::from_str(s)
            .map_err(|_| ParseError::Json(format!("bad integer string {s:?}"))),
        other => Err(ParseError::Json(format!("bad integer {other}"))),
    }
}

pub fn parse_polynomial_json(s: &str) -> Result<P, ParseError> {
    let terms: Vec<JsonTerm> =
        serde_json::from_str(s).map_err(|e| ParseError::Json(e.to_string()))?;
    let nvars = terms.first().map_or(3, |t| t.exponents.len());
    if nvars != 3 && nvars != 6 {
        return Err(ParseError::Json(format!("{nvars} variables (expected 3 or 6)")));
    }
    if terms.len() > MAX_TERMS {
        return Err(ParseError::TooLarge("term count"));
    }
    let mut p = P::zero(nvars);
    for t in &terms {
        if t.exponents.len() != nvars {
            return Err(ParseError::Json("inconsistent exponent lengths".into()));
        }
        if t.exponents.iter().map(|&e| e as u32).sum::<u32>() > 1000 {
            return Err(ParseError::TooLarge("degree"));
        }
        let den = json_int(&t.den)?;
        if den.is_zero() {
            return Err(ParseError::Json("zero denominator".into()));
        }
        let mut e = [0u16; MAX_VARS];
        e[..nvars].copy_from_slice(&t.exponents);
        p.add_term(Monomial(e), Rational::new(json_int(&t.num)?, den));
    }
    Ok(p)
}

impl Polynomial<Rational> {
    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms()
            .map(|(m, c)| JsonTerm {
                exponents: m.0[..self.nvars()].to_vec(),
                num: big_to_json(c.numer()),
                den: big_to_json(c.denom()),
            })
            .collect()
    }
}

fn big_to_json(v: &BigInt) -> serde_json::Value {
    match i64::try_from(v) {
        Ok(x) => serde_json::Value::from(x),
        Err(_) => serde_json::Value::String(v.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat};

    #[test]
    fn parses_explicit_and_implicit_products() {
        let a = parse_polynomial("x3 (y1^2 - y2^2) + (x1^2 - x2^2) y3").unwrap();
        let b = parse_polynomial("x3*y1^2 - x3*y2^2 + x1^2*y3 - x2^2*y3").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.nvars(), 6);
    }

    #[test]
    fn fractions_and_decimals_are_exact() {
        let a = parse_polynomial("1/2 (x1 + x2) + 0.25 x3").unwrap();
        assert_eq!(a.coeff(&Monomial::x(1, 0, 0)), rat(1, 2));
        assert_eq!(a.coeff(&Monomial::x(0, 0, 1)), rat(1, 4));
        assert_eq!(a.nvars(), 3);
    }

    #[test]
    fn unary_minus_binds_tighter_than_sum() {
        let a = parse_polynomial("-(5/2) (x1 x3 y2 + x2 y1 y3) + 5/2 x1").unwrap();
        assert_eq!(a.coeff(&Monomial::xy([1, 0, 1], [0, 1, 0])), rat(-5, 2));
        assert_eq!(a.coeff(&Monomial::x(1, 0, 0)), rat(5, 2));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_polynomial("").is_err());
        assert!(parse_polynomial("x4").is_err());
        assert!(parse_polynomial("x1 / x2").is_err());
        assert!(parse_polynomial("1/0").is_err());
        assert!(parse_polynomial("(x1 + 1").is_err());
        assert!(parse_polynomial("x1 ^ x2").is_err());
        assert!(parse_polynomial("(x1+x2+x3)^30").is_err());
        assert!(parse_polynomial(&"(".repeat(10_000)).is_err());
        assert!(parse_polynomial("x1 $ 2").is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = parse_polynomial("2 x3^2 - x1^2 - 1/3 x2^2").unwrap();
        let s = serde_json::to_string(&p.to_json_terms()).unwrap();
        assert_eq!(parse_polynomial_json(&s).unwrap(), p);
        let big = parse_polynomial("123456789012345678901234567890 x1").unwrap();
        let s = serde_json::to_string(&big.to_json_terms()).unwrap();
        assert_eq!(parse_polynomial_json(&s).unwrap(), big);
    }

    #[test]
    fn json_rejects_bad_shapes() {
        assert!(parse_polynomial_json("[{\"exponents\":[1,0],\"num\":1,\"den\":1}]").is_err());
        assert!(parse_polynomial_json("[{\"exponents\":[1,0,0],\"num\":1,\"den\":0}]").is_err());
        assert!(parse_polynomial_json("[{\"exponents\":[1,0,0],\"num\":1.5,\"den\":1}]").is_err());
        assert!(parse_polynomial_json("{}").is_err());
        assert_eq!(parse_polynomial_json("[]").unwrap(), P::zero(3));
        assert_eq!(
            parse_polynomial_json("[{\"exponents\":[0,0,0],\"num\":\"4\",\"den\":2}]").unwrap(),
            P::constant(3, int(2))
        );
    }
}
