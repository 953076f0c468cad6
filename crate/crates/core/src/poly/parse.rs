//! Recursive-descent parser for polynomial expressions in `t` and `i`.
//!
//! Accepts sums of products, `^` with signed integer exponents, parentheses
//! and implicit multiplication (`2t`, `(t-1)(t+1)`). Division and negative
//! powers are only allowed for monomials, which keeps the result Laurent.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    T,
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => {}
            '+' => out.push(Tok::Plus),
            '-' | '−' => out.push(Tok::Minus),
            '*' | '·' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            't' => out.push(Tok::T),
            'i' | 'I' => out.push(Tok::I),
            d if d.is_ascii_digit() || d == '.' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_digit() || chars[i + 1] == '.') {
                    i += 1;
                }
                let text: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(parse_decimal(&text)?));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}` in `{s}`"))),
        }
        i += 1;
    }
    Ok(out)
}

fn parse_decimal(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid number `{text}`"));
    let (int, frac) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let d = num_traits::pow(BigInt::from(10), frac.len());
    Ok(BigRational::new(n, d))
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in `{}`", self.pos, self.src))
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let d = self.unary()?;
                    acc = &acc * &self.monomial_inverse(&d)?;
                }
                Some(Tok::Num(_) | Tok::T | Tok::I | Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let k = self.exponent()?;
        if k >= 0 {
            let k = u32::try_from(k).map_err(|_| self.err("exponent too large"))?;
            Ok(base.pow(k))
        } else {
            let inv = self.monomial_inverse(&base)?;
            let k = u32::try_from(-k).map_err(|_| self.err("exponent too large"))?;
            Ok(inv.pow(k))
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.peek() == Some(&Tok::LParen);
        if paren {
            self.bump();
        }
        let mut neg = false;
        while let Some(Tok::Minus | Tok::Plus) = self.peek() {
            if self.bump() == Some(Tok::Minus) {
                neg = !neg;
            }
        }
        let k = match self.bump() {
            Some(Tok::Num(r)) if r.is_integer() => {
                i64::try_from(r.to_integer()).map_err(|_| self.err("exponent too large"))?
            }
            _ => return Err(self.err("expected an integer exponent")),
        };
        if paren && self.bump() != Some(Tok::RParen) {
            return Err(self.err("expected `)`"));
        }
        Ok(if neg { -k } else { k })
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        match self.bump() {
            Some(Tok::Num(r)) => Ok(LaurentPoly::constant(Scalar::real(r))),
            Some(Tok::T) => Ok(LaurentPoly::t()),
            Some(Tok::I) => Ok(LaurentPoly::constant(Scalar::i())),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            _ => Err(self.err("expected a number, `t`, `i` or `(`")),
        }
    }

    fn monomial_inverse(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if d.num_terms() != 1 {
            return Err(self.err("division by a non-monomial"));
        }
        let (k, c) = d.terms().next().unwrap();
        Ok(LaurentPoly::monomial(c.inv().unwrap(), -k))
    }
}

pub(super) fn parse_poly(s: &str) -> Result<LaurentPoly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, src: s };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    #[test]
    fn expanded_and_factored_forms_agree() {
        let a = parse_poly("t^2 - 5/2*t + 1").unwrap();
        let b = parse_poly("(t - 2)*(t - 1/2)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.coeff(1), c(-5, 2));
        let f = parse_poly("(t-1)^2*(t^2-5/2*t+1)").unwrap();
        assert_eq!(f.degree(), Some(4));
    }

    #[test]
    fn laurent_and_complex_terms() {
        let p = parse_poly("2*t^-3 - i*t + (1 + 2i)").unwrap();
        assert_eq!(p.coeff(-3), c(2, 1));
        assert_eq!(p.coeff(1), -Scalar::i());
        assert_eq!(p.coeff(0), Scalar::new(crate::scalar::rat_int(1), crate::scalar::rat_int(2)));
        assert_eq!(parse_poly("t^(-2)").unwrap(), parse_poly("1/t^2").unwrap());
        assert_eq!(parse_poly("0.25t").unwrap().coeff(1), c(1, 4));
    }

    #[test]
    fn rejects_bad_input() {
        for s in ["", "t +", "1/(t-1)", "(t-1)^-1", "t x", "3/0", "t^t", "q"] {
            assert!(parse_poly(s).is_err(), "{s}");
        }
    }

    #[test]
    fn canonical_round_trip() {
        for s in ["0", "1", "-t", "t^2 - 5/2*t + 1", "(1 + i)*t^-1 - 2*i", "-1/3*t^7 + t^-7"] {
            let p = parse_poly(s).unwrap();
            let printed = p.to_string();
            assert_eq!(parse_poly(&printed).unwrap(), p);
            assert_eq!(parse_poly(&printed).unwrap().to_string(), printed);
        }
    }
}
