//! Polynomial expression parsing and printing.
//!
//! Grammar:
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nonneg-int)?
//! atom   := rational | variable | '(' expr ')'
//! ```
//! Whitespace is insignificant. Rational literals read as `a` or `a/b`.
//! Printing produces the canonical form (terms in internal storage order),
//! and parse-then-print is the identity on canonical strings.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{format_rational, Rational};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Ring, Term};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { src: src.as_bytes(), pos: 0 };
        let mut out = Vec::new();
        loop {
            lx.skip_ws();
            if lx.pos >= lx.src.len() {
                return Ok(out);
            }
            let start = lx.pos;
            let c = lx.src[lx.pos];
            let tok = match c {
                b'+' => {
                    lx.pos += 1;
                    Tok::Plus
                }
                b'-' => {
                    lx.pos += 1;
                    Tok::Minus
                }
                b'*' => {
                    lx.pos += 1;
                    Tok::Star
                }
                b'^' => {
                    lx.pos += 1;
                    Tok::Caret
                }
                b'(' => {
                    lx.pos += 1;
                    Tok::LParen
                }
                b')' => {
                    lx.pos += 1;
                    Tok::RParen
                }
                b'0'..=b'9' => lx.number(start)?,
                c if c.is_ascii_alphabetic() || c == b'_' => lx.ident(),
                c => {
                    return Err(Error::Parse {
                        offset: start,
                        message: format!("unexpected character {:?}", c as char),
                    })
                }
            };
            out.push((tok, start));
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn number(&mut self, start: usize) -> Result<Tok> {
        let numer: BigInt = self.digits().parse().expect("digit run");
        // a '/' directly followed by digits continues the rational literal
        if self.pos + 1 < self.src.len()
            && self.src[self.pos] == b'/'
            && self.src[self.pos + 1].is_ascii_digit()
        {
            self.pos += 1;
            let denom: BigInt = self.digits().parse().expect("digit run");
            if denom.is_zero() {
                return Err(Error::Parse { offset: start, message: "zero denominator".into() });
            }
            Ok(Tok::Number(Rational::new(numer, denom)))
        } else {
            Ok(Tok::Number(Rational::from_integer(numer)))
        }
    }

    fn ident(&mut self) -> Tok {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        Tok::Ident(String::from_utf8(self.src[start..self.pos].to_vec()).expect("ascii ident"))
    }
}

struct Parser<'r> {
    ring: &'r Ring,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    src_len: usize,
}

/// Parses an expression into a polynomial of the given ring.
pub fn parse_polynomial(src: &str, ring: &Ring) -> Result<Polynomial> {
    let toks = Lexer::tokens(src)?;
    let mut p = Parser { ring, toks, pos: 0, src_len: src.len() };
    let poly = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(Error::Parse {
            offset: p.toks[p.pos].1,
            message: "trailing input after expression".into(),
        });
    }
    Ok(poly)
}

impl<'r> Parser<'r> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, o)| *o).unwrap_or(self.src_len)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let off = self.offset();
            match self.bump() {
                Some(Tok::Number(n)) if n.denom().is_one() && !n.is_negative() => {
                    let exp = u32::try_from(n.numer().clone()).map_err(|_| Error::Parse {
                        offset: off,
                        message: "exponent too large".into(),
                    })?;
                    Ok(base.pow(exp))
                }
                _ => Err(Error::Parse {
                    offset: off,
                    message: "expected a non-negative integer exponent after '^'".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let off = self.offset();
        match self.bump() {
            Some(Tok::Number(c)) => Ok(Polynomial::constant(self.ring, c)),
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => Ok(Polynomial::var(self.ring, i)),
                None => Err(Error::Parse {
                    offset: off,
                    message: format!("unknown variable {name:?}"),
                }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    return Err(Error::Parse { offset: off, message: "unclosed parenthesis".into() });
                }
                Ok(inner)
            }
            other => Err(Error::Parse {
                offset: off,
                message: format!("expected a factor, found {other:?}"),
            }),
        }
    }
}

fn print_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (name, &e) in vars.iter().zip(&m.0) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

fn print_term(t: &Term, vars: &[String]) -> (bool, String) {
    let negative = t.coeff.is_negative();
    let abs = t.coeff.abs();
    let mono = print_monomial(&t.monomial, vars);
    let body = if mono.is_empty() {
        format_rational(&abs)
    } else if abs.is_one() {
        mono
    } else {
        format!("{}*{}", format_rational(&abs), mono)
    };
    (negative, body)
}

/// Canonical expression string; `parse_polynomial` inverts it exactly.
pub fn print_polynomial(f: &Polynomial) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let vars = f.ring().variables();
    let mut out = String::new();
    for (i, t) in f.terms().iter().enumerate() {
        let (neg, body) = print_term(t, vars);
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int, ValuedField};

    fn ring_xy() -> Ring {
        Ring::new(vec!["x".into(), "y".into()], ValuedField::new(7).unwrap()).unwrap()
    }

    fn poly(ring: &Ring, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_terms(
            ring,
            terms
                .iter()
                .map(|(c, e)| Term::new(rat_int(*c), Monomial(e.to_vec())))
                .collect(),
        )
    }

    #[test]
    fn parses_basic_forms() {
        let r = ring_xy();
        assert_eq!(
            parse_polynomial("x - 7*y", &r).unwrap(),
            poly(&r, &[(1, &[1, 0]), (-7, &[0, 1])])
        );
        assert!(parse_polynomial("0", &r).unwrap().is_zero());
        assert_eq!(
            parse_polynomial("(x+y)^1*1 - y", &r).unwrap(),
            poly(&r, &[(1, &[1, 0])])
        );
        assert_eq!(
            parse_polynomial("-x + y^2", &r).unwrap(),
            poly(&r, &[(1, &[0, 2]), (-1, &[1, 0])])
        );
        assert_eq!(
            parse_polynomial("3/2*x*y", &r).unwrap(),
            Polynomial::from_terms(&r, vec![Term::new(rat(3, 2), Monomial(vec![1, 1]))])
        );
    }

    #[test]
    fn reports_positions() {
        let r = ring_xy();
        match parse_polynomial("x + z", &r) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_polynomial("x ^ y", &r) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_polynomial("x + ", &r).is_err());
        assert!(parse_polynomial("(x", &r).is_err());
        assert!(parse_polynomial("x y", &r).is_err());
        assert!(parse_polynomial("1/0", &r).is_err());
        assert!(parse_polynomial("x^2^3", &r).is_err());
        assert!(parse_polynomial("x^-1", &r).is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        let r = ring_xy();
        let samples = vec![
            poly(&r, &[(1, &[2, 0]), (-1, &[1, 0])]),
            poly(&r, &[(-3, &[1, 1]), (5, &[0, 0])]),
            Polynomial::zero(&r),
            Polynomial::from_terms(
                &r,
                vec![
                    Term::new(rat(-2, 3), Monomial(vec![0, 2])),
                    Term::new(rat(1, 7), Monomial(vec![0, 0])),
                ],
            ),
        ];
        for f in samples {
            let s = print_polynomial(&f);
            let g = parse_polynomial(&s, &r).unwrap();
            assert_eq!(f, g, "round trip through {s:?}");
            assert_eq!(print_polynomial(&g), s);
        }
    }
}
