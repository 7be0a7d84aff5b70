//! Recursive-descent parser for cyclotomic expressions such as
//! `"-1/2 + w^2 - 3*(w + w^4)"`, where `w` is the chosen primitive root.

use num_bigint::BigInt;

use super::{CycNum, FieldElem, Rational};
use crate::{Error, Result};

/// Parse an expression in `w` with `+ - * / ^` and parentheses over `Q(w_p)`.
pub fn parse_cyc(p: u32, input: &str) -> Result<CycNum> {
    CycNum::reduce(p, &[])?;
    let tokens = tokenize(input)?;
    let mut parser = Parser { p, tokens, pos: 0 };
    let v = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(format!("trailing input in {input:?}")));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    W,
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Tok::Num(digits.parse().unwrap()));
            }
            'w' | 'ω' => {
                out.push(Tok::W);
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            '−' => {
                out.push(Tok::Op('-'));
                i += 1;
            }
            _ => return Err(Error::Parse(format!("unexpected {c:?} in {s:?}"))),
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    Ok(out)
}

struct Parser {
    p: u32,
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<CycNum> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CycNum> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.div(&d).ok_or(Error::DivisionByZero)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<CycNum> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<CycNum> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e = match self.peek() {
            Some(Tok::Num(n)) => n.clone(),
            _ => return Err(Error::Parse("exponent must be an integer".into())),
        };
        self.pos += 1;
        let e: i64 = e
            .try_into()
            .map_err(|_| Error::Parse("exponent too large".into()))?;
        let mut result = CycNum::one(self.p);
        for _ in 0..e {
            result = result.mul(&base);
        }
        if neg {
            result = result.inv().ok_or(Error::DivisionByZero)?;
        }
        Ok(result)
    }

    fn atom(&mut self) -> Result<CycNum> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(CycNum::from_rational(self.p, Rational::from_integer(n)))
            }
            Some(Tok::W) => {
                self.pos += 1;
                Ok(CycNum::omega(self.p))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(v)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;

    #[test]
    fn parses_integers_and_rationals() {
        assert_eq!(parse_cyc(5, "-1").unwrap(), CycNum::from_int(5, -1));
        assert_eq!(
            parse_cyc(5, "-1/2").unwrap(),
            CycNum::from_rational(5, rat(-1, 2))
        );
        assert_eq!(parse_cyc(5, "2*(3-1)^2").unwrap(), CycNum::from_int(5, 8));
    }

    #[test]
    fn parses_cyclotomic_expressions() {
        let x = parse_cyc(5, "w^2+w^3").unwrap();
        assert_eq!(x, CycNum::omega_pow(5, 2).add(&CycNum::omega_pow(5, 3)));
        assert_eq!(parse_cyc(5, "w^5").unwrap(), CycNum::one(5));
        assert_eq!(parse_cyc(3, "w^-1").unwrap(), CycNum::omega_pow(3, 2));
        assert_eq!(
            parse_cyc(7, "2*w - w^3/2").unwrap().to_string(),
            "2*w - 1/2*w^3"
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_cyc(5, "").is_err());
        assert!(parse_cyc(5, "x").is_err());
        assert!(parse_cyc(5, "(1+w").is_err());
        assert!(parse_cyc(5, "1 1").is_err());
        assert_eq!(parse_cyc(5, "1/0"), Err(Error::DivisionByZero));
        assert_eq!(parse_cyc(4, "1"), Err(Error::NotPrime(4)));
    }
}
