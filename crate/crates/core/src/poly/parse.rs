//! Text form of polynomials.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! poly   := ['+'|'-']? term (('+'|'-') term)*
//! term   := rational | [rational '*']? factor ('*' factor)*
//! factor := 'x[' int '][' int ']' | 'y[' int ']' | 't'
//! rational := int ['/' int]
//! ```
//!
//! `Display` and `FromStr` round-trip bit-exactly: exponents print as
//! repeated factors and coefficients as reduced fractions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Term, Variable};

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in display_factors(self) {
            for _ in 0..e {
                if !first {
                    f.write_str("*")?;
                }
                write!(f, "{v}")?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Factors print `x`'s row-major first, then `y`'s, then `t`.
fn display_factors(m: &Monomial) -> Vec<(Variable, u32)> {
    let mut factors: Vec<(Variable, u32)> = m.exponents().to_vec();
    factors.sort_by_key(|(v, _)| match *v {
        Variable::X { row, col } => (0u8, row, col),
        Variable::Y { col } => (1, col, 0),
        Variable::T => (2, 0, 0),
    });
    factors
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, t) in self.terms().iter().enumerate() {
            let neg = t.coeff.is_negative();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let abs = t.coeff.abs();
            if t.mono.is_one() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", t.mono)?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), t.mono)?;
            }
        }
        Ok(())
    }
}

fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Polynomial> {
        Parser::new(s).parse()
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { chars: src.chars().collect(), pos: 0, src }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {} in `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        let c = self.chars.get(self.pos).copied();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            _ => Err(self.error(&format!("expected `{c}`"))),
        }
    }

    fn parse(&mut self) -> Result<Polynomial> {
        let mut terms: Vec<Term> = Vec::new();
        let mut sign = match self.peek() {
            Some('-') => {
                self.bump();
                -1
            }
            Some('+') => {
                self.bump();
                1
            }
            Some(_) => 1,
            None => return Err(self.error("empty polynomial")),
        };
        loop {
            let mut term = self.parse_term()?;
            if sign < 0 {
                term.coeff = -term.coeff;
            }
            terms.push(term);
            match self.peek() {
                Some('+') => {
                    self.bump();
                    sign = 1;
                }
                Some('-') => {
                    self.bump();
                    sign = -1;
                }
                Some(_) => return Err(self.error("expected `+`, `-` or end of input")),
                None => break,
            }
        }
        Ok(Polynomial::from_terms(terms))
    }

    fn parse_term(&mut self) -> Result<Term> {
        let mut coeff = BigRational::one();
        let mut mono = Monomial::one();

        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.parse_rational()?;
            if self.peek() == Some('*') {
                self.bump();
            } else {
                return Ok(Term::new(coeff, mono)); // bare constant term
            }
        }

        loop {
            let v = self.parse_factor()?;
            mono = mono.mul(&Monomial::var(v));
            if self.peek() == Some('*') {
                self.bump();
            } else {
                break;
            }
        }
        Ok(Term::new(coeff, mono))
    }

    fn parse_rational(&mut self) -> Result<BigRational> {
        let numer = self.parse_int()?;
        if self.peek() == Some('/') {
            self.bump();
            let denom = self.parse_int()?;
            if denom.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    fn parse_int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse::<BigInt>()
            .map_err(|e| self.error(&format!("bad integer: {e}")))
    }

    fn parse_factor(&mut self) -> Result<Variable> {
        match self.bump() {
            Some('x') => {
                self.expect('[')?;
                let row = self.parse_index()?;
                self.expect(']')?;
                self.expect('[')?;
                let col = self.parse_index()?;
                self.expect(']')?;
                Ok(Variable::x(row, col))
            }
            Some('y') => {
                self.expect('[')?;
                let col = self.parse_index()?;
                self.expect(']')?;
                Ok(Variable::y(col))
            }
            Some('t') => Ok(Variable::T),
            _ => Err(self.error("expected `x[..][..]`, `y[..]` or `t`")),
        }
    }

    fn parse_index(&mut self) -> Result<u32> {
        let n = self.parse_int()?;
        let n: u32 = n
            .try_into()
            .map_err(|_| self.error("index out of range"))?;
        if n == 0 {
            return Err(self.error("indices are 1-based"));
        }
        Ok(n)
    }
}
