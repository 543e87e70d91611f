//! Text grammar for polynomials.
//!
//! A polynomial is a sequence of signed terms. Each term is `c`, `c*mono` or
//! `mono`, where `c` is an integer or `p/q` and `mono` is a `*`-separated
//! product of `xN` / `xN^E` factors with `1 <= N <= nvars`. Whitespace is
//! ignored and the Unicode minus sign is accepted.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::Rational;
use crate::error::{Error, Result};

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn err(&self, what: &str) -> Error {
        Error::parse(0, format!("{what} at column {} in {:?}", self.pos + 1, self.src))
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn number(&mut self) -> Result<Option<Rational>> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        let num: BigInt = num.parse().map_err(|_| self.err("bad integer"))?;
        if self.peek() == Some('/') {
            self.bump();
            let den = self.digits().ok_or_else(|| self.err("expected denominator"))?;
            let den: BigInt = den.parse().map_err(|_| self.err("bad integer"))?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            return Ok(Some(Rational::new(num, den)));
        }
        Ok(Some(Rational::from_integer(num)))
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        if self.bump() != Some('x') {
            return Err(self.err("expected variable xN"));
        }
        let idx = self.digits().ok_or_else(|| self.err("expected variable index"))?;
        let idx: usize = idx.parse().map_err(|_| self.err("bad variable index"))?;
        if idx == 0 || idx > exps.len() {
            return Err(self.err(&format!("variable x{idx} outside x1..x{}", exps.len())));
        }
        let mut e = 1u32;
        if self.peek() == Some('^') {
            self.bump();
            let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
            e = d.parse().map_err(|_| self.err("bad exponent"))?;
            if e == 0 {
                return Err(self.err("exponent must be at least 1"));
            }
        }
        exps[idx - 1] += e;
        Ok(())
    }

    fn term(&mut self, nvars: usize) -> Result<(Monomial, Rational)> {
        let mut exps = vec![0u32; nvars];
        let coeff = match self.number()? {
            Some(c) => {
                if self.peek() != Some('*') {
                    return Ok((Monomial::new(exps), c));
                }
                self.bump();
                c
            }
            None => Rational::one(),
        };
        self.factor(&mut exps)?;
        while self.peek() == Some('*') {
            self.bump();
            self.factor(&mut exps)?;
        }
        Ok((Monomial::new(exps), coeff))
    }
}

/// Parses one polynomial in `nvars` variables.
pub fn parse_polynomial(text: &str, nvars: usize) -> Result<Polynomial> {
    let mut cur = Cursor {
        chars: text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect(),
        pos: 0,
        src: text,
    };
    if cur.chars.is_empty() {
        return Err(cur.err("empty polynomial"));
    }
    let mut out = Polynomial::zero(nvars);
    let mut first = true;
    while cur.peek().is_some() {
        let negative = match cur.peek() {
            Some('+') => {
                cur.bump();
                false
            }
            Some('-') => {
                cur.bump();
                true
            }
            _ if first => false,
            _ => return Err(cur.err("expected '+' or '-'")),
        };
        first = false;
        let (m, c) = cur.term(nvars)?;
        out.add_term(m, if negative { -c } else { c });
    }
    Ok(out)
}

/// Parses a vector of polynomials, one per non-empty line. Lines starting
/// with `#` are comments.
pub fn parse_polynomial_lines(text: &str, nvars: usize) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let p = parse_polynomial(line, nvars).map_err(|e| match e {
            Error::Parse { message, .. } => Error::parse(lineno + 1, message),
            other => other,
        })?;
        out.push(p);
    }
    Ok(out)
}
