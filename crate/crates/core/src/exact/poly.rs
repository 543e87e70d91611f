use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::Rational;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map keyed by graded-lex monomial order; no stored
/// coefficient is ever zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    /// Linear form `sum_i coeffs[i] * x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let nvars = coeffs.len();
        let mut p = Self::zero(nvars);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(nvars, i), c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// True for the zero polynomial and for polynomials whose terms all share one degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Membership in the degree-`d` graded piece; zero belongs to every piece.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e > 0 {
                out.add_term(m.with_exponent(i, e - 1), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Division with remainder by a single divisor using graded-lex leading
    /// terms. A lone polynomial is a Groebner basis of the ideal it spans, so
    /// the remainder is zero exactly when `divisor` divides `self`.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let (lm, lc) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rest = self.clone();
        let mut quotient = Self::zero(self.nvars);
        let mut remainder = Self::zero(self.nvars);
        while let Some((m, c)) = rest.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = &c / &lc;
                for (n, d) in &divisor.terms {
                    rest.add_term(n.mul(&qm), -(d * &qc));
                }
                quotient.add_term(qm, qc);
            } else {
                rest.terms.remove(&m);
                remainder.add_term(m, c);
            }
        }
        (quotient, remainder)
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Eliminates `x_pivot` by the substitution
    /// `x_pivot = -(1/a_pivot) * sum_{t != pivot} a_t x_t`. The result agrees
    /// with `self` modulo the linear form and does not involve `x_pivot`.
    ///
    /// With `pivot = None` the first variable with nonzero coefficient is used.
    pub fn reduce_mod_linear(&self, form: &[Rational], pivot: Option<usize>) -> Result<Polynomial> {
        if form.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: form.len(),
            });
        }
        let pivot = match pivot {
            Some(p) => p,
            None => default_pivot(form).ok_or(Error::ZeroPivot { var: 0 })?,
        };
        if pivot >= form.len() || form[pivot].is_zero() {
            return Err(Error::ZeroPivot { var: pivot });
        }
        let inv = -form[pivot].recip();
        let mut image = Self::zero(self.nvars);
        for (t, a) in form.iter().enumerate() {
            if t != pivot {
                image.add_term(Monomial::var(self.nvars, t), a * &inv);
            }
        }
        let max_e = self.terms.keys().map(|m| m.exponent(pivot)).max().unwrap_or(0);
        let mut powers = vec![Self::one(self.nvars)];
        for e in 1..=max_e as usize {
            let next = &powers[e - 1] * &image;
            powers.push(next);
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(pivot) as usize;
            let rest = m.with_exponent(pivot, 0);
            for (pm, pc) in &powers[e].terms {
                out.add_term(pm.mul(&rest), pc * c);
            }
        }
        Ok(out)
    }
}

/// First variable with a nonzero coefficient in the form.
pub fn default_pivot(form: &[Rational]) -> Option<usize> {
    form.iter().position(|c| !c.is_zero())
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_polynomial, rat};

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    #[test]
    fn eval_linear_form_at_critical_point() {
        let a4 = p("x1 + x2 - x3", 3);
        assert_eq!(a4.eval(&[rat(2), rat(3), rat(-1)]).unwrap(), rat(6));
        assert_eq!(Polynomial::zero(3).eval(&[rat(5), rat(1), rat(0)]).unwrap(), rat(0));
    }

    #[test]
    fn eval_dimension_mismatch() {
        let a = p("x1", 2);
        assert!(matches!(a.eval(&[rat(1)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn reduce_substitutes_pivot() {
        let xy = p("x1*x2", 3);
        let form = [rat(1), rat(1), rat(-1)];
        let r = xy.reduce_mod_linear(&form, None).unwrap();
        assert_eq!(r, p("-x2^2 + x2*x3", 3));
    }

    #[test]
    fn reduce_kills_multiples() {
        let form = [rat(2), rat(-1), rat(3)];
        let alpha = Polynomial::linear(&form);
        let g = p("x1^3 - 7/2*x2*x3 + 4", 3);
        for pivot in 0..3 {
            assert!((&alpha * &g).reduce_mod_linear(&form, Some(pivot)).unwrap().is_zero());
        }
    }

    #[test]
    fn reduce_rejects_zero_pivot() {
        let form = [rat(0), rat(1)];
        let r = p("x1", 2).reduce_mod_linear(&form, Some(0));
        assert_eq!(r, Err(Error::ZeroPivot { var: 0 }));
    }

    #[test]
    fn division() {
        let a = p("x1 - x2", 2);
        let g = p("x1^2 + 3*x1*x2 - x2^2", 2);
        let prod = &a * &g;
        assert_eq!(prod.div_exact(&a), Some(g));
        assert_eq!(p("x1*x2 + 1", 2).div_exact(&a), None);
    }

    #[test]
    fn derivative_and_degree() {
        let f = p("x1^3*x2 - 2*x2^2", 2);
        assert_eq!(f.derivative(0), p("3*x1^2*x2", 2));
        assert_eq!(f.derivative(1), p("x1^3 - 4*x2", 2));
        assert_eq!(f.degree(), Some(4));
        assert!(!f.is_homogeneous());
        assert!(Polynomial::zero(2).is_homogeneous());
    }

    #[test]
    fn rendering() {
        assert_eq!(p("3 - x2 + 1/2*x1^2", 2).to_string(), "1/2*x1^2 - x2 + 3");
        assert_eq!(p("-x1", 2).to_string(), "-x1");
        assert_eq!(Polynomial::zero(2).to_string(), "0");
    }
}
