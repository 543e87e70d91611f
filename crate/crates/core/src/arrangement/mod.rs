//! Central hyperplane arrangements given by linear forms.

mod canonical;
mod matroid;

use std::fmt;

use num_traits::Zero;

pub use canonical::{to_canonical, ChangeOfBasis};
pub use matroid::{circuits, fundamental_circuits, intersection_lattice, verify_lattice_bijection, Circuit, Flat};

use crate::error::{Error, Result};
use crate::exact::{parse_rational, Polynomial, Rational, RationalMatrix};

/// A nonzero linear form `a_1 x_1 + ... + a_l x_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm(Vec<Rational>);

impl LinearForm {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        LinearForm(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn ell(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, v: &[Rational]) -> Rational {
        self.0.iter().zip(v).map(|(a, x)| a * x).sum()
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::linear(&self.0)
    }

    /// True when the two forms cut out the same hyperplane.
    pub fn is_proportional(&self, other: &LinearForm) -> bool {
        let Some(p) = self.0.iter().position(|c| !c.is_zero()) else {
            return other.is_zero();
        };
        if other.0[p].is_zero() {
            return false;
        }
        let ratio = &other.0[p] / &self.0[p];
        self.0.iter().zip(&other.0).all(|(a, b)| a * &ratio == *b)
    }

    /// Coordinate form `x_i`.
    pub fn coordinate(ell: usize, i: usize) -> Self {
        let mut v = vec![Rational::zero(); ell];
        v[i] = Rational::from_integer(1.into());
        LinearForm(v)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

/// An essential, simple central arrangement of `n` hyperplanes in dimension `ell`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    ell: usize,
    forms: Vec<LinearForm>,
}

impl Arrangement {
    /// Validates the forms: all nonzero, pairwise non-proportional, and of
    /// full rank `ell`.
    pub fn new(ell: usize, forms: Vec<LinearForm>) -> Result<Self> {
        for (i, f) in forms.iter().enumerate() {
            if f.ell() != ell {
                return Err(Error::DimensionMismatch {
                    expected: ell,
                    found: f.ell(),
                });
            }
            if f.is_zero() {
                return Err(Error::ZeroForm { index: i });
            }
        }
        for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                if forms[i].is_proportional(&forms[j]) {
                    return Err(Error::DuplicateHyperplane { first: i, second: j });
                }
            }
        }
        let rank = coefficient_matrix(ell, &forms).rank();
        if rank < ell {
            return Err(Error::NonEssential { rank, ell });
        }
        Ok(Arrangement { ell, forms })
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        let ell = rows.first().map_or(0, |r| r.len());
        let forms = rows
            .iter()
            .map(|r| LinearForm::new(r.iter().map(|&x| Rational::from_integer(x.into())).collect()))
            .collect();
        Self::new(ell, forms)
    }

    /// Parses the `.arr` format: `#` comments, a header line `ell n`, then
    /// `n` rows of `ell` rationals.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header `ell n`"))?;
        let nums: Vec<&str> = header.split_whitespace().collect();
        let [ell, n] = nums[..] else {
            return Err(Error::parse(hline, "header must be `ell n`"));
        };
        let ell: usize = ell.parse().map_err(|_| Error::parse(hline, "bad dimension"))?;
        let n: usize = n.parse().map_err(|_| Error::parse(hline, "bad form count"))?;
        if ell == 0 {
            return Err(Error::parse(hline, "dimension must be positive"));
        }
        let mut forms = Vec::with_capacity(n);
        for (lineno, line) in lines {
            if forms.len() == n {
                return Err(Error::parse(lineno, format!("more than {n} forms")));
            }
            let coeffs = line
                .split_whitespace()
                .map(|t| parse_rational(t).ok_or_else(|| Error::parse(lineno, format!("bad rational {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if coeffs.len() != ell {
                return Err(Error::parse(lineno, format!("expected {ell} coefficients, got {}", coeffs.len())));
            }
            forms.push(LinearForm::new(coeffs));
        }
        if forms.len() != n {
            return Err(Error::parse(0, format!("expected {n} forms, got {}", forms.len())));
        }
        Self::new(ell, forms)
    }

    /// Renders in the `.arr` format.
    pub fn to_arr_string(&self) -> String {
        let mut s = format!("{} {}\n", self.ell, self.forms.len());
        for f in &self.forms {
            let row: Vec<String> = f.coeffs().iter().map(ToString::to_string).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn form(&self, i: usize) -> &LinearForm {
        &self.forms[i]
    }

    /// `Q = prod_i alpha_i`.
    pub fn defining_polynomial(&self) -> Polynomial {
        self.forms
            .iter()
            .fold(Polynomial::one(self.ell), |acc, f| &acc * &f.to_polynomial())
    }

    /// True iff no form vanishes at `point`.
    pub fn point_in_complement(&self, point: &[Rational]) -> Result<bool> {
        if point.len() != self.ell {
            return Err(Error::DimensionMismatch {
                expected: self.ell,
                found: point.len(),
            });
        }
        Ok(self.forms.iter().all(|f| !f.eval(point).is_zero()))
    }

    /// Rank of the normal vectors indexed by `subset`.
    pub fn subset_rank(&self, subset: &[usize]) -> usize {
        let forms: Vec<LinearForm> = subset.iter().map(|&i| self.forms[i].clone()).collect();
        coefficient_matrix(self.ell, &forms).rank()
    }

    /// True when the first `ell` forms are exactly `x_1, ..., x_ell`.
    pub fn is_canonical(&self) -> bool {
        self.forms.len() >= self.ell
            && (0..self.ell).all(|i| self.forms[i] == LinearForm::coordinate(self.ell, i))
    }
}

/// Rank diagnostic for raw form data, without validating the arrangement.
pub fn rank_of_forms(ell: usize, forms: &[LinearForm]) -> usize {
    coefficient_matrix(ell, forms).rank()
}

pub(crate) fn coefficient_matrix(ell: usize, forms: &[LinearForm]) -> RationalMatrix {
    RationalMatrix::from_rows(forms.iter().map(|f| f.coeffs().to_vec()).collect(), ell)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exact::rat;

    pub(crate) const X2_ROWS: &[&[i64]] = &[
        &[1, 0, 0],
        &[0, 1, 0],
        &[0, 0, 1],
        &[1, 1, -1],
        &[1, -1, 1],
        &[2, -2, 1],
        &[2, -1, -2],
        &[2, 1, 1],
        &[2, -1, -1],
    ];

    fn x2() -> Arrangement {
        Arrangement::from_rows(X2_ROWS).unwrap()
    }

    #[test]
    fn loads_boolean() {
        let a = Arrangement::parse("# boolean\n3 3\n1 0 0\n0 1 0\n0 0 1\n").unwrap();
        assert_eq!((a.ell(), a.len()), (3, 3));
        assert!(a.is_canonical());
    }

    #[test]
    fn loads_rationals_and_comments() {
        let a = Arrangement::parse("2 3 # header\n1 0\n0 1\n1/2 -3/4\n").unwrap();
        assert_eq!(a.form(2).coeffs(), &[crate::exact::rat2(1, 2), crate::exact::rat2(-3, 4)]);
    }

    #[test]
    fn rejects_non_essential() {
        let text = "3 9\n1 0 0\n0 1 0\n1 1 0\n1 -1 0\n2 1 0\n1 2 0\n3 1 0\n1 3 0\n2 -1 0\n";
        assert_eq!(Arrangement::parse(text), Err(Error::NonEssential { rank: 2, ell: 3 }));
        assert!(Error::NonEssential { rank: 2, ell: 3 }.to_string().contains("deficit 1"));
    }

    #[test]
    fn rejects_duplicates_and_garbage() {
        assert_eq!(
            Arrangement::parse("2 3\n1 0\n0 1\n2 0\n"),
            Err(Error::DuplicateHyperplane { first: 0, second: 2 })
        );
        assert!(matches!(Arrangement::parse("2 2\n1 0\n0 q\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(Arrangement::parse("2 3\n1 0\n0 1\n"), Err(Error::Parse { .. })));
        assert_eq!(Arrangement::parse("2 2\n0 0\n0 1\n"), Err(Error::ZeroForm { index: 0 }));
    }

    #[test]
    fn defining_polynomial_of_x2() {
        let q = x2().defining_polynomial();
        assert_eq!(q.degree(), Some(9));
        assert!(q.is_homogeneous());
        assert_eq!(q.eval(&[rat(2), rat(3), rat(-1)]).unwrap(), rat(-7776));
        let b = Arrangement::from_rows(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(b.defining_polynomial().to_string(), "x1*x2");
    }

    #[test]
    fn complement_membership() {
        let a = x2();
        assert!(a.point_in_complement(&[rat(2), rat(3), rat(-1)]).unwrap());
        assert!(!a.point_in_complement(&[rat(0), rat(0), rat(0)]).unwrap());
        assert!(!a.point_in_complement(&[rat(1), rat(1), rat(2)]).unwrap());
    }

    #[test]
    fn arr_text_round_trip() {
        let a = x2();
        assert_eq!(Arrangement::parse(&a.to_arr_string()).unwrap(), a);
    }
}
