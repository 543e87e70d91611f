use super::{coefficient_matrix, Arrangement, LinearForm};
use crate::error::{Error, Result};
use crate::exact::{Polynomial, Rational, RationalMatrix};

/// Coordinate change `X = A x` taking an arrangement to canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChangeOfBasis {
    /// Rows are the coefficient vectors of the chosen independent forms.
    pub matrix: RationalMatrix,
    pub inverse: RationalMatrix,
    /// `permutation[new] = old` form index.
    pub permutation: Vec<usize>,
}

impl ChangeOfBasis {
    pub fn is_identity(&self) -> bool {
        let n = self.matrix.rows();
        self.matrix == RationalMatrix::identity(n)
            && self.permutation.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// New coordinates `X = A x` of an old point.
    pub fn forward(&self, x: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(x)
    }

    /// Old coordinates `x = A^{-1} X` of a new point.
    pub fn backward(&self, x: &[Rational]) -> Vec<Rational> {
        self.inverse.mul_vec(x)
    }

    /// Rewrites a polynomial in the old coordinates as one in the new ones,
    /// by substituting `x = A^{-1} X`.
    pub fn pull_forward(&self, p: &Polynomial) -> Polynomial {
        let n = self.inverse.rows();
        let images: Vec<Polynomial> = (0..n)
            .map(|i| Polynomial::linear(self.inverse.row(i)))
            .collect();
        substitute(p, &images)
    }

    /// Rewrites a polynomial in the new coordinates in terms of the old ones.
    pub fn pull_back(&self, p: &Polynomial) -> Polynomial {
        let n = self.matrix.rows();
        let images: Vec<Polynomial> = (0..n)
            .map(|i| Polynomial::linear(self.matrix.row(i)))
            .collect();
        substitute(p, &images)
    }
}

/// Replaces each variable `x_i` of `p` by `images[i]`.
pub(crate) fn substitute(p: &Polynomial, images: &[Polynomial]) -> Polynomial {
    let nvars = images.first().map_or(p.nvars(), Polynomial::nvars);
    let mut out = Polynomial::zero(nvars);
    for (m, c) in p.terms() {
        let mut t = Polynomial::constant(nvars, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                t = &t * &images[i].pow(e);
            }
        }
        out = &out + &t;
    }
    out
}

/// Moves the lexicographically first independent `ell`-subset of forms to
/// the front and changes coordinates so that those forms become
/// `x_1, ..., x_ell`. The remaining forms keep their relative order and are
/// not rescaled.
pub fn to_canonical(a: &Arrangement) -> Result<(Arrangement, ChangeOfBasis)> {
    let ell = a.ell();
    let mut basis: Vec<usize> = Vec::with_capacity(ell);
    for i in 0..a.len() {
        basis.push(i);
        if a.subset_rank(&basis) < basis.len() {
            basis.pop();
        }
        if basis.len() == ell {
            break;
        }
    }
    if basis.len() < ell {
        return Err(Error::NonEssential {
            rank: basis.len(),
            ell,
        });
    }
    let mut permutation = basis.clone();
    permutation.extend((0..a.len()).filter(|i| !basis.contains(i)));

    let chosen: Vec<LinearForm> = basis.iter().map(|&i| a.form(i).clone()).collect();
    let matrix = coefficient_matrix(ell, &chosen);
    let inverse = matrix.inverse().expect("independent forms give an invertible matrix");

    // beta_j(X) = alpha_j(A^{-1} X): row vector a_j times A^{-1}
    let forms = permutation
        .iter()
        .enumerate()
        .map(|(pos, &old)| {
            if pos < ell {
                LinearForm::coordinate(ell, pos)
            } else {
                let row = RationalMatrix::from_rows(vec![a.form(old).coeffs().to_vec()], ell);
                LinearForm::new(row.mul(&inverse).row(0).to_vec())
            }
        })
        .collect();
    let canon = Arrangement::new(ell, forms)?;
    Ok((
        canon,
        ChangeOfBasis {
            matrix,
            inverse,
            permutation,
        },
    ))
}
