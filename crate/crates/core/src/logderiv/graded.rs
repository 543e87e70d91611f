use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::Derivation;
use crate::arrangement::Arrangement;
use crate::exact::{default_pivot, Monomial, Polynomial, Rational, RationalMatrix};

/// Basis of the degree-`d` homogeneous logarithmic derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub degree: u32,
    pub members: Vec<Derivation>,
}

impl GradedBasis {
    pub fn dim(&self) -> usize {
        self.members.len()
    }
}

/// Dimension of `S_{d-1} * theta_E`, the Euler multiples in degree `d`.
pub fn euler_multiple_dim(ell: usize, d: u32) -> usize {
    if d == 0 || ell == 0 {
        return 0;
    }
    binomial(d as usize - 1 + ell - 1, ell - 1)
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficients of a derivation over the unknowns `(coordinate, monomial)`,
/// coordinate-major, monomials in the order given.
pub(crate) fn coefficient_vector(theta: &Derivation, monomials: &[Monomial]) -> Vec<Rational> {
    theta
        .coords()
        .iter()
        .flat_map(|p| monomials.iter().map(move |m| p.coeff(m)))
        .collect()
}

pub(crate) fn derivation_from_vector(ell: usize, monomials: &[Monomial], v: &[Rational]) -> Derivation {
    let k = monomials.len();
    let coords = (0..ell)
        .map(|r| {
            Polynomial::from_terms(
                ell,
                monomials
                    .iter()
                    .enumerate()
                    .map(|(idx, m)| (m.clone(), v[r * k + idx].clone())),
            )
        })
        .collect();
    Derivation::new(coords).expect("coordinates share the ambient dimension")
}

/// Linear conditions on the coefficients of a derivation supported on
/// `monomials` (in every coordinate) expressing `alpha_i | theta(alpha_i)`
/// for all `i`. Each hyperplane contributes the coefficients of
/// `theta(alpha_i)` reduced modulo `alpha_i`.
pub(crate) fn membership_system(a: &Arrangement, monomials: &[Monomial]) -> RationalMatrix {
    let ell = a.ell();
    let k = monomials.len();
    let blocks: Vec<Vec<Vec<Rational>>> = a
        .forms()
        .par_iter()
        .map(|form| {
            let pivot = default_pivot(form.coeffs());
            let reduced: Vec<Polynomial> = monomials
                .iter()
                .map(|m| {
                    Polynomial::term(m.clone(), Rational::from_integer(1.into()))
                        .reduce_mod_linear(form.coeffs(), pivot)
                        .expect("forms are nonzero")
                })
                .collect();
            let mut rows: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
            for (r, a_r) in form.coeffs().iter().enumerate() {
                if a_r.is_zero() {
                    continue;
                }
                for (idx, red) in reduced.iter().enumerate() {
                    for (mu, c) in red.terms() {
                        let row = rows
                            .entry(mu.clone())
                            .or_insert_with(|| vec![Rational::zero(); ell * k]);
                        row[r * k + idx] += a_r * c;
                    }
                }
            }
            rows.into_values().rev().collect()
        })
        .collect();
    RationalMatrix::from_rows(blocks.into_iter().flatten().collect(), ell * k)
}

/// All homogeneous logarithmic derivations of degree `d`, as a basis read
/// off the kernel of the membership system. Unknowns are ordered by
/// coordinate and then by descending graded-lex monomial.
pub fn graded_component(a: &Arrangement, d: u32) -> GradedBasis {
    let monomials = Monomial::all_of_degree(a.ell(), d);
    let system = membership_system(a, &monomials);
    let members = system
        .kernel_basis()
        .iter()
        .map(|v| derivation_from_vector(a.ell(), &monomials, v))
        .collect();
    GradedBasis { degree: d, members }
}
