//! The equation system of a canonical-form arrangement and its canonical
//! generator sets.
//!
//! In canonical coordinates the first `ell` forms are `x_1, ..., x_ell` and
//! every other form is `alpha_j = sum_i a_ij x_i`. A logarithmic derivation
//! has `p_i = k_i x_i`, and the tuple `(k_1, ..., k_ell)` must satisfy
//!
//! ```text
//! k_j * alpha_j = sum_i k_i * a_ij * x_i      for every j > ell
//! ```
//!
//! Throughout, `a_ij` is the coefficient of `x_i` in `alpha_j`.

use num_traits::{One, Zero};

use crate::arrangement::{Arrangement, LinearForm};
use crate::error::{Error, Result};
use crate::exact::{Monomial, Polynomial, Rational, RationalMatrix};
use crate::logderiv::{k_vector, Derivation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygySystem {
    pub ell: usize,
    pub n: usize,
    /// `rewrite_coeffs[j - ell][i] = a_ij` for every non-coordinate form `j`.
    pub rewrite_coeffs: Vec<Vec<Rational>>,
}

impl SyzygySystem {
    fn coeffs(&self, j: usize) -> Result<&[Rational]> {
        if j < self.ell || j >= self.n {
            return Err(Error::IndexOutOfRange {
                index: j + 1,
                lo: self.ell + 1,
                hi: self.n,
            });
        }
        Ok(&self.rewrite_coeffs[j - self.ell])
    }

    /// `alpha_j` as a polynomial.
    pub fn form(&self, j: usize) -> Result<Polynomial> {
        Ok(Polynomial::linear(self.coeffs(j)?))
    }

    /// Right-hand side `sum_i k_i a_ij x_i`.
    fn rhs(&self, sol: &SolutionTuple, j: usize) -> Result<Polynomial> {
        let a = self.coeffs(j)?;
        Ok(sol
            .entries
            .iter()
            .zip(a)
            .enumerate()
            .fold(Polynomial::zero(self.ell), |acc, (i, (k, a_ij))| {
                acc + k.mul_term(&Monomial::var(self.ell, i), a_ij)
            }))
    }
}

/// First `ell` quotients `(k_1, ..., k_ell)`, plus the completed tuple once verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionTuple {
    pub entries: Vec<Polynomial>,
    pub completed: Option<Vec<Polynomial>>,
}

impl SolutionTuple {
    pub fn new(entries: Vec<Polynomial>) -> Self {
        SolutionTuple {
            entries,
            completed: None,
        }
    }
}

/// Generators of the solution set of one equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub j: usize,
    pub e: SolutionTuple,
    /// Indices `r` with `a_jr = 0`.
    pub unit_members: Vec<usize>,
    /// Pairs `s < t` with `a_js * a_jt != 0`.
    pub koszul_members: Vec<(usize, usize)>,
    ell: usize,
    coeffs: Vec<Rational>,
}

/// Which kind of generator a member is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    AllOnes,
    Unit(usize),
    Koszul(usize, usize),
}

impl GeneratorSet {
    /// Every member as an explicit tuple together with its forced `k_j`.
    pub fn members(&self) -> Vec<(GeneratorKind, SolutionTuple, Polynomial)> {
        let ell = self.ell;
        let zero = || vec![Polynomial::zero(ell); ell];
        let mut out = vec![(GeneratorKind::AllOnes, self.e.clone(), Polynomial::one(ell))];
        for &r in &self.unit_members {
            let mut v = zero();
            v[r] = Polynomial::one(ell);
            out.push((GeneratorKind::Unit(r), SolutionTuple::new(v), Polynomial::zero(ell)));
        }
        for &(s, t) in &self.koszul_members {
            // a_jt x_t e_s - a_js x_s e_t
            let mut v = zero();
            v[s] = Polynomial::term(Monomial::var(ell, t), self.coeffs[t].clone());
            v[t] = Polynomial::term(Monomial::var(ell, s), -self.coeffs[s].clone());
            out.push((GeneratorKind::Koszul(s, t), SolutionTuple::new(v), Polynomial::zero(ell)));
        }
        out
    }

    pub fn len(&self) -> usize {
        1 + self.unit_members.len() + self.koszul_members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Reads the rewrite coefficients off a canonical-form arrangement.
pub fn build_system(a: &Arrangement) -> Result<SyzygySystem> {
    if !a.is_canonical() {
        let index = (0..a.ell().min(a.len()))
            .find(|&i| *a.form(i) != LinearForm::coordinate(a.ell(), i))
            .unwrap_or(0);
        return Err(Error::NotCanonical { index });
    }
    Ok(SyzygySystem {
        ell: a.ell(),
        n: a.len(),
        rewrite_coeffs: a.forms()[a.ell()..].iter().map(|f| f.coeffs().to_vec()).collect(),
    })
}

pub fn canonical_generators(sys: &SyzygySystem, j: usize) -> Result<GeneratorSet> {
    let a = sys.coeffs(j)?.to_vec();
    let ell = sys.ell;
    let unit_members = (0..ell).filter(|&r| a[r].is_zero()).collect();
    let mut koszul_members = Vec::new();
    for s in 0..ell {
        for t in s + 1..ell {
            if !a[s].is_zero() && !a[t].is_zero() {
                koszul_members.push((s, t));
            }
        }
    }
    Ok(GeneratorSet {
        j,
        e: SolutionTuple::new(vec![Polynomial::one(ell); ell]),
        unit_members,
        koszul_members,
        ell,
        coeffs: a,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    /// The quotient `k_j` when `ok`.
    pub k_j: Option<Polynomial>,
}

/// Checks the `j`-th equation: `alpha_j` must divide `sum_i k_i a_ij x_i`.
pub fn verify_solution(sys: &SyzygySystem, sol: &SolutionTuple, j: usize) -> Result<Verification> {
    if sol.entries.len() != sys.ell {
        return Err(Error::DimensionMismatch {
            expected: sys.ell,
            found: sol.entries.len(),
        });
    }
    let rhs = sys.rhs(sol, j)?;
    let k_j = rhs.div_exact(&sys.form(j)?);
    Ok(Verification { ok: k_j.is_some(), k_j })
}

/// Verifies every equation and fills in the full `n`-tuple.
pub fn complete(sys: &SyzygySystem, sol: &SolutionTuple) -> Result<SolutionTuple> {
    let mut full = sol.entries.clone();
    for j in sys.ell..sys.n {
        match verify_solution(sys, sol, j)?.k_j {
            Some(k) => full.push(k),
            None => return Err(Error::UnverifiedSolution { j }),
        }
    }
    Ok(SolutionTuple {
        entries: sol.entries.clone(),
        completed: Some(full),
    })
}

/// `theta = sum_i k_i x_i D_i` for a solution of every equation.
pub fn derivation_from_k(sys: &SyzygySystem, sol: &SolutionTuple) -> Result<Derivation> {
    complete(sys, sol)?;
    let ell = sys.ell;
    Derivation::new(
        sol.entries
            .iter()
            .enumerate()
            .map(|(i, k)| k.mul_term(&Monomial::var(ell, i), &Rational::one()))
            .collect(),
    )
}

/// Splits `theta = tangential + k_i * theta_E`, where `tangential` kills `alpha_i`.
pub fn split_wrt_hyperplane(a: &Arrangement, theta: &Derivation, i: usize) -> Result<(Derivation, Polynomial)> {
    if i >= a.len() {
        return Err(Error::IndexOutOfRange {
            index: i + 1,
            lo: 1,
            hi: a.len(),
        });
    }
    let k = k_vector(a, theta)?;
    let scale = k.entries[i].clone();
    let tangential = theta.sub(&Derivation::euler(a.ell()).mul_poly(&scale));
    Ok((tangential, scale))
}

/// Outcome of checking, in one degree, that every homogeneous solution of
/// equation `j` lies in the module generated by its canonical generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationCheck {
    pub j: usize,
    pub degree: u32,
    pub solution_dim: usize,
    pub generated_dim: usize,
    pub contained: bool,
}

/// Compares, in degree `d`, the space of homogeneous solutions of equation
/// `j` with the degree-`d` part of the module spanned by `G_j`.
pub fn generation_check(sys: &SyzygySystem, j: usize, d: u32) -> Result<GenerationCheck> {
    let gens = canonical_generators(sys, j)?;
    let a = sys.coeffs(j)?;
    let ell = sys.ell;
    let monomials = Monomial::all_of_degree(ell, d);
    let k = monomials.len();
    let width = ell * k;

    // solutions: reduce sum_i k_i a_ij x_i modulo alpha_j, require zero
    let pivot = crate::exact::default_pivot(a);
    let mut rows: std::collections::BTreeMap<Monomial, Vec<Rational>> = Default::default();
    for i in 0..ell {
        if a[i].is_zero() {
            continue;
        }
        for (idx, m) in monomials.iter().enumerate() {
            let t = Polynomial::term(m.mul(&Monomial::var(ell, i)), a[i].clone());
            for (mu, c) in t.reduce_mod_linear(a, pivot)?.terms() {
                rows.entry(mu.clone()).or_insert_with(|| vec![Rational::zero(); width])[i * k + idx] += c;
            }
        }
    }
    let system = RationalMatrix::from_rows(rows.into_values().collect(), width);
    let solutions = system.kernel_basis();

    let mut generated = Vec::new();
    for (_, member, _) in gens.members() {
        let gdeg = member.entries.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
        if gdeg > d {
            continue;
        }
        for m in Monomial::all_of_degree(ell, d - gdeg) {
            let mut v = Vec::with_capacity(width);
            for e in &member.entries {
                let shifted = e.mul_term(&m, &Rational::one());
                v.extend(monomials.iter().map(|mm| shifted.coeff(mm)));
            }
            generated.push(v);
        }
    }
    let generated_dim = RationalMatrix::from_rows(generated.clone(), width).rank();
    let mut both = generated;
    both.extend(solutions.iter().cloned());
    let combined = RationalMatrix::from_rows(both, width).rank();
    Ok(GenerationCheck {
        j,
        degree: d,
        solution_dim: solutions.len(),
        generated_dim,
        contained: combined == generated_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_polynomial, rat};
    use crate::logderiv::tests::der;

    fn x2() -> Arrangement {
        Arrangement::from_rows(crate::arrangement::tests::X2_ROWS).unwrap()
    }

    #[test]
    fn x2_system() {
        let sys = build_system(&x2()).unwrap();
        assert_eq!(sys.rewrite_coeffs.len(), 6);
        assert_eq!(sys.rewrite_coeffs[0], vec![rat(1), rat(1), rat(-1)]);
    }

    #[test]
    fn boolean_system_is_empty() {
        let a = Arrangement::from_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(build_system(&a).unwrap().rewrite_coeffs.is_empty());
    }

    #[test]
    fn planar_system() {
        let a = Arrangement::from_rows(&[&[1, 0], &[0, 1], &[1, -1]]).unwrap();
        assert_eq!(build_system(&a).unwrap().rewrite_coeffs, vec![vec![rat(1), rat(-1)]]);
    }

    #[test]
    fn non_canonical_rejected() {
        let a = Arrangement::from_rows(&[&[1, 1], &[1, -1], &[1, 0]]).unwrap();
        assert_eq!(build_system(&a), Err(Error::NotCanonical { index: 0 }));
    }

    #[test]
    fn x2_generators_for_alpha4() {
        let sys = build_system(&x2()).unwrap();
        let g = canonical_generators(&sys, 3).unwrap();
        assert!(g.unit_members.is_empty());
        assert_eq!(g.koszul_members, vec![(0, 1), (0, 2), (1, 2)]);
        let (_, first_koszul, _) = &g.members()[1];
        assert_eq!(first_koszul.entries[0], parse_polynomial("x2", 3).unwrap());
        assert_eq!(first_koszul.entries[1], parse_polynomial("-x1", 3).unwrap());
        for (kind, member, kj) in g.members() {
            let v = verify_solution(&sys, &member, 3).unwrap();
            assert!(v.ok, "{kind:?}");
            assert_eq!(v.k_j.unwrap(), kj);
        }
    }

    #[test]
    fn zero_coefficient_yields_unit_member() {
        let a = Arrangement::from_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 0, 2]]).unwrap();
        let sys = build_system(&a).unwrap();
        let g = canonical_generators(&sys, 3).unwrap();
        assert_eq!(g.unit_members, vec![1]);
        assert_eq!(g.koszul_members, vec![(0, 2)]);
        assert!(canonical_generators(&sys, 1).is_err());
        assert!(canonical_generators(&sys, 4).is_err());
    }

    #[test]
    fn derivation_from_k_examples() {
        let a = Arrangement::from_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let sys = build_system(&a).unwrap();
        let ones = SolutionTuple::new(vec![Polynomial::one(3); 3]);
        assert_eq!(derivation_from_k(&sys, &ones).unwrap(), Derivation::euler(3));
        let sol = SolutionTuple::new(vec![Polynomial::var(3, 1), Polynomial::zero(3), Polynomial::zero(3)]);
        assert_eq!(derivation_from_k(&sys, &sol).unwrap(), der(&["x1*x2", "0", "0"]));

        let pencil = Arrangement::from_rows(&[&[1, 0], &[0, 1], &[1, -1]]).unwrap();
        let sys = build_system(&pencil).unwrap();
        let bad = SolutionTuple::new(vec![Polynomial::var(2, 1), Polynomial::zero(2)]);
        assert_eq!(derivation_from_k(&sys, &bad), Err(Error::UnverifiedSolution { j: 2 }));
    }

    #[test]
    fn split_examples() {
        let a = Arrangement::from_rows(&[&[1, 0], &[0, 1]]).unwrap();
        let (tan, scale) = split_wrt_hyperplane(&a, &Derivation::euler(2), 0).unwrap();
        assert!(tan.is_zero());
        assert_eq!(scale, Polynomial::one(2));

        let theta = der(&["x1^2", "0"]);
        let (tan, scale) = split_wrt_hyperplane(&a, &theta, 0).unwrap();
        assert_eq!(scale, Polynomial::var(2, 0));
        assert_eq!(tan, der(&["0", "-x1*x2"]));
        assert!(tan.apply(&Polynomial::var(2, 0)).is_zero());
    }

    #[test]
    fn generation_in_low_degrees() {
        let sys = build_system(&x2()).unwrap();
        for j in 3..9 {
            for d in 0..=2 {
                let g = generation_check(&sys, j, d).unwrap();
                assert!(g.contained, "j={j} d={d}");
                assert_eq!(g.solution_dim, g.generated_dim);
            }
        }
    }
}
