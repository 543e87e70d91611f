use num_traits::Zero;

use super::graded::{coefficient_vector, graded_component};
use super::{k_vector, Derivation};
use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exact::{det_poly_matrix, Monomial, Polynomial, Rational, RationalMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaitoResult {
    pub determinant: Polynomial,
    /// `det = c * Q` when `is_basis`; zero otherwise.
    pub c: Rational,
    pub is_basis: bool,
}

/// Saito's criterion: `ell` logarithmic derivations form a basis of D(A)
/// iff the determinant of their coefficient matrix is a nonzero multiple of Q.
pub fn saito_check(a: &Arrangement, thetas: &[Derivation]) -> Result<SaitoResult> {
    if thetas.len() != a.ell() {
        return Err(Error::DimensionMismatch {
            expected: a.ell(),
            found: thetas.len(),
        });
    }
    for t in thetas {
        k_vector(a, t)?;
    }
    // column j holds theta_j
    let m: Vec<Vec<Polynomial>> = (0..a.ell())
        .map(|i| thetas.iter().map(|t| t.coords()[i].clone()).collect())
        .collect();
    let determinant = det_poly_matrix(&m)?;
    let q = a.defining_polynomial();
    let c = match (determinant.leading_term(), q.leading_term()) {
        (Some((dm, dc)), Some((qm, qc))) if dm == qm => dc / qc,
        _ => Rational::zero(),
    };
    let is_basis = !c.is_zero() && determinant == q.scale(&c);
    Ok(SaitoResult {
        determinant,
        c: if is_basis { c } else { Rational::zero() },
        is_basis,
    })
}

/// Replaces member `i` (0-based, `i >= 1`) by `theta_i + p * theta_E`.
/// The first member must be the Euler derivation.
pub fn basis_shift(thetas: &[Derivation], i: usize, p: &Polynomial) -> Result<Vec<Derivation>> {
    let Some(first) = thetas.first() else {
        return Err(Error::MissingEuler);
    };
    if *first != Derivation::euler(first.ell()) {
        return Err(Error::MissingEuler);
    }
    if i == 0 {
        return Err(Error::ShiftEuler);
    }
    if i >= thetas.len() {
        return Err(Error::IndexOutOfRange {
            index: i + 1,
            lo: 2,
            hi: thetas.len(),
        });
    }
    let mut out = thetas.to_vec();
    out[i] = thetas[i].add(&first.mul_poly(p));
    Ok(out)
}

/// One degree of the greedy generator search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStep {
    pub degree: u32,
    pub graded_dim: usize,
    /// Dimension of the degree-`d` part of the submodule generated so far.
    pub inherited_dim: usize,
    pub new_generators: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreenessVerdict {
    Free {
        exponents: Vec<u32>,
        basis: Vec<Derivation>,
        c: Rational,
    },
    NotFree {
        generator_degrees: Vec<u32>,
        reason: String,
    },
    Inconclusive {
        max_degree: u32,
        generator_degrees: Vec<u32>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessReport {
    pub steps: Vec<DegreeStep>,
    pub verdict: FreenessVerdict,
}

/// Collects minimal homogeneous generators of D(A) degree by degree: at
/// each degree, members of the graded component outside the span of
/// `S * (generators so far)` become new generators. Stops once `ell`
/// generators are found or `max_degree` is passed.
pub fn free_check(a: &Arrangement, max_degree: u32) -> FreenessReport {
    let ell = a.ell();
    let mut generators: Vec<(u32, Derivation)> = Vec::new();
    let mut steps = Vec::new();
    for d in 1..=max_degree {
        let graded = graded_component(a, d);
        let monomials = Monomial::all_of_degree(ell, d);
        let width = ell * monomials.len();
        let mut span: Vec<Vec<Rational>> = Vec::new();
        for (gd, g) in &generators {
            for m in Monomial::all_of_degree(ell, d - gd) {
                let shifted = g.mul_poly(&Polynomial::term(m, Rational::from_integer(1.into())));
                span.push(coefficient_vector(&shifted, &monomials));
            }
        }
        let mut rank = RationalMatrix::from_rows(span.clone(), width).rank();
        let inherited_dim = rank;
        let mut new_generators = 0;
        for member in &graded.members {
            span.push(coefficient_vector(member, &monomials));
            let r = RationalMatrix::from_rows(span.clone(), width).rank();
            if r > rank {
                rank = r;
                generators.push((d, member.clone()));
                new_generators += 1;
            } else {
                span.pop();
            }
        }
        steps.push(DegreeStep {
            degree: d,
            graded_dim: graded.dim(),
            inherited_dim,
            new_generators,
        });
        if generators.len() >= ell {
            break;
        }
    }
    let degrees: Vec<u32> = generators.iter().map(|(d, _)| *d).collect();
    let verdict = if generators.len() < ell {
        FreenessVerdict::Inconclusive {
            max_degree,
            generator_degrees: degrees,
        }
    } else if generators.len() > ell {
        FreenessVerdict::NotFree {
            generator_degrees: degrees,
            reason: format!("more than {ell} minimal generators"),
        }
    } else {
        let basis: Vec<Derivation> = generators.into_iter().map(|(_, g)| g).collect();
        let saito = saito_check(a, &basis).expect("generators are logarithmic");
        if saito.is_basis {
            FreenessVerdict::Free {
                exponents: degrees,
                basis,
                c: saito.c,
            }
        } else {
            FreenessVerdict::NotFree {
                generator_degrees: degrees,
                reason: "first minimal generators fail Saito's criterion".into(),
            }
        }
    };
    FreenessReport { steps, verdict }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_polynomial, rat};
    use crate::logderiv::tests::der;

    fn boolean(ell: usize) -> Arrangement {
        let rows: Vec<Vec<i64>> = (0..ell).map(|i| (0..ell).map(|j| (i == j) as i64).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        Arrangement::from_rows(&refs).unwrap()
    }

    fn coordinate_fields(ell: usize) -> Vec<Derivation> {
        (0..ell)
            .map(|i| {
                let mut c = vec![Polynomial::zero(ell); ell];
                c[i] = Polynomial::var(ell, i);
                Derivation::new(c).unwrap()
            })
            .collect()
    }

    #[test]
    fn boolean_coordinate_basis() {
        for ell in 1..=5 {
            let s = saito_check(&boolean(ell), &coordinate_fields(ell)).unwrap();
            assert!(s.is_basis);
            assert_eq!(s.c, rat(1));
        }
    }

    #[test]
    fn repeated_member_is_not_a_basis() {
        let e = Derivation::euler(2);
        let s = saito_check(&boolean(2), &[e.clone(), e]).unwrap();
        assert!(!s.is_basis);
        assert!(s.determinant.is_zero());
        assert_eq!(s.c, rat(0));
    }

    #[test]
    fn saito_propagates_membership_failure() {
        let bad = der(&["x2", "0"]);
        let r = saito_check(&boolean(2), &[Derivation::euler(2), bad]);
        assert_eq!(r, Err(Error::NotLogarithmic { index: 0 }));
    }

    #[test]
    fn shift_keeps_scalar() {
        let a = boolean(2);
        let family = vec![Derivation::euler(2), der(&["0", "x2"])];
        let before = saito_check(&a, &family).unwrap();
        let p = parse_polynomial("x1", 2).unwrap();
        let shifted = basis_shift(&family, 1, &p).unwrap();
        assert_eq!(shifted[1], der(&["x1^2", "x1*x2 + x2"]));
        let after = saito_check(&a, &shifted).unwrap();
        assert_eq!(before.c, after.c);
        assert!(after.is_basis);
        let zero_shift = basis_shift(&family, 1, &Polynomial::zero(2)).unwrap();
        assert_eq!(zero_shift, family);
    }

    #[test]
    fn shift_rejects_euler_slot() {
        let family = vec![Derivation::euler(2), der(&["0", "x2"])];
        let p = Polynomial::one(2);
        assert_eq!(basis_shift(&family, 0, &p), Err(Error::ShiftEuler));
        assert_eq!(basis_shift(&family[1..], 1, &p), Err(Error::MissingEuler));
    }

    #[test]
    fn pencil_is_free_with_exponents_one_one() {
        let a = Arrangement::from_rows(&[&[1, 0], &[0, 1], &[1, -1]]).unwrap();
        let r = free_check(&a, 4);
        match r.verdict {
            FreenessVerdict::Free { exponents, .. } => assert_eq!(exponents, vec![1, 2]),
            other => panic!("unexpected verdict {other:?}"),
        }
    }

    #[test]
    fn generic_arrangement_is_not_free() {
        // four generic planes in 3-space are not free
        let a = Arrangement::from_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let r = free_check(&a, 6);
        assert!(matches!(r.verdict, FreenessVerdict::NotFree { .. }), "{:?}", r.verdict);
    }

    #[test]
    fn low_cap_is_inconclusive() {
        let a = Arrangement::from_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let r = free_check(&a, 1);
        assert!(matches!(r.verdict, FreenessVerdict::Inconclusive { max_degree: 1, .. }));
    }
}
