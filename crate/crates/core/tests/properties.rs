mod common;

use itertools::Itertools;
use logderiv::arrangement::{to_canonical, Arrangement};
use logderiv::constraints::{
    associated_field, contact_table, exterior_constraints, interior_constraints, monomial_decomposition,
    search_critical_points, transport_derivation,
};
use logderiv::exact::{det_poly_matrix, parse_polynomial, rat, Monomial, Polynomial, Rational, RationalMatrix};
use logderiv::logderiv::{graded_component, k_vector, saito_check, Derivation};
use logderiv::syzygy::split_wrt_hyperplane;
use proptest::prelude::*;

fn poly_strategy(nvars: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), -5i64..=5), 0..6).prop_map(move |terms| {
        Polynomial::from_terms(nvars, terms.into_iter().map(|(e, c)| (Monomial::new(e), rat(c))))
    })
}

fn arrangement_strategy() -> impl Strategy<Value = Arrangement> {
    (2usize..=3)
        .prop_flat_map(|ell| prop::collection::vec(prop::collection::vec(-3i64..=3, ell), ell..=5))
        .prop_filter_map("not an essential arrangement", |rows| {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            Arrangement::from_rows(&refs).ok()
        })
}

fn canonical_strategy() -> impl Strategy<Value = Arrangement> {
    (2usize..=3)
        .prop_flat_map(|ell| (Just(ell), prop::collection::vec(prop::collection::vec(-3i64..=3, ell), 1..=3)))
        .prop_filter_map("not simple", |(ell, extra)| {
            let mut rows: Vec<Vec<i64>> = (0..ell).map(|i| (0..ell).map(|j| (i == j) as i64).collect()).collect();
            rows.extend(extra);
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            Arrangement::from_rows(&refs).ok()
        })
}

/// An integer combination of the degree-2 basis of `D(A)`.
fn member(a: &Arrangement, weights: &[i64]) -> Derivation {
    let basis = graded_component(a, 2).members;
    basis
        .iter()
        .zip(weights.iter().cycle())
        .fold(Derivation::zero(a.ell()), |acc, (b, &w)| acc.add(&b.scale(&rat(w))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomial_ring_laws(p in poly_strategy(3), q in poly_strategy(3), r in poly_strategy(3)) {
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn display_parses_back(p in poly_strategy(3)) {
        prop_assert_eq!(parse_polynomial(&p.to_string(), 3).unwrap(), p);
    }

    #[test]
    fn division_reconstructs(p in poly_strategy(2), q in poly_strategy(2)) {
        prop_assume!(!q.is_zero());
        let (quot, rem) = p.div_rem(&q);
        prop_assert_eq!(&(&quot * &q) + &rem, p.clone());
        prop_assert_eq!((&p * &q).div_exact(&q), Some(p));
    }

    #[test]
    fn reduction_mod_linear_form(p in poly_strategy(3), form in prop::collection::vec(-3i64..=3, 3)) {
        prop_assume!(form.iter().any(|&c| c != 0));
        let coeffs: Vec<Rational> = form.iter().map(|&c| rat(c)).collect();
        let r = p.reduce_mod_linear(&coeffs, None).unwrap();
        let alpha = Polynomial::linear(&coeffs);
        prop_assert!((&p - &r).div_exact(&alpha).is_some());
        let pivot = logderiv::exact::default_pivot(&coeffs).unwrap();
        prop_assert!(r.terms().all(|(m, _)| m.exponent(pivot) == 0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn split_identity(a in arrangement_strategy(), weights in prop::collection::vec(-3i64..=3, 1..4)) {
        let theta = member(&a, &weights);
        for i in 0..a.len() {
            let (tangential, k) = split_wrt_hyperplane(&a, &theta, i).unwrap();
            prop_assert!(tangential.apply_linear(a.form(i)).is_zero());
            prop_assert_eq!(tangential.add(&Derivation::euler(a.ell()).mul_poly(&k)), theta.clone());
        }
    }

    #[test]
    fn canonical_form_preserves_matroid_and_dims(a in arrangement_strategy()) {
        let (c, change) = to_canonical(&a).unwrap();
        prop_assert!(c.is_canonical());
        let (again, _) = to_canonical(&c).unwrap();
        prop_assert_eq!(&again, &c);
        for size in 1..=a.len().min(4) {
            for subset in (0..a.len()).combinations(size) {
                let image: Vec<usize> = subset
                    .iter()
                    .map(|&old| change.permutation.iter().position(|&p| p == old).unwrap())
                    .collect();
                prop_assert_eq!(a.subset_rank(&subset), c.subset_rank(&image));
            }
        }
        for d in 1..=2 {
            prop_assert_eq!(graded_component(&a, d).dim(), graded_component(&c, d).dim());
        }
    }

    #[test]
    fn constraints_vanish_on_members(a in canonical_strategy(), weights in prop::collection::vec(-3i64..=3, 1..4)) {
        let theta = member(&a, &weights);
        prop_assert!(k_vector(&a, &theta).is_ok());
        let decomp = monomial_decomposition(&theta);
        prop_assert_eq!(decomp.reassemble(), theta.clone());
        let table = contact_table(&a, &decomp).unwrap();
        let mut rows = exterior_constraints(&a, decomp.len());
        for i in 0..a.len() {
            rows.extend(interior_constraints(&a, &theta, i).unwrap());
        }
        for row in &rows {
            prop_assert_eq!(row.apply(&table), rat(0), "{}", row);
        }
    }

    #[test]
    fn identity_transport_round_trip(a in canonical_strategy(), weights in prop::collection::vec(-3i64..=3, 1..4)) {
        let theta = member(&a, &weights);
        prop_assume!(!theta.is_zero());
        let id: Vec<usize> = (0..a.len()).collect();
        let t = transport_derivation(&a, &a, &id, &theta).unwrap();
        prop_assert_eq!(t.witness, Some(theta));
        prop_assert_eq!(t.satisfies_transported, Some(true));
    }
}

fn free_fixtures() -> Vec<(Arrangement, Vec<Derivation>)> {
    [common::boolean(3), common::b3(), common::pencil()]
        .into_iter()
        .map(|a| {
            let mut basis = Vec::new();
            for d in 1..=5 {
                let g = graded_component(&a, d).members;
                for m in g {
                    let mut trial = basis.clone();
                    trial.push(m);
                    if trial.len() <= a.ell() && independent(&trial) {
                        basis = trial;
                    }
                }
            }
            assert!(saito_check(&a, &basis).unwrap().is_basis);
            (a, basis)
        })
        .collect()
}

fn independent(thetas: &[Derivation]) -> bool {
    let ell = thetas[0].ell();
    if thetas.len() < ell {
        // Compare coefficient vectors at a generic point.
        let point: Vec<Rational> = (0..ell).map(|i| rat(3 + 7 * i as i64)).collect();
        let rows: Vec<Vec<Rational>> = thetas
            .iter()
            .map(|t| t.coords().iter().map(|p| p.eval(&point).unwrap()).collect())
            .collect();
        return RationalMatrix::from_rows(rows, ell).rank() == thetas.len();
    }
    let m: Vec<Vec<Polynomial>> = thetas.iter().map(|t| t.coords().to_vec()).collect();
    !det_poly_matrix(&m).unwrap().is_zero()
}

#[test]
fn free_basis_fields_have_no_complement_zeros() {
    for (a, basis) in free_fixtures() {
        for indices in (0..a.len()).combinations(a.ell()) {
            if a.subset_rank(&indices) < a.ell() {
                continue;
            }
            for theta in &basis {
                let field = associated_field(&a, theta, &indices).unwrap();
                let found = search_critical_points(&a, &field, 5);
                assert!(found.points.is_empty(), "{indices:?}: {:?}", found.points);
            }
        }
    }
}

#[test]
fn associated_field_determinant() {
    for (a, basis) in free_fixtures() {
        let q = a.defining_polynomial();
        let c = saito_check(&a, &basis).unwrap().c;
        for indices in (0..a.len()).combinations(a.ell()) {
            if a.subset_rank(&indices) < a.ell() {
                continue;
            }
            let rows: Vec<Vec<Polynomial>> = basis
                .iter()
                .map(|t| associated_field(&a, t, &indices).unwrap().q)
                .collect();
            let lhs = det_poly_matrix(&rows).unwrap();
            let sub: Vec<Vec<Rational>> = indices.iter().map(|&i| a.form(i).coeffs().to_vec()).collect();
            let det_sub = RationalMatrix::from_rows(sub, a.ell()).determinant().unwrap();
            let product = indices
                .iter()
                .fold(Polynomial::one(a.ell()), |acc, &i| &acc * &a.form(i).to_polynomial());
            let rhs = q.scale(&(det_sub * &c)).div_exact(&product).unwrap();
            assert_eq!(lhs, rhs, "{indices:?}");
        }
    }
}
