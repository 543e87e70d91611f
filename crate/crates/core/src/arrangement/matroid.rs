use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Zero};

use super::{coefficient_matrix, Arrangement, LinearForm};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// A flat of the intersection lattice, stored as its closed index set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flat {
    pub rank: usize,
    pub hyperplane_indices: Vec<usize>,
}

/// A minimal linear dependency `sum_j b_j alpha_j = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub indices: Vec<usize>,
    /// Nonzero, with the first one equal to 1.
    pub coefficients: Vec<Rational>,
}

impl Circuit {
    /// Evaluates `sum_j b_j alpha_j` as a linear form.
    pub fn combination(&self, a: &Arrangement) -> LinearForm {
        let mut acc = vec![Rational::zero(); a.ell()];
        for (&j, b) in self.indices.iter().zip(&self.coefficients) {
            for (x, c) in acc.iter_mut().zip(a.form(j).coeffs()) {
                *x += b * c;
            }
        }
        LinearForm::new(acc)
    }
}

fn closure(a: &Arrangement, set: &[usize]) -> Vec<usize> {
    let r = a.subset_rank(set);
    (0..a.len())
        .filter(|i| {
            if set.contains(i) {
                return true;
            }
            let mut s = set.to_vec();
            s.push(*i);
            a.subset_rank(&s) == r
        })
        .collect()
}

/// All flats of rank `1..=ell`, sorted by rank and then by index set.
pub fn intersection_lattice(a: &Arrangement) -> Vec<Flat> {
    let mut all = BTreeSet::new();
    let mut layer: BTreeSet<Vec<usize>> = (0..a.len()).map(|i| closure(a, &[i])).collect();
    for rank in 1..=a.ell() {
        for f in &layer {
            all.insert(Flat {
                rank,
                hyperplane_indices: f.clone(),
            });
        }
        if rank == a.ell() {
            break;
        }
        let mut next = BTreeSet::new();
        for f in &layer {
            for i in 0..a.len() {
                if !f.contains(&i) {
                    let mut s = f.clone();
                    s.push(i);
                    next.insert(closure(a, &s));
                }
            }
        }
        layer = next;
    }
    all.into_iter().collect()
}

/// All circuits of the matroid of the forms. In rank `ell` every circuit has
/// at most `ell + 1` elements.
pub fn circuits(a: &Arrangement) -> Vec<Circuit> {
    let mut out = Vec::new();
    for size in 2..=(a.ell() + 1).min(a.len()) {
        for subset in (0..a.len()).combinations(size) {
            let forms: Vec<LinearForm> = subset.iter().map(|&i| a.form(i).clone()).collect();
            // dependencies among the forms = kernel of the transposed coefficient matrix
            let kernel = coefficient_matrix(a.ell(), &forms).transpose().kernel_basis();
            if kernel.len() != 1 || kernel[0].iter().any(Zero::is_zero) {
                continue;
            }
            let lead = kernel[0][0].clone();
            out.push(Circuit {
                indices: subset,
                coefficients: kernel[0].iter().map(|b| b / &lead).collect(),
            });
        }
    }
    debug_assert!(out.iter().all(|c| c.coefficients[0].is_one()));
    out
}

/// Fundamental circuits of the lexicographically first basis: one per
/// form outside it, `n - ell` in all. Their combinations span every linear
/// dependency among the forms.
pub fn fundamental_circuits(a: &Arrangement) -> Vec<Circuit> {
    coefficient_matrix(a.ell(), a.forms())
        .transpose()
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let indices: Vec<usize> = (0..v.len()).filter(|&j| !v[j].is_zero()).collect();
            let lead = v[indices[0]].clone();
            let coefficients = indices.iter().map(|&j| &v[j] / &lead).collect();
            Circuit { indices, coefficients }
        })
        .collect()
}

/// Checks that `perm` (form `i` of `a` goes to form `perm[i]` of `b`)
/// preserves the rank of every index subset of size at most `ell`.
pub fn verify_lattice_bijection(a: &Arrangement, b: &Arrangement, perm: &[usize]) -> Result<bool> {
    if a.ell() != b.ell() || a.len() != b.len() {
        return Err(Error::SizeMismatch {
            left: format!("l={} n={}", a.ell(), a.len()),
            right: format!("l={} n={}", b.ell(), b.len()),
        });
    }
    if perm.len() != a.len() {
        return Err(Error::SizeMismatch {
            left: format!("n={}", a.len()),
            right: format!("permutation of length {}", perm.len()),
        });
    }
    let image: BTreeSet<usize> = perm.iter().copied().collect();
    if image.len() != perm.len() || perm.iter().any(|&p| p >= b.len()) {
        return Ok(false);
    }
    for size in 1..=a.ell().min(a.len()) {
        for subset in (0..a.len()).combinations(size) {
            let mapped: Vec<usize> = subset.iter().map(|&i| perm[i]).collect();
            if a.subset_rank(&subset) != b.subset_rank(&mapped) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::tests::X2_ROWS;
    use crate::exact::{rat, rat2, RationalMatrix};

    fn count_by_rank(flats: &[Flat], ell: usize) -> Vec<usize> {
        (1..=ell).map(|r| flats.iter().filter(|f| f.rank == r).count()).collect()
    }

    #[test]
    fn boolean_lattice() {
        let a = Arrangement::from_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(count_by_rank(&intersection_lattice(&a), 3), vec![3, 3, 1]);
        assert!(circuits(&a).is_empty());
    }

    #[test]
    fn pencil_of_three_lines() {
        let a = Arrangement::from_rows(&[&[1, 0], &[0, 1], &[1, -1]]).unwrap();
        let l = intersection_lattice(&a);
        assert_eq!(count_by_rank(&l, 2), vec![3, 1]);
        assert_eq!(l.last().unwrap().hyperplane_indices, vec![0, 1, 2]);
        let c = circuits(&a);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].indices, vec![0, 1, 2]);
        assert_eq!(c[0].coefficients, vec![rat(1), rat(-1), rat(-1)]);
    }

    #[test]
    fn x2_lattice_fingerprint() {
        let a = Arrangement::from_rows(X2_ROWS).unwrap();
        let l = intersection_lattice(&a);
        // every rank-2 flat is the closure of a pair; the pairs partition
        let rank2: Vec<&Flat> = l.iter().filter(|f| f.rank == 2).collect();
        let pairs: usize = rank2
            .iter()
            .map(|f| f.hyperplane_indices.len() * (f.hyperplane_indices.len() - 1) / 2)
            .sum();
        assert_eq!(pairs, 36);
        assert_eq!(count_by_rank(&l, 3), vec![9, 24, 1]);
        assert_eq!(rank2.iter().filter(|f| f.hyperplane_indices.len() == 3).count(), 6);
    }

    #[test]
    fn x2_contains_expected_circuit() {
        let a = Arrangement::from_rows(X2_ROWS).unwrap();
        let cs = circuits(&a);
        let c = cs.iter().find(|c| c.indices == vec![0, 3, 4]).unwrap();
        assert_eq!(c.coefficients, vec![rat(1), rat2(-1, 2), rat2(-1, 2)]);
        for c in &cs {
            assert!(c.combination(&a).is_zero());
        }
    }

    #[test]
    fn fundamental_circuits_span_all_dependencies() {
        let a = Arrangement::from_rows(X2_ROWS).unwrap();
        let fund = fundamental_circuits(&a);
        assert_eq!(fund.len(), 6);
        let dense = |c: &Circuit| {
            let mut v = vec![Rational::zero(); a.len()];
            for (&j, b) in c.indices.iter().zip(&c.coefficients) {
                v[j] = b.clone();
            }
            v
        };
        let all = circuits(&a);
        assert!(fund.iter().all(|c| all.contains(c)));
        let mut rows: Vec<Vec<Rational>> = fund.iter().map(dense).collect();
        rows.extend(all.iter().map(dense));
        assert_eq!(RationalMatrix::from_rows(rows, a.len()).rank(), 6);
    }

    #[test]
    fn bijection_checks() {
        let a = Arrangement::from_rows(X2_ROWS).unwrap();
        let id: Vec<usize> = (0..9).collect();
        assert!(verify_lattice_bijection(&a, &a, &id).unwrap());
        let doubled: Vec<Vec<i64>> = X2_ROWS.iter().map(|r| r.iter().map(|x| 2 * x).collect()).collect();
        let refs: Vec<&[i64]> = doubled.iter().map(Vec::as_slice).collect();
        let b = Arrangement::from_rows(&refs).unwrap();
        assert!(verify_lattice_bijection(&a, &b, &id).unwrap());

        // generic four planes vs four planes with a dependent triple
        let generic = Arrangement::from_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let special = Arrangement::from_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]).unwrap();
        for perm in (0..4).permutations(4) {
            assert!(!verify_lattice_bijection(&generic, &special, &perm).unwrap());
        }
        let boolean = Arrangement::from_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let small = Arrangement::from_rows(&[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert!(verify_lattice_bijection(&boolean, &small, &[0, 1, 2]).is_err());
        assert!(!verify_lattice_bijection(&a, &a, &[0, 0, 2, 3, 4, 5, 6, 7, 8]).unwrap());
    }
}
