#![allow(dead_code)]

use logderiv::arrangement::{Arrangement, LinearForm};
use logderiv::exact::{rat, Monomial, Polynomial, Rational};
use logderiv::logderiv::Derivation;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn from_rows(rows: &[Vec<i64>]) -> Arrangement {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Arrangement::from_rows(&refs).unwrap()
}

pub fn boolean(ell: usize) -> Arrangement {
    from_rows(&(0..ell).map(|i| (0..ell).map(|j| (i == j) as i64).collect()).collect::<Vec<_>>())
}

/// xyz(x-y)(x+y)(x-z)(x+z)(y-z)(y+z)
pub fn b3() -> Arrangement {
    from_rows(&[
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![0, 0, 1],
        vec![1, -1, 0],
        vec![1, 1, 0],
        vec![1, 0, -1],
        vec![1, 0, 1],
        vec![0, 1, -1],
        vec![0, 1, 1],
    ])
}

pub fn pencil() -> Arrangement {
    from_rows(&[vec![1, 0], vec![0, 1], vec![1, -1]])
}

fn random_row(rng: &mut ChaCha8Rng, ell: usize, height: i64) -> Vec<i64> {
    (0..ell).map(|_| rng.gen_range(-height..=height)).collect()
}

/// Random arrangement whose first `ell` forms are the coordinates.
pub fn random_canonical(rng: &mut ChaCha8Rng, max_ell: usize, max_n: usize, height: i64) -> Arrangement {
    loop {
        let ell = rng.gen_range(2..=max_ell);
        let n = rng.gen_range(ell + 1..=max_n.max(ell + 1));
        let mut rows: Vec<Vec<i64>> = (0..ell).map(|i| (0..ell).map(|j| (i == j) as i64).collect()).collect();
        for _ in ell..n {
            rows.push(random_row(rng, ell, height));
        }
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        if let Ok(a) = Arrangement::from_rows(&refs) {
            return a;
        }
    }
}

/// Random essential arrangement, usually not canonical.
pub fn random_essential(rng: &mut ChaCha8Rng, max_ell: usize, max_n: usize, height: i64) -> Arrangement {
    loop {
        let ell = rng.gen_range(2..=max_ell);
        let n = rng.gen_range(ell..=max_n);
        let rows: Vec<Vec<i64>> = (0..n).map(|_| random_row(rng, ell, height)).collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        if let Ok(a) = Arrangement::from_rows(&refs) {
            return a;
        }
    }
}

/// Random polynomial in `nvars` variables of degree at most `max_degree`.
pub fn random_polynomial(rng: &mut ChaCha8Rng, nvars: usize, max_degree: u32) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for d in 0..=max_degree {
        for m in Monomial::all_of_degree(nvars, d) {
            if rng.gen_bool(0.4) {
                p.add_term(m, rat(rng.gen_range(-4..=4)));
            }
        }
    }
    p
}

/// Random point on the hyperplane of `form`, with small integer free coordinates.
pub fn random_point_on(rng: &mut ChaCha8Rng, form: &LinearForm) -> Vec<Rational> {
    let a = form.coeffs();
    let pivot = a.iter().position(|c| *c != rat(0)).unwrap();
    let mut x: Vec<Rational> = (0..a.len()).map(|_| rat(rng.gen_range(-9..=9))).collect();
    let rest: Rational = (0..a.len()).filter(|&r| r != pivot).map(|r| &a[r] * &x[r]).sum();
    x[pivot] = -rest / &a[pivot];
    x
}

/// A basis of a free fixture whose first member is the Euler derivation.
pub fn euler_first(basis: &[Derivation]) -> Vec<Derivation> {
    let ell = basis[0].ell();
    let mut out = basis.to_vec();
    let e = Derivation::euler(ell);
    let c = &basis[0].coords()[0].coeff(&Monomial::var(ell, 0));
    assert_eq!(basis[0].scale(&(Rational::from_integer(1.into()) / c)), e, "degree-1 generator is Euler");
    out[0] = e;
    out
}
