//! Linear relations among contact values `c(k, j) = alpha_j(v_k)`, where
//! `theta = sum_k m_k v_k` splits a derivation by monomial.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arrangement::{circuits, fundamental_circuits, verify_lattice_bijection, Arrangement, Circuit};
use crate::error::{Error, Result};
use crate::exact::{default_pivot, Monomial, Polynomial, Rational, RationalMatrix};
use crate::logderiv::{k_vector, Derivation};

/// `theta = sum_k m_k v_k` with distinct monomials in descending graded-lex
/// order and nonzero coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialDecomposition {
    pub ell: usize,
    pub entries: Vec<(Monomial, Vec<Rational>)>,
}

impl MonomialDecomposition {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.entries.iter().map(|(m, _)| m.clone()).collect()
    }

    pub fn reassemble(&self) -> Derivation {
        let mut coords = vec![Polynomial::zero(self.ell); self.ell];
        for (m, v) in &self.entries {
            for (p, c) in coords.iter_mut().zip(v) {
                p.add_term(m.clone(), c.clone());
            }
        }
        Derivation::new(coords).expect("coordinates share the ambient dimension")
    }
}

pub fn monomial_decomposition(theta: &Derivation) -> MonomialDecomposition {
    let mut map: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
    for (r, p) in theta.coords().iter().enumerate() {
        for (m, c) in p.terms() {
            map.entry(m.clone())
                .or_insert_with(|| vec![Rational::zero(); theta.ell()])[r] = c.clone();
        }
    }
    MonomialDecomposition {
        ell: theta.ell(),
        entries: map.into_iter().rev().collect(),
    }
}

/// Decomposition over a prescribed monomial list; vectors may be zero.
fn decomposition_over(theta: &Derivation, monomials: &[Monomial]) -> MonomialDecomposition {
    MonomialDecomposition {
        ell: theta.ell(),
        entries: monomials
            .iter()
            .map(|m| (m.clone(), theta.coords().iter().map(|p| p.coeff(m)).collect()))
            .collect(),
    }
}

/// `values[k][j] = alpha_j(v_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactTable {
    pub values: Vec<Vec<Rational>>,
}

impl ContactTable {
    pub fn get(&self, k: usize, j: usize) -> &Rational {
        &self.values[k][j]
    }
}

pub fn contact_table(a: &Arrangement, decomp: &MonomialDecomposition) -> Result<ContactTable> {
    if decomp.ell != a.ell() {
        return Err(Error::DimensionMismatch {
            expected: a.ell(),
            found: decomp.ell,
        });
    }
    let values = decomp
        .entries
        .iter()
        .map(|(_, v)| a.forms().iter().map(|f| f.eval(v)).collect())
        .collect();
    Ok(ContactTable { values })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    /// From divisibility by form `hyperplane`.
    Interior { hyperplane: usize },
    /// From a dependency among the forms in `circuit`, at monomial `monomial`.
    Exterior { circuit: Vec<usize>, monomial: usize },
    /// From a zero of the associated field at a complement point.
    Hidden { point: Vec<Rational>, basis: Vec<usize> },
}

/// A linear relation `sum b * c(k, j) = 0` over table cells `(k, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintRow {
    pub kind: ConstraintKind,
    pub coefficients: BTreeMap<(usize, usize), Rational>,
}

impl ConstraintRow {
    pub fn apply(&self, table: &ContactTable) -> Rational {
        self.coefficients
            .iter()
            .map(|(&(k, j), b)| b * table.get(k, j))
            .sum()
    }

    /// Dense vector over cells, column `k * n + j`.
    pub fn to_dense(&self, n: usize, monomials: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n * monomials];
        for (&(k, j), b) in &self.coefficients {
            v[k * n + j] = b.clone();
        }
        v
    }

    fn remap_forms(&self, perm: &[usize]) -> ConstraintRow {
        ConstraintRow {
            kind: self.kind.clone(),
            coefficients: self
                .coefficients
                .iter()
                .map(|(&(k, j), b)| ((k, perm[j]), b.clone()))
                .collect(),
        }
    }
}

/// Cells print 1-based as `c(k,j)`: monomial `k`, form `j`.
impl fmt::Display for ConstraintRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0 = 0");
        }
        for (idx, (&(k, j), b)) in self.coefficients.iter().enumerate() {
            let sign = if b.is_negative() { "-" } else { "+" };
            match (idx, b.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            let abs = b.abs();
            if abs.is_one() {
                write!(f, "c({},{})", k + 1, j + 1)?;
            } else {
                write!(f, "{abs}*c({},{})", k + 1, j + 1)?;
            }
        }
        write!(f, " = 0")
    }
}

/// Rows forced by `alpha_i | theta(alpha_i)`: reduce each monomial modulo
/// `alpha_i` and read off one row per surviving reduced monomial.
/// Monomials that reduce to zero contribute nothing.
pub fn interior_constraints(a: &Arrangement, theta: &Derivation, i: usize) -> Result<Vec<ConstraintRow>> {
    if i >= a.len() {
        return Err(Error::IndexOutOfRange {
            index: i + 1,
            lo: 1,
            hi: a.len(),
        });
    }
    k_vector(a, theta)?;
    let decomp = monomial_decomposition(theta);
    Ok(interior_rows(a, &decomp, i))
}

fn interior_rows(a: &Arrangement, decomp: &MonomialDecomposition, i: usize) -> Vec<ConstraintRow> {
    let form = a.form(i).coeffs();
    let pivot = default_pivot(form);
    let mut groups: BTreeMap<Monomial, BTreeMap<(usize, usize), Rational>> = BTreeMap::new();
    for (k, (m, _)) in decomp.entries.iter().enumerate() {
        let reduced = Polynomial::term(m.clone(), Rational::one())
            .reduce_mod_linear(form, pivot)
            .expect("forms are nonzero");
        for (mu, c) in reduced.terms() {
            groups.entry(mu.clone()).or_default().insert((k, i), c.clone());
        }
    }
    groups
        .into_values()
        .rev()
        .map(|coefficients| ConstraintRow {
            kind: ConstraintKind::Interior { hyperplane: i },
            coefficients,
        })
        .collect()
}

/// One row per circuit and per monomial index `k < monomials`.
pub fn exterior_constraints(a: &Arrangement, monomials: usize) -> Vec<ConstraintRow> {
    circuit_rows(&circuits(a), monomials)
}

fn circuit_rows(cs: &[Circuit], monomials: usize) -> Vec<ConstraintRow> {
    cs.iter()
        .flat_map(|c| {
            (0..monomials).map(move |k| ConstraintRow {
                kind: ConstraintKind::Exterior {
                    circuit: c.indices.clone(),
                    monomial: k,
                },
                coefficients: c
                    .indices
                    .iter()
                    .zip(&c.coefficients)
                    .map(|(&j, b)| ((k, j), b.clone()))
                    .collect(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSpace {
    pub monomials: usize,
    pub forms: usize,
    pub generators: Vec<ConstraintRow>,
    /// Reduced row echelon form of the generators over cells `k * n + j`.
    pub echelon: Vec<Vec<Rational>>,
}

impl ConstraintSpace {
    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.monomials * self.forms
    }
}

/// Interior rows for every form together with exterior rows. The exterior
/// part uses fundamental circuits only, which span the same rows as all
/// circuits.
pub fn constraint_space(a: &Arrangement, theta: &Derivation) -> Result<ConstraintSpace> {
    k_vector(a, theta)?;
    let decomp = monomial_decomposition(theta);
    let m = decomp.len();
    let mut generators: Vec<ConstraintRow> = (0..a.len()).flat_map(|i| interior_rows(a, &decomp, i)).collect();
    generators.extend(circuit_rows(&fundamental_circuits(a), m));
    let echelon = echelon_of(&generators, a.len(), m);
    Ok(ConstraintSpace {
        monomials: m,
        forms: a.len(),
        generators,
        echelon,
    })
}

fn echelon_of(rows: &[ConstraintRow], n: usize, m: usize) -> Vec<Vec<Rational>> {
    let dense = rows.iter().map(|r| r.to_dense(n, m)).collect();
    RationalMatrix::from_rows(dense, n * m).rref().0
}

/// `q_t = theta(alpha_{i_t}) / alpha_{i_t}` on an independent choice of forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedField {
    pub basis_indices: Vec<usize>,
    pub q: Vec<Polynomial>,
}

pub fn associated_field(a: &Arrangement, theta: &Derivation, basis_indices: &[usize]) -> Result<AssociatedField> {
    if basis_indices.len() != a.ell() {
        return Err(Error::DimensionMismatch {
            expected: a.ell(),
            found: basis_indices.len(),
        });
    }
    if let Some(&bad) = basis_indices.iter().find(|&&i| i >= a.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad + 1,
            lo: 1,
            hi: a.len(),
        });
    }
    if a.subset_rank(basis_indices) < a.ell() {
        return Err(Error::DependentBasis);
    }
    let k = k_vector(a, theta)?;
    Ok(AssociatedField {
        basis_indices: basis_indices.to_vec(),
        q: basis_indices.iter().map(|&i| k.entries[i].clone()).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CriticalCheck {
    pub is_zero: bool,
    pub in_complement: bool,
}

impl CriticalCheck {
    pub fn is_critical(&self) -> bool {
        self.is_zero && self.in_complement
    }
}

pub fn verify_critical_point(a: &Arrangement, field: &AssociatedField, point: &[Rational]) -> Result<CriticalCheck> {
    let in_complement = a.point_in_complement(point)?;
    let mut is_zero = true;
    for q in &field.q {
        if !q.eval(point)?.is_zero() {
            is_zero = false;
            break;
        }
    }
    Ok(CriticalCheck { is_zero, in_complement })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalSearch {
    pub height: u32,
    /// Complement zeros found, sorted.
    pub points: Vec<Vec<Rational>>,
    /// True when the field is homogeneous and one primitive integer
    /// representative per ray was scanned; false for the affine grid.
    pub projective: bool,
}

/// Bounded scan for complement zeros of the field. A homogeneous field is
/// scanned over primitive integer vectors with entries in `[-H, H]` and
/// first nonzero entry positive (one per ray); otherwise over the grid of
/// rationals `p/q` with `|p| <= H`, `1 <= q <= H`. Finding nothing proves
/// nothing.
pub fn search_critical_points(a: &Arrangement, field: &AssociatedField, height: u32) -> CriticalSearch {
    let h = height as i64;
    let ell = a.ell();
    let projective = field.q.iter().all(Polynomial::is_homogeneous);
    let values: Vec<Rational> = if projective {
        (-h..=h).map(|p| Rational::from_integer(p.into())).collect()
    } else {
        let mut v: Vec<Rational> = (-h..=h)
            .flat_map(|p| (1..=h.max(1)).map(move |q| Rational::new(p.into(), q.into())))
            .collect();
        v.sort();
        v.dedup();
        v
    };
    let total = values.len().pow(ell as u32);
    let points: Vec<Vec<Rational>> = (0..total)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut point = Vec::with_capacity(ell);
            for _ in 0..ell {
                point.push(values[idx % values.len()].clone());
                idx /= values.len();
            }
            point.reverse();
            if projective && !is_ray_representative(&point) {
                return None;
            }
            let check = verify_critical_point(a, field, &point).ok()?;
            check.is_critical().then_some(point)
        })
        .collect();
    let mut points = points;
    points.sort();
    CriticalSearch {
        height,
        points,
        projective,
    }
}

fn is_ray_representative(p: &[Rational]) -> bool {
    use num_integer::Integer;
    match p.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_positive() => {}
        _ => return false,
    }
    p.iter()
        .fold(num_bigint::BigInt::zero(), |g, x| g.gcd(x.numer()))
        .is_one()
}

/// The row `sum_t sum_k m_k(c) * c(k, i_t) = 0` induced by a verified
/// complement zero `c` of the associated field.
pub fn hidden_constraint(
    a: &Arrangement,
    decomp: &MonomialDecomposition,
    field: &AssociatedField,
    point: &[Rational],
) -> Result<ConstraintRow> {
    if !verify_critical_point(a, field, point)?.is_critical() {
        return Err(Error::UnverifiedCriticalPoint);
    }
    let mut coefficients = BTreeMap::new();
    for (k, (m, _)) in decomp.entries.iter().enumerate() {
        let value = Polynomial::term(m.clone(), Rational::one()).eval(point)?;
        if value.is_zero() {
            continue;
        }
        for &i in &field.basis_indices {
            coefficients.insert((k, i), value.clone());
        }
    }
    Ok(ConstraintRow {
        kind: ConstraintKind::Hidden {
            point: point.to_vec(),
            basis: field.basis_indices.clone(),
        },
        coefficients,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportResult {
    /// Number of `(coordinate, monomial)` cells in the support of `theta`.
    pub unknowns: usize,
    pub solution_dim: usize,
    pub witness: Option<Derivation>,
    /// Whether the witness satisfies every row of the source constraint
    /// space with form `j` relabelled to `perm[j]`.
    pub satisfies_transported: Option<bool>,
}

/// Looks for logarithmic derivations of `b` supported on the same
/// `(coordinate, monomial)` cells as `theta`. The witness is the solution
/// whose free cells carry `theta`'s coefficients; for `b = a` under the
/// identity it is `theta` itself. Reports data only.
pub fn transport_derivation(a: &Arrangement, b: &Arrangement, perm: &[usize], theta: &Derivation) -> Result<TransportResult> {
    if !verify_lattice_bijection(a, b, perm)? {
        return Err(Error::LatticeMismatch);
    }
    k_vector(a, theta)?;
    let ell = a.ell();
    let decomp = monomial_decomposition(theta);
    let monomials = decomp.monomials();
    let m = monomials.len();
    let cells: Vec<usize> = (0..ell)
        .flat_map(|r| (0..m).map(move |k| (r, k)))
        .filter(|&(r, k)| !decomp.entries[k].1[r].is_zero())
        .map(|(r, k)| r * m + k)
        .collect();
    let full = crate::logderiv::membership_system(b, &monomials);
    let restricted: Vec<Vec<Rational>> = (0..full.rows())
        .map(|row| cells.iter().map(|&c| full.get(row, c).clone()).collect())
        .collect();
    let system = RationalMatrix::from_rows(restricted, cells.len());
    let (_, pivots) = system.rref();
    let kernel = system.kernel_basis();
    let solution_dim = kernel.len();
    let witness = (solution_dim > 0).then(|| {
        let free: Vec<usize> = (0..cells.len()).filter(|c| !pivots.contains(c)).collect();
        let mut v = vec![Rational::zero(); ell * m];
        for (basis, &f) in kernel.iter().zip(&free) {
            let (r, k) = (cells[f] / m, cells[f] % m);
            let weight = &decomp.entries[k].1[r];
            for (x, &c) in basis.iter().zip(&cells) {
                v[c] += x * weight;
            }
        }
        crate::logderiv::derivation_from_vector(ell, &monomials, &v)
    });
    let satisfies_transported = match &witness {
        Some(w) => {
            let space = constraint_space(a, theta)?;
            let table = contact_table(b, &decomposition_over(w, &monomials))?;
            Some(
                space
                    .generators
                    .iter()
                    .all(|row| row.remap_forms(perm).apply(&table).is_zero()),
            )
        }
        None => None,
    };
    Ok(TransportResult {
        unknowns: cells.len(),
        solution_dim,
        witness,
        satisfies_transported,
    })
}
