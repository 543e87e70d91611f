//! Derivations, the logarithmic membership test, and graded pieces of D(A).

mod graded;
mod saito;

use std::fmt;

pub use graded::{euler_multiple_dim, graded_component, GradedBasis};
pub(crate) use graded::{derivation_from_vector, membership_system};
pub use saito::{basis_shift, free_check, saito_check, DegreeStep, FreenessReport, FreenessVerdict, SaitoResult};

use crate::arrangement::{Arrangement, LinearForm};
use crate::error::{Error, Result};
use crate::exact::{parse_polynomial_lines, Polynomial, Rational};

/// A derivation `theta = sum_i p_i D_i`, stored as its coefficient vector field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    coords: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(coords: Vec<Polynomial>) -> Result<Self> {
        let ell = coords.len();
        for p in &coords {
            if p.nvars() != ell {
                return Err(Error::DimensionMismatch {
                    expected: ell,
                    found: p.nvars(),
                });
            }
        }
        Ok(Derivation { coords })
    }

    pub fn zero(ell: usize) -> Self {
        Derivation {
            coords: vec![Polynomial::zero(ell); ell],
        }
    }

    /// `theta_E = sum_i x_i D_i`.
    pub fn euler(ell: usize) -> Self {
        Derivation {
            coords: (0..ell).map(|i| Polynomial::var(ell, i)).collect(),
        }
    }

    /// Parses a `.der` file: one polynomial per line, `ell` lines.
    pub fn parse(text: &str, ell: usize) -> Result<Self> {
        let coords = parse_polynomial_lines(text, ell)?;
        if coords.len() != ell {
            return Err(Error::DimensionMismatch {
                expected: ell,
                found: coords.len(),
            });
        }
        Self::new(coords)
    }

    pub fn to_der_string(&self) -> String {
        self.coords.iter().map(|p| format!("{p}\n")).collect()
    }

    pub fn ell(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Polynomial::is_zero)
    }

    /// Common degree of the coordinates, when they are all homogeneous of
    /// one degree. `None` for the zero derivation and for mixed degrees.
    pub fn degree(&self) -> Option<u32> {
        let mut deg = None;
        for p in &self.coords {
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() {
                return None;
            }
            match deg {
                None => deg = p.degree(),
                Some(d) if Some(d) != p.degree() => return None,
                _ => {}
            }
        }
        deg
    }

    /// `theta(f) = sum_i p_i * df/dx_i`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        assert_eq!(f.nvars(), self.ell(), "variable count mismatch");
        self.coords
            .iter()
            .enumerate()
            .fold(Polynomial::zero(self.ell()), |acc, (i, p)| acc + p * &f.derivative(i))
    }

    /// `theta(alpha)` for a linear form, without differentiating.
    pub fn apply_linear(&self, form: &LinearForm) -> Polynomial {
        self.coords
            .iter()
            .zip(form.coeffs())
            .fold(Polynomial::zero(self.ell()), |acc, (p, a)| acc + p.scale(a))
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        Derivation {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Derivation) -> Derivation {
        Derivation {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul_poly(&self, f: &Polynomial) -> Derivation {
        Derivation {
            coords: self.coords.iter().map(|p| p * f).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation {
            coords: self.coords.iter().map(|p| p.scale(c)).collect(),
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// The quotients `k_i = theta(alpha_i) / alpha_i`, one per hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTuple {
    pub entries: Vec<Polynomial>,
}

impl KTuple {
    /// `sum_i k_i`, which equals `theta(Q) / Q`.
    pub fn sum(&self) -> Polynomial {
        let nvars = self.entries.first().map_or(0, Polynomial::nvars);
        self.entries.iter().fold(Polynomial::zero(nvars), |acc, k| acc + k)
    }
}

/// Divides `theta(alpha_i)` by `alpha_i` for every hyperplane.
pub fn k_vector(a: &Arrangement, theta: &Derivation) -> Result<KTuple> {
    if theta.ell() != a.ell() {
        return Err(Error::DimensionMismatch {
            expected: a.ell(),
            found: theta.ell(),
        });
    }
    let entries = a
        .forms()
        .iter()
        .enumerate()
        .map(|(i, form)| {
            theta
                .apply_linear(form)
                .div_exact(&form.to_polynomial())
                .ok_or(Error::NotLogarithmic { index: i })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KTuple { entries })
}

/// True iff `alpha_i | theta(alpha_i)` for every `i`.
pub fn is_logarithmic(a: &Arrangement, theta: &Derivation) -> bool {
    k_vector(a, theta).is_ok()
}
