//! Ziegler's arrangement X2 and its degree-5 derivation, shipped as text
//! fixtures transcribed term for term from the printed example.

use crate::arrangement::Arrangement;
use crate::exact::{parse_polynomial_lines, Polynomial};
use crate::logderiv::{k_vector, Derivation};

pub const ARR_TEXT: &str = include_str!("../data/ziegler_x2.arr");
pub const THETA_TEXT: &str = include_str!("../data/ziegler_theta_z.der");
/// Bracketed cofactors of the printed derivation: coordinate `i` is `x_i * k_i`.
pub const COFACTORS_TEXT: &str = include_str!("../data/ziegler_theta_z_cofactors.txt");
/// The printed quotients for forms 4, 5, 6.
pub const QUOTIENTS_TEXT: &str = include_str!("../data/ziegler_q.txt");

/// The critical point of the associated field on forms 4, 5, 6.
pub const CRITICAL_POINT: [i64; 3] = [2, 3, -1];

/// Loads the fixture and checks that the derivation is logarithmic.
///
/// # Panics
/// On a transcription error in the embedded data.
pub fn emit_ziegler_fixture() -> (Arrangement, Derivation) {
    let a = Arrangement::parse(ARR_TEXT).expect("transcription error in X2 forms");
    let theta = Derivation::parse(THETA_TEXT, 3).expect("transcription error in theta_z");
    if let Err(e) = k_vector(&a, &theta) {
        panic!("transcription error: theta_z is not logarithmic on X2 ({e})");
    }
    (a, theta)
}

pub fn printed_cofactors() -> Vec<Polynomial> {
    parse_polynomial_lines(COFACTORS_TEXT, 3).expect("transcription error in cofactors")
}

pub fn printed_quotients() -> Vec<Polynomial> {
    parse_polynomial_lines(QUOTIENTS_TEXT, 3).expect("transcription error in quotients")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::tests::X2_ROWS;

    #[test]
    fn fixture_shape() {
        let (a, theta) = emit_ziegler_fixture();
        assert_eq!((a.ell(), a.len()), (3, 9));
        assert_eq!(a, Arrangement::from_rows(X2_ROWS).unwrap());
        assert_eq!(theta.degree(), Some(5));
        assert!(theta.coords()[0].to_string().starts_with("4*x1^4*x2 + 36*x1^4*x3"));
    }

    #[test]
    fn expanded_matches_cofactors() {
        let (_, theta) = emit_ziegler_fixture();
        for (i, k) in printed_cofactors().iter().enumerate() {
            assert_eq!(theta.coords()[i], &Polynomial::var(3, i) * k);
        }
    }

    #[test]
    fn quotients_match_print() {
        let (a, theta) = emit_ziegler_fixture();
        let k = k_vector(&a, &theta).unwrap();
        assert_eq!(k.entries[3..6].to_vec(), printed_quotients());
        assert_eq!(k.entries[..3].to_vec(), printed_cofactors());
        assert!(k.entries.iter().all(|p| p.is_homogeneous_of(4)));
        // theta_z is tangent to the ninth plane
        assert!(k.entries[8].is_zero());
        assert!(k.entries[..8].iter().all(|p| p.degree() == Some(4)));
    }
}
