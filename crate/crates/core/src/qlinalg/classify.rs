use nalgebra::SymmetricEigen;

use crate::tol::CLASSIFY_TOL;

use super::embed::chi;
use super::matrix::QMatrix;
use super::op_norm;

/// Operator class flags. `positive` implies `selfadjoint`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassFlags {
    pub selfadjoint: bool,
    pub normal: bool,
    pub unitary: bool,
    pub positive: bool,
}

/// Classifies at the scale-free default tolerance `1e-10 * max(1, ||T||)`.
pub fn classify(t: &QMatrix) -> ClassFlags {
    classify_with_tol(t, CLASSIFY_TOL * 1f64.max(op_norm(t)))
}

/// Classifies with an explicit absolute tolerance:
/// selfadjoint iff `||T - T*|| <= tol`, normal iff `||TT* - T*T|| <= tol`,
/// unitary iff `||TT* - I|| <= tol`, positive iff selfadjoint and
/// `min sigma_S(T) >= -tol`.
pub fn classify_with_tol(t: &QMatrix, tol: f64) -> ClassFlags {
    let adj = t.adjoint();
    let selfadjoint = op_norm(&(t - &adj)) <= tol;
    let tts = t.matmul(&adj).expect("same dimension");
    let tst = adj.matmul(t).expect("same dimension");
    let normal = op_norm(&(&tts - &tst)) <= tol;
    let unitary = op_norm(&(&tts - &QMatrix::identity(t.n()))) <= tol;
    let positive = selfadjoint && min_hermitian_eigenvalue(t) >= -tol;
    ClassFlags {
        selfadjoint,
        normal,
        unitary,
        positive,
    }
}

/// Smallest eigenvalue of the Hermitian part of `chi(T)`. For selfadjoint
/// `T` this is `min sigma_S(T)`.
fn min_hermitian_eigenvalue(t: &QMatrix) -> f64 {
    let m = chi(&t.symmetrized()).into_matrix();
    let h = (&m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(h);
    eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion;

    #[test]
    fn selfadjoint_block_is_positive_here() {
        // [[2, j], [-j, 2]] has spectrum {1, 3}
        let t = QMatrix::from_rows(vec![
            vec![Quaternion::from_real(2.0), Quaternion::J],
            vec![-Quaternion::J, Quaternion::from_real(2.0)],
        ])
        .unwrap();
        let flags = classify(&t);
        assert!(flags.selfadjoint);
        assert!(flags.normal);
        assert!(flags.positive);
        assert!(!flags.unitary);
    }

    #[test]
    fn j_is_normal_unitary_not_selfadjoint() {
        let t = QMatrix::from_rows(vec![vec![Quaternion::J]]).unwrap();
        let flags = classify(&t);
        assert!(flags.normal);
        assert!(flags.unitary);
        assert!(!flags.selfadjoint);
        assert!(!flags.positive);
    }

    #[test]
    fn nilpotent_shift_has_no_flags() {
        let t = QMatrix::from_rows(vec![
            vec![Quaternion::ZERO, Quaternion::ONE],
            vec![Quaternion::ZERO, Quaternion::ZERO],
        ])
        .unwrap();
        let flags = classify(&t);
        assert_eq!(flags, ClassFlags::default());
    }
}
