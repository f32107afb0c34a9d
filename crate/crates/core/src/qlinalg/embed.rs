//! Complex-adjoint (symplectic) embedding of quaternionic matrices.
//!
//! Writing each entry as `A + B*j` with `A`, `B` complex, the embedding is
//!
//! ```text
//! chi(T) = [  A    B  ]
//!          [ -B~   A~ ]        (~ = entrywise complex conjugation)
//! ```
//!
//! `chi` is a star-ring homomorphism: `chi(ST) = chi(S) chi(T)` and
//! `chi(T*) = chi(T)^H`, so `T` is selfadjoint iff `chi(T)` is Hermitian.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::tol::STRUCTURE_TOL;

use super::matrix::QMatrix;

/// A `2n x 2n` complex matrix in (or near) the image of `chi`, together
/// with the quaternionic dimension `n`.
///
/// Membership in the image is exactly the structure condition
/// `M = -J conj(M) J` with `J = [[0, I], [-I, 0]]`.
#[derive(Clone, Debug)]
pub struct ComplexBlock {
    n: usize,
    mat: DMatrix<Complex64>,
}

impl ComplexBlock {
    pub fn from_matrix(n: usize, mat: DMatrix<Complex64>) -> Self {
        assert_eq!(mat.nrows(), 2 * n);
        assert_eq!(mat.ncols(), 2 * n);
        Self { n, mat }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.mat
    }

    /// Applies the antilinear structure map `M -> -J conj(M) J` blockwise:
    /// for `M = [[P, Q], [R, S]]` the image is `[[S~, -R~], [-Q~, P~]]`.
    pub fn structure_map(&self) -> DMatrix<Complex64> {
        let n = self.n;
        let mut out = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                out[(r, c)] = self.mat[(r + n, c + n)].conj();
                out[(r, c + n)] = -self.mat[(r + n, c)].conj();
                out[(r + n, c)] = -self.mat[(r, c + n)].conj();
                out[(r + n, c + n)] = self.mat[(r, c)].conj();
            }
        }
        out
    }

    /// Frobenius norm of `M + J conj(M) J`; zero exactly on the image of
    /// `chi`.
    pub fn structure_residual(&self) -> f64 {
        (&self.mat - self.structure_map()).norm()
    }

    /// Projects onto the structured subspace by averaging `M` with its
    /// structure image.
    pub fn symmetrize_structure(&mut self) {
        let avg = (&self.mat + self.structure_map()).scale(0.5);
        self.mat = avg;
    }
}

/// Embeds `T` as its complex-adjoint `2n x 2n` matrix.
pub fn chi(t: &QMatrix) -> ComplexBlock {
    let n = t.n();
    let mut m = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            let (a, b) = t.get(r, c).complex_pair();
            m[(r, c)] = a;
            m[(r, c + n)] = b;
            m[(r + n, c)] = -b.conj();
            m[(r + n, c + n)] = a.conj();
        }
    }
    ComplexBlock::from_matrix(n, m)
}

/// Left inverse of [`chi`] at the default structure tolerance.
pub fn chi_inv(block: &ComplexBlock) -> Result<QMatrix> {
    chi_inv_with_tol(block, STRUCTURE_TOL)
}

/// Left inverse of [`chi`]: reads `A` from the top-left block and `B` from
/// the top-right block, so `chi_inv(chi(T)) = T` exactly. Rejects matrices
/// whose structure residual exceeds `tol * max(1, ||M||_F)`.
pub fn chi_inv_with_tol(block: &ComplexBlock, tol: f64) -> Result<QMatrix> {
    let residual = block.structure_residual();
    let scaled = tol * 1f64.max(block.matrix().norm());
    if residual > scaled {
        return Err(Error::NotQuaternionicImage {
            residual,
            tol: scaled,
        });
    }
    let n = block.n();
    let m = block.matrix();
    Ok(QMatrix::from_fn(n, |r, c| {
        Quaternion::from_complex_pair(m[(r, c)], m[(r, c + n)])
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol::SCALAR_TOL;

    fn sample_matrix() -> QMatrix {
        QMatrix::from_rows(vec![
            vec![Quaternion::new(1.0, -0.5, 2.0, 0.3), Quaternion::new(0.0, 1.0, -1.0, 0.7)],
            vec![Quaternion::new(-2.0, 0.4, 0.0, 1.0), Quaternion::new(0.5, 0.5, 0.5, 0.5)],
        ])
        .unwrap()
    }

    #[test]
    fn chi_of_j_is_the_symplectic_unit() {
        let t = QMatrix::from_rows(vec![vec![Quaternion::J]]).unwrap();
        let m = chi(&t);
        let expect = [
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(-1.0, 0.0), Complex64::new(0.0, 0.0)],
        ];
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(m.matrix()[(r, c)], expect[r][c]);
            }
        }
    }

    #[test]
    fn chi_of_identity_is_identity() {
        for n in [1, 3] {
            let m = chi(&QMatrix::identity(n));
            assert!((m.matrix() - DMatrix::<Complex64>::identity(2 * n, 2 * n)).norm() == 0.0);
        }
    }

    #[test]
    fn chi_is_multiplicative() {
        let s = sample_matrix();
        let t = sample_matrix().adjoint();
        let lhs = chi(&s.matmul(&t).unwrap());
        let rhs = chi(&s).matrix() * chi(&t).matrix();
        assert!((lhs.matrix() - rhs).norm() < 1e-12);
    }

    #[test]
    fn chi_star_compatibility() {
        let t = sample_matrix();
        let lhs = chi(&t.adjoint());
        let rhs = chi(&t).matrix().adjoint();
        assert!((lhs.matrix() - rhs).norm() == 0.0);
    }

    #[test]
    fn chi_inv_roundtrip_is_exact() {
        let t = sample_matrix();
        let back = chi_inv(&chi(&t)).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn chi_inv_of_symplectic_unit_is_j() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        );
        let t = chi_inv(&ComplexBlock::from_matrix(1, m)).unwrap();
        assert!(t.get(0, 0).approx_eq(Quaternion::J, SCALAR_TOL));
    }

    #[test]
    fn chi_inv_rejects_unstructured_input() {
        let mut m = DMatrix::<Complex64>::identity(2, 2);
        m[(0, 0)] = Complex64::new(0.0, 1.0); // i on the diagonal breaks the structure
        let err = chi_inv(&ComplexBlock::from_matrix(1, m));
        assert!(matches!(err, Err(Error::NotQuaternionicImage { .. })));
    }

    #[test]
    fn structure_residual_vanishes_on_images() {
        let t = sample_matrix();
        assert!(chi(&t).structure_residual() == 0.0);
    }
}
