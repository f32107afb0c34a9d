use std::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

use super::vector::QVector;

/// Dense `n x n` quaternion matrix, row-major, acting right-linearly on
/// `H^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    n: usize,
    entries: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrices have dimension >= 1");
        Self {
            n,
            entries: vec![Quaternion::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for k in 0..n {
            m.set(k, k, Quaternion::ONE);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut m = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse("empty matrix".into()));
        }
        let mut m = Self::zeros(n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for (c, q) in row.iter().enumerate() {
                m.set(r, c, *q);
            }
        }
        Ok(m)
    }

    /// Real diagonal matrix.
    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (k, d) in diag.iter().enumerate() {
            m.set(k, k, Quaternion::from_real(*d));
        }
        m
    }

    /// Quaternion diagonal matrix.
    pub fn from_diag(diag: &[Quaternion]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (k, d) in diag.iter().enumerate() {
            m.set(k, k, *d);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Quaternion {
        self.entries[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, q: Quaternion) {
        self.entries[r * self.n + c] = q;
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.entries
    }

    fn check_dim(&self, other_dim: usize) -> Result<()> {
        if self.n != other_dim {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other_dim,
            });
        }
        Ok(())
    }

    /// `(T u)_r = sum_c T_rc u_c`: entries act from the left of components,
    /// preserving right-linearity.
    pub fn apply(&self, u: &QVector) -> Result<QVector> {
        self.check_dim(u.dim())?;
        let mut out = QVector::zeros(self.n);
        for r in 0..self.n {
            let mut acc = Quaternion::ZERO;
            for c in 0..self.n {
                acc = acc + self.get(r, c) * u.get(c);
            }
            out.set(r, acc);
        }
        Ok(out)
    }

    /// Matrix product `(S T) u = S (T u)`.
    pub fn matmul(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_dim(other.n)?;
        let n = self.n;
        let mut out = QMatrix::zeros(n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = Quaternion::ZERO;
                for k in 0..n {
                    acc = acc + self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Conjugate transpose: `<T* u, v> = <u, T v>`.
    pub fn adjoint(&self) -> QMatrix {
        QMatrix::from_fn(self.n, |r, c| self.get(c, r).conj())
    }

    pub fn scale_real(&self, s: f64) -> QMatrix {
        QMatrix {
            n: self.n,
            entries: self.entries.iter().map(|q| *q * s).collect(),
        }
    }

    pub fn neg(&self) -> QMatrix {
        self.scale_real(-1.0)
    }

    /// Frobenius norm (entrywise 2-norm).
    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|q| q.abs_sq()).sum::<f64>().sqrt()
    }

    /// Hermitian part `(T + T*) / 2`.
    pub fn symmetrized(&self) -> QMatrix {
        (self + &self.adjoint()).scale_real(0.5)
    }

    pub fn column(&self, c: usize) -> QVector {
        QVector::from_entries((0..self.n).map(|r| self.get(r, c)).collect())
    }

    pub fn set_column(&mut self, c: usize, v: &QVector) {
        assert_eq!(v.dim(), self.n);
        for r in 0..self.n {
            self.set(r, c, v.get(r));
        }
    }

    pub fn approx_eq(&self, other: &QMatrix, tol: f64) -> bool {
        self.n == other.n
            && self
                .entries
                .iter()
                .zip(other.entries.iter())
                .all(|(a, b)| a.approx_eq(*b, tol))
    }

    /// Matrix power by repeated multiplication (small exponents only).
    pub fn pow(&self, k: u32) -> QMatrix {
        let mut out = QMatrix::identity(self.n);
        for _ in 0..k {
            out = out.matmul(self).expect("same dimension");
        }
        out
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.n, other.n);
        QMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.n, other.n);
        QMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol::SCALAR_TOL;

    #[test]
    fn identity_fixes_vectors() {
        let u = QVector::from_entries(vec![
            Quaternion::new(1.0, 2.0, 3.0, 4.0),
            Quaternion::new(-1.0, 0.5, 0.0, 2.0),
        ]);
        let out = QMatrix::identity(2).apply(&u).unwrap();
        assert!(out.approx_eq(&u, SCALAR_TOL));
    }

    #[test]
    fn permutation_swaps_components() {
        let t = QMatrix::from_rows(vec![
            vec![Quaternion::ZERO, Quaternion::ONE],
            vec![Quaternion::ONE, Quaternion::ZERO],
        ])
        .unwrap();
        let p = Quaternion::new(1.0, -1.0, 0.5, 2.0);
        let q = Quaternion::new(0.0, 3.0, -1.0, 0.25);
        let u = QVector::from_entries(vec![p, q]);
        let out = t.apply(&u).unwrap();
        assert_eq!(out.get(0), q);
        assert_eq!(out.get(1), p);
    }

    #[test]
    fn apply_is_right_linear() {
        let t = QMatrix::from_rows(vec![
            vec![Quaternion::new(1.0, 2.0, 0.0, -1.0), Quaternion::J],
            vec![Quaternion::K, Quaternion::new(0.5, 0.0, 1.5, 0.0)],
        ])
        .unwrap();
        let u = QVector::from_entries(vec![
            Quaternion::new(0.2, 0.4, -0.6, 0.8),
            Quaternion::new(-1.0, 1.0, -1.0, 1.0),
        ]);
        let lhs = t.apply(&u.scale_right(Quaternion::J)).unwrap();
        let rhs = t.apply(&u).unwrap().scale_right(Quaternion::J);
        assert!(lhs.approx_eq(&rhs, SCALAR_TOL));
    }

    #[test]
    fn adjoint_of_j_block_is_minus_j() {
        let t = QMatrix::from_rows(vec![vec![Quaternion::J]]).unwrap();
        assert_eq!(t.adjoint().get(0, 0), -Quaternion::J);
    }

    #[test]
    fn selfadjoint_example_is_fixed_by_adjoint() {
        // [[2, j], [-j, 2]]
        let t = QMatrix::from_rows(vec![
            vec![Quaternion::from_real(2.0), Quaternion::J],
            vec![-Quaternion::J, Quaternion::from_real(2.0)],
        ])
        .unwrap();
        assert!(t.adjoint().approx_eq(&t, SCALAR_TOL));
    }

    #[test]
    fn adjoint_moves_across_inner_product() {
        let t = QMatrix::from_rows(vec![
            vec![Quaternion::new(1.0, -1.0, 2.0, 0.0), Quaternion::new(0.0, 3.0, 0.0, 1.0)],
            vec![Quaternion::new(2.0, 0.5, -1.0, 1.0), Quaternion::new(-1.0, 0.0, 0.0, 2.0)],
        ])
        .unwrap();
        let u = QVector::from_entries(vec![
            Quaternion::new(0.1, 0.2, 0.3, 0.4),
            Quaternion::new(-0.5, 0.6, -0.7, 0.8),
        ]);
        let v = QVector::from_entries(vec![
            Quaternion::new(1.0, -0.2, 0.0, 0.9),
            Quaternion::new(0.4, 0.0, 1.1, -0.3),
        ]);
        let lhs = t.adjoint().apply(&u).unwrap().inner(&v).unwrap();
        let rhs = u.inner(&t.apply(&v).unwrap()).unwrap();
        assert!(lhs.approx_eq(rhs, SCALAR_TOL));
    }

    #[test]
    fn double_adjoint_is_identity() {
        let t = QMatrix::from_rows(vec![
            vec![Quaternion::new(1.0, 2.0, 3.0, 4.0), Quaternion::new(5.0, 6.0, 7.0, 8.0)],
            vec![Quaternion::new(-1.0, -2.0, -3.0, -4.0), Quaternion::new(0.0, 1.0, 0.0, -1.0)],
        ])
        .unwrap();
        assert_eq!(t.adjoint().adjoint(), t);
    }
}
