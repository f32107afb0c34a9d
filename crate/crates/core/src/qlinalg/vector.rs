use std::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Element of `H^n`: a column of quaternions with scalars acting on the
/// right.
#[derive(Clone, Debug, PartialEq)]
pub struct QVector {
    entries: Vec<Quaternion>,
}

impl QVector {
    pub fn from_entries(entries: Vec<Quaternion>) -> Self {
        assert!(!entries.is_empty(), "vectors have dimension >= 1");
        Self { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_entries(vec![Quaternion::ZERO; n])
    }

    /// Standard basis vector `e_k` (0-indexed).
    pub fn basis(n: usize, k: usize) -> Self {
        assert!(k < n);
        let mut v = Self::zeros(n);
        v.entries[k] = Quaternion::ONE;
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.entries
    }

    pub fn get(&self, k: usize) -> Quaternion {
        self.entries[k]
    }

    pub fn set(&mut self, k: usize, q: Quaternion) {
        self.entries[k] = q;
    }

    /// `<u, v> = sum_k conj(u_k) v_k`; conjugate-symmetric, right-linear in
    /// the second slot.
    pub fn inner(&self, other: &QVector) -> Result<Quaternion> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let mut acc = Quaternion::ZERO;
        for (u, v) in self.entries.iter().zip(other.entries.iter()) {
            acc = acc + u.conj() * *v;
        }
        Ok(acc)
    }

    /// `||u|| = sqrt(<u, u>)`, real and non-negative.
    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|q| q.abs_sq()).sum::<f64>().sqrt()
    }

    /// Right scalar action `(u p)_k = u_k p`.
    pub fn scale_right(&self, p: Quaternion) -> QVector {
        QVector {
            entries: self.entries.iter().map(|q| *q * p).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> QVector {
        QVector {
            entries: self.entries.iter().map(|q| *q * s).collect(),
        }
    }

    /// Normalizes to unit length; `None` for the zero vector.
    pub fn normalized(&self) -> Option<QVector> {
        let n = self.norm();
        if n == 0.0 {
            None
        } else {
            Some(self.scale_real(1.0 / n))
        }
    }

    pub fn approx_eq(&self, other: &QVector, tol: f64) -> bool {
        self.dim() == other.dim()
            && self
                .entries
                .iter()
                .zip(other.entries.iter())
                .all(|(a, b)| a.approx_eq(*b, tol))
    }
}

impl Add for &QVector {
    type Output = QVector;
    fn add(self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim());
        QVector {
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }
}

impl Sub for &QVector {
    type Output = QVector;
    fn sub(self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim());
        QVector {
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
    fn inner_of_unit_j_and_k_is_minus_i() {
        // <(j), (k)> = conj(j) k = (-j) k = -i
        let u = QVector::from_entries(vec![Quaternion::J]);
        let v = QVector::from_entries(vec![Quaternion::K]);
        assert!(u
            .inner(&v)
            .unwrap()
            .approx_eq(-Quaternion::I, SCALAR_TOL));
    }

    #[test]
    fn basis_vectors_are_orthonormal() {
        for n in [1, 3, 5] {
            let e1 = QVector::basis(n, 0);
            assert!(e1
                .inner(&e1)
                .unwrap()
                .approx_eq(Quaternion::ONE, SCALAR_TOL));
        }
        let e1 = QVector::basis(3, 0);
        let e2 = QVector::basis(3, 1);
        assert!(e1.inner(&e2).unwrap().is_zero());
    }

    #[test]
    fn inner_is_right_linear_in_second_slot() {
        let u = QVector::from_entries(vec![
            Quaternion::new(0.5, -1.0, 2.0, 0.25),
            Quaternion::new(1.0, 0.0, -3.0, 1.0),
        ]);
        let v = QVector::from_entries(vec![
            Quaternion::new(-1.5, 0.5, 0.0, 2.0),
            Quaternion::new(0.0, 1.0, 1.0, -1.0),
        ]);
        let p = Quaternion::new(0.3, -0.7, 0.11, 0.9);
        let lhs = u.inner(&v.scale_right(p)).unwrap();
        let rhs = u.inner(&v).unwrap() * p;
        assert!(lhs.approx_eq(rhs, SCALAR_TOL));
    }

    #[test]
    fn inner_is_conjugate_symmetric() {
        let u = QVector::from_entries(vec![Quaternion::new(1.0, 2.0, 3.0, 4.0)]);
        let v = QVector::from_entries(vec![Quaternion::new(-0.5, 0.25, 1.0, -2.0)]);
        let a = u.inner(&v).unwrap().conj();
        let b = v.inner(&u).unwrap();
        assert!(a.approx_eq(b, SCALAR_TOL));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let u = QVector::zeros(2);
        let v = QVector::zeros(3);
        assert!(matches!(
            u.inner(&v),
            Err(crate::error::Error::DimensionMismatch { .. })
        ));
    }
}
