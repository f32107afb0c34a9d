//! Scalar quaternion arithmetic.
//!
//! A quaternion is `x0 + x1*i + x2*j + x3*k` with the multiplication rules
//! `i^2 = j^2 = k^2 = -1`, `ij = -ji = k`, `jk = -kj = i`, `ki = -ik = j`.
//! Components are double-precision reals; values are immutable and `Copy`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Quaternion {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self { x0, x1, x2, x3 }
    }

    #[inline]
    pub const fn from_real(x: f64) -> Self {
        Self::new(x, 0.0, 0.0, 0.0)
    }

    /// Builds `a + b*j` from the complex pair `(a, b)` in the span of `{1, i}`.
    #[inline]
    pub fn from_complex_pair(a: Complex64, b: Complex64) -> Self {
        Self::new(a.re, a.im, b.re, b.im)
    }

    /// Splits `q = a + b*j` with `a = x0 + x1*i` and `b = x2 + x3*i`.
    #[inline]
    pub fn complex_pair(self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.x0, self.x1),
            Complex64::new(self.x2, self.x3),
        )
    }

    /// Conjugate `x0 - x1*i - x2*j - x3*k`. Anti-homomorphism:
    /// `conj(a*b) = conj(b)*conj(a)`.
    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.x0, -self.x1, -self.x2, -self.x3)
    }

    /// Real part `x0`.
    #[inline]
    pub fn re(self) -> f64 {
        self.x0
    }

    /// `|q|^2 = x0^2 + x1^2 + x2^2 + x3^2`.
    #[inline]
    pub fn abs_sq(self) -> f64 {
        self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    /// Euclidean 4-norm; multiplicative: `|ab| = |a||b|`.
    #[inline]
    pub fn abs(self) -> f64 {
        self.abs_sq().sqrt()
    }

    /// Norm of the imaginary part `sqrt(x1^2 + x2^2 + x3^2)`.
    #[inline]
    pub fn imag_norm(self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    /// Skew-field inverse `conj(q) / |q|^2`.
    pub fn inv(self) -> Result<Self> {
        let n2 = self.abs_sq();
        if n2 == 0.0 {
            return Err(Error::NonInvertibleQuaternion);
        }
        Ok(self.conj() * (1.0 / n2))
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    /// Componentwise hybrid comparison at tolerance `tol`.
    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        let scale = 1f64.max(self.abs()).max(other.abs());
        (self.x0 - other.x0).abs() <= tol * scale
            && (self.x1 - other.x1).abs() <= tol * scale
            && (self.x2 - other.x2).abs() <= tol * scale
            && (self.x3 - other.x3).abs() <= tol * scale
    }
}

impl From<f64> for Quaternion {
    fn from(x: f64) -> Self {
        Self::from_real(x)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.x0 + o.x0, self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.x0 - o.x0, self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.x0, -self.x1, -self.x2, -self.x3)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    /// Hamilton product. Associative, distributive, not commutative.
    #[inline]
    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.x0 * o.x0 - self.x1 * o.x1 - self.x2 * o.x2 - self.x3 * o.x3,
            self.x0 * o.x1 + self.x1 * o.x0 + self.x2 * o.x3 - self.x3 * o.x2,
            self.x0 * o.x2 - self.x1 * o.x3 + self.x2 * o.x0 + self.x3 * o.x1,
            self.x0 * o.x3 + self.x1 * o.x2 - self.x2 * o.x1 + self.x3 * o.x0,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.x0 * s, self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.x0 / s, self.x1 / s, self.x2 / s, self.x3 / s)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.x0)?;
        for (c, unit) in [(self.x1, "i"), (self.x2, "j"), (self.x3, "k")] {
            if c >= 0.0 {
                write!(f, "+{}{}", c, unit)?;
            } else {
                write!(f, "{}{}", c, unit)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol::SCALAR_TOL;

    const UNITS: [Quaternion; 4] = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];

    #[test]
    fn multiplication_table_is_exact() {
        // Rows/cols ordered 1, i, j, k. Entry = (sign, unit index).
        let expect: [[(f64, usize); 4]; 4] = [
            [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
            [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
            [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
            [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
        ];
        for (r, row) in expect.iter().enumerate() {
            for (c, &(sign, unit)) in row.iter().enumerate() {
                let got = UNITS[r] * UNITS[c];
                let want = UNITS[unit] * sign;
                assert_eq!(got, want, "{r} * {c}");
            }
        }
    }

    #[test]
    fn i_times_j_is_k_and_j_times_i_is_minus_k() {
        assert_eq!(Quaternion::I * Quaternion::J, Quaternion::K);
        assert_eq!(Quaternion::J * Quaternion::I, -Quaternion::K);
    }

    #[test]
    fn distributivity_example() {
        // (1+i)(1+j) = 1 + i + j + k
        let a = Quaternion::ONE + Quaternion::I;
        let b = Quaternion::ONE + Quaternion::J;
        assert_eq!(a * b, Quaternion::new(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn conjugation() {
        assert_eq!(
            Quaternion::new(1.0, 1.0, 1.0, 1.0).conj(),
            Quaternion::new(1.0, -1.0, -1.0, -1.0)
        );
        assert_eq!(Quaternion::from_real(5.0).conj(), Quaternion::from_real(5.0));
        // conj(ij) = conj(j)conj(i) = -k
        assert_eq!((Quaternion::I * Quaternion::J).conj(), -Quaternion::K);
    }

    #[test]
    fn absolute_value() {
        assert_eq!(Quaternion::new(1.0, 1.0, 1.0, 1.0).abs(), 2.0);
        assert_eq!(Quaternion::ZERO.abs(), 0.0);
        // |i * (3 + 4j)| = 5 by multiplicativity
        let v = Quaternion::I * Quaternion::new(3.0, 0.0, 4.0, 0.0);
        assert!((v.abs() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn inverses() {
        assert!(Quaternion::J.inv().unwrap().approx_eq(-Quaternion::J, SCALAR_TOL));
        assert!(Quaternion::from_real(2.0)
            .inv()
            .unwrap()
            .approx_eq(Quaternion::from_real(0.5), SCALAR_TOL));
        let q = Quaternion::new(1.0, 1.0, 0.0, 0.0);
        assert!(q
            .inv()
            .unwrap()
            .approx_eq(Quaternion::new(0.5, -0.5, 0.0, 0.0), SCALAR_TOL));
        assert!(matches!(
            Quaternion::ZERO.inv(),
            Err(Error::NonInvertibleQuaternion)
        ));
    }

    #[test]
    fn real_part_identities() {
        let q = Quaternion::new(0.3, -1.2, 2.0, 0.7);
        let s = q + q.conj();
        assert_eq!(s, Quaternion::from_real(2.0 * q.x0));
        let p = q * q.conj();
        assert!(p.approx_eq(Quaternion::from_real(q.abs_sq()), SCALAR_TOL));
    }

    #[test]
    fn complex_pair_roundtrip() {
        let q = Quaternion::new(1.0, -2.0, 3.0, -4.0);
        let (a, b) = q.complex_pair();
        assert_eq!(Quaternion::from_complex_pair(a, b), q);
        // j = 0 + 1*j
        let (a, b) = Quaternion::J.complex_pair();
        assert_eq!(a, Complex64::new(0.0, 0.0));
        assert_eq!(b, Complex64::new(1.0, 0.0));
    }
}
