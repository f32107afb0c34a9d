//! Right quaternionic vector space `H^n` and bounded right-linear operators
//! on it, represented as dense `n x n` quaternion matrices.
//!
//! Conventions: scalars multiply vector components from the right
//! (`(u p)_k = u_k p`), matrix entries multiply components from the left
//! (`(T u)_r = sum_c T_rc u_c`), which makes `T(up + v) = (Tu)p + Tv` exact.
//! The inner product is `<u, v> = sum_k conj(u_k) v_k`, right-linear in its
//! second slot.

mod classify;
mod embed;
mod matrix;
mod random;
mod vector;

pub use classify::{classify, classify_with_tol, ClassFlags};
pub use embed::{chi, chi_inv, chi_inv_with_tol, ComplexBlock};
pub use matrix::QMatrix;
pub use random::{
    random_normal_matrix, random_selfadjoint, random_selfadjoint_rng, random_unit_vector,
    random_unit_vector_rng, random_unitary_rng,
};
pub use vector::QVector;

use crate::error::Result;

/// Operator norm `||T|| = sup ||Tu|| / ||u||`, computed as the largest
/// singular value of the complex-adjoint embedding `chi(T)`.
pub fn op_norm(t: &QMatrix) -> f64 {
    let sv = chi(t).into_matrix().svd(false, false).singular_values;
    sv.iter().cloned().fold(0.0, f64::max)
}

/// Requires `T = T*` at the default classification tolerance.
pub(crate) fn require_selfadjoint(t: &QMatrix, what: &str) -> Result<()> {
    if classify(t).selfadjoint {
        Ok(())
    } else {
        Err(crate::error::Error::Hypothesis(format!(
            "{what} requires a selfadjoint operator"
        )))
    }
}
