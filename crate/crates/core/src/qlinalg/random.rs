//! Seeded instance generators. All generators are deterministic in the
//! seed; parallel trial drivers partition the seed space instead of sharing
//! generator state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

use super::matrix::QMatrix;
use super::vector::QVector;

fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal_quaternion(rng: &mut ChaCha8Rng) -> Quaternion {
    Quaternion::new(
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    )
}

/// `n x n` matrix with independent standard-normal quaternion entries.
pub fn random_normal_matrix(n: usize, rng: &mut ChaCha8Rng) -> QMatrix {
    QMatrix::from_fn(n, |_, _| normal_quaternion(rng))
}

/// Random quaternionic unitary: modified Gram-Schmidt orthonormalization
/// (with a reorthogonalization pass) of the columns of a standard-normal
/// matrix, carried out in quaternion arithmetic so the result is exactly
/// structured.
pub fn random_unitary_rng(n: usize, rng: &mut ChaCha8Rng) -> QMatrix {
    let mut u = QMatrix::zeros(n);
    let mut k = 0;
    while k < n {
        let mut v = QVector::from_entries((0..n).map(|_| normal_quaternion(rng)).collect());
        for _pass in 0..2 {
            for l in 0..k {
                let ql = u.column(l);
                let coeff = ql.inner(&v).expect("same dimension");
                v = &v - &ql.scale_right(coeff);
            }
        }
        match v.normalized() {
            Some(unit) => {
                u.set_column(k, &unit);
                k += 1;
            }
            // A numerically degenerate draw; resample the column.
            None => continue,
        }
    }
    u
}

/// `T = U D U*` with `D` real diagonal sampled uniformly in `[m, M]`, both
/// endpoints always present for `n >= 2`, and `U` a random quaternionic
/// unitary. Guarantees `sigma_S(T) in [m, M]` with `min = m`, `max = M`
/// (for `n >= 2`), up to roundoff.
pub fn random_selfadjoint_rng(n: usize, m: f64, upper: f64, rng: &mut ChaCha8Rng) -> Result<QMatrix> {
    if !(m < upper) {
        return Err(Error::Hypothesis(format!(
            "spectrum interval requires m < M, got [{m}, {upper}]"
        )));
    }
    assert!(n >= 1);
    let mut diag = Vec::with_capacity(n);
    if n == 1 {
        diag.push(rng.gen_range(m..=upper));
    } else {
        diag.push(m);
        diag.push(upper);
        for _ in 2..n {
            diag.push(rng.gen_range(m..=upper));
        }
        // Fisher-Yates so the endpoints do not always sit in the leading slots.
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            diag.swap(i, j);
        }
    }
    let u = random_unitary_rng(n, rng);
    let d = QMatrix::from_real_diag(&diag);
    let t = u
        .matmul(&d)
        .and_then(|ud| ud.matmul(&u.adjoint()))
        .expect("same dimension");
    Ok(t.symmetrized())
}

/// Seed-keyed wrapper around [`random_selfadjoint_rng`].
pub fn random_selfadjoint(n: usize, m: f64, upper: f64, seed: u64) -> Result<QMatrix> {
    random_selfadjoint_rng(n, m, upper, &mut rng_from_seed(seed))
}

/// Unit vector with standard-normal direction; falls back to `e_1` on a
/// degenerate draw.
pub fn random_unit_vector_rng(n: usize, rng: &mut ChaCha8Rng) -> QVector {
    assert!(n >= 1);
    let v = QVector::from_entries((0..n).map(|_| normal_quaternion(rng)).collect());
    v.normalized().unwrap_or_else(|| QVector::basis(n, 0))
}

/// Seed-keyed wrapper around [`random_unit_vector_rng`].
pub fn random_unit_vector(n: usize, seed: u64) -> QVector {
    random_unit_vector_rng(n, &mut rng_from_seed(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{classify, op_norm};
    use crate::tol::SCALAR_TOL;

    #[test]
    fn unitary_columns_are_orthonormal() {
        let mut rng = rng_from_seed(11);
        for n in [1, 2, 5] {
            let u = random_unitary_rng(n, &mut rng);
            let gram = u.adjoint().matmul(&u).unwrap();
            assert!(gram.approx_eq(&QMatrix::identity(n), 1e-12), "n = {n}");
        }
    }

    #[test]
    fn selfadjoint_generator_sets_the_flag() {
        let t = random_selfadjoint(4, -1.0, 2.0, 42).unwrap();
        assert!(classify(&t).selfadjoint);
        assert!(op_norm(&t) <= 2.0 + 1e-9);
    }

    #[test]
    fn one_dimensional_instance_is_a_real_scalar_in_range() {
        let t = random_selfadjoint(1, 0.5, 1.5, 7).unwrap();
        let d = t.get(0, 0);
        assert!(d.approx_eq(Quaternion::from_real(d.re()), SCALAR_TOL));
        assert!((0.5..=1.5).contains(&d.re()));
    }

    #[test]
    fn rejects_degenerate_interval() {
        assert!(random_selfadjoint(2, 1.0, 1.0, 0).is_err());
        assert!(random_selfadjoint(2, 2.0, 1.0, 0).is_err());
    }

    #[test]
    fn unit_vector_is_unit_and_deterministic() {
        let x = random_unit_vector(6, 123);
        assert!((x.norm() - 1.0).abs() <= 1e-14);
        let y = random_unit_vector(6, 123);
        assert_eq!(x, y);
    }
}
