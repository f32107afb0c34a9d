//! Central tolerance policy.
//!
//! All comparisons are relative-absolute hybrids: a difference `d` passes at
//! tolerance `tol` against values `a`, `b` when `d <= tol * max(1, |a|, |b|)`.
//! The named constants below are the defaults; operations that accept an
//! explicit tolerance scale these by the instance norm as documented.

/// Componentwise scalar comparisons (quaternion algebra tests).
pub const SCALAR_TOL: f64 = 1e-12;

/// Default inequality-chain tolerance, overridable per run.
pub const CHAIN_TOL: f64 = 1e-9;

/// Operator classification; scaled by `max(1, ||T||)`.
pub const CLASSIFY_TOL: f64 = 1e-10;

/// Sphere coalescing in spectra; scaled by `max(1, ||T||)`.
pub const MERGE_TOL: f64 = 1e-7;

/// Singularity verification of `Delta_q(T)`; scaled by `max(1, ||T||^2)`
/// (`Delta` is quadratic in `T`).
pub const RANK_TOL: f64 = 1e-8;

/// Functional-calculus domain slack; scaled by `max(1, ||T||)`. Eigenvalues
/// within this margin of a closed domain boundary are clamped to it.
pub const DOMAIN_MARGIN: f64 = 1e-9;

/// Quaternionic-structure residual accepted by `chi_inv`; scaled by
/// `max(1, ||M||_F)`.
pub const STRUCTURE_TOL: f64 = 1e-8;

/// Imaginary residue allowed on inner products that must be real; scaled by
/// `1 + |value|`. Larger residues invalidate a trial rather than fail it.
pub const REALNESS_TOL: f64 = 1e-10;

/// Unit-vector enforcement for inequality checkers.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// Hybrid equality: `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

/// Scale factor used by the hybrid policy.
pub fn hybrid_scale(a: f64, b: f64) -> f64 {
    1f64.max(a.abs()).max(b.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hybrid_is_absolute_near_zero_and_relative_when_large() {
        assert!(approx_eq(0.0, 5e-13, 1e-12));
        assert!(!approx_eq(0.0, 5e-12, 1e-12));
        assert!(approx_eq(1e6, 1e6 + 0.5e-6, 1e-12));
        assert!(!approx_eq(1e6, 1e6 + 5e-6, 1e-12));
    }
}
