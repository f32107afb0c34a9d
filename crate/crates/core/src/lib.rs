//! Finite-dimensional right quaternionic Hilbert spaces `H^n`, dense
//! quaternionic matrices acting right-linearly on them, their spherical
//! spectra and continuous functional calculus, and a randomized checker for
//! a family of Jensen-type operator inequality chains.
//!
//! The crate is organised bottom-up:
//!
//! - [`quaternion`]: scalar quaternion arithmetic.
//! - [`qlinalg`]: vectors, matrices, the complex-adjoint embedding `chi`,
//!   operator norm, operator classification, seeded random generators.
//! - [`spectral`]: the associated operator `Delta_q(T)`, spherical point
//!   spectrum, spectral radius/bounds, and the resolvent power series.
//! - [`funcalc`]: continuous functional calculus `f(T)` for selfadjoint `T`
//!   plus the scalar-function registry used by the inequality checkers.
//! - [`inequalities`]: one checker per inequality chain, a seeded campaign
//!   driver, and an adversarial slack search.
//!
//! Everything is deterministic in the supplied seeds: identical inputs
//! produce bit-identical results, including serialized JSON reports.

pub mod error;
pub mod funcalc;
pub mod inequalities;
pub mod io;
pub mod qlinalg;
pub mod quaternion;
pub mod report;
pub mod spectral;
pub mod tol;

pub use error::{Error, Result};
pub use qlinalg::{QMatrix, QVector};
pub use quaternion::Quaternion;
