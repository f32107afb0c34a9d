//! Spherical spectra of quaternionic matrices.
//!
//! For `T` acting on `H^n` and a quaternion `q`, the associated operator is
//! `Delta_q(T) = T^2 - T (q + conj q) + I |q|^2`. The spherical spectrum is
//! the set of `q` where `Delta_q(T)` is not invertible; it is a union of
//! 2-spheres `{re + im*u : u imaginary unit}`, each represented canonically
//! by the complex number `re + im*i` with `im >= 0` (a representative with
//! `im = 0` is a single real point).
//!
//! In finite dimension `Delta_q(T)` with trivial kernel is always boundedly
//! invertible, so the spherical residual and continuous parts of the
//! spectrum partition are empty and only the point spectrum is computed;
//! [`SphericalSpectrum::residual`] and [`SphericalSpectrum::continuous`]
//! document this degeneracy.
//!
//! Computationally the spectrum is read off the eigenvalues of the
//! complex-adjoint embedding `chi(T)`: they occur in conjugate pairs, and
//! each pair collapses to one sphere representative.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlinalg::{chi, classify, op_norm, require_selfadjoint, QMatrix};
use crate::quaternion::Quaternion;
use crate::report::{ChainReport, Term, Witness};
use crate::tol::{CLASSIFY_TOL, MERGE_TOL, RANK_TOL};

/// One eigen-sphere: canonical representative `(re, im)` with `im >= 0` and
/// its multiplicity (counted once per conjugate pair of `chi`-eigenvalues).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Sphere {
    pub re: f64,
    pub im: f64,
    pub mult: usize,
}

impl Sphere {
    /// Modulus `|q|` shared by every point of the sphere.
    pub fn radius(&self) -> f64 {
        (self.re * self.re + self.im * self.im).sqrt()
    }

    /// The canonical complex-slice point `re + im*i` as a quaternion.
    pub fn representative(&self) -> Quaternion {
        Quaternion::new(self.re, self.im, 0.0, 0.0)
    }
}

/// Finite spherical point spectrum; spheres sorted by `(re, im)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SphericalSpectrum {
    pub spheres: Vec<Sphere>,
}

impl SphericalSpectrum {
    /// Spherical spectral radius `max |q|` over the spectrum.
    pub fn radius(&self) -> f64 {
        self.spheres.iter().map(Sphere::radius).fold(0.0, f64::max)
    }

    pub fn total_multiplicity(&self) -> usize {
        self.spheres.iter().map(|s| s.mult).sum()
    }

    /// True when every sphere is a real point.
    pub fn is_real(&self) -> bool {
        self.spheres.iter().all(|s| s.im == 0.0)
    }

    pub fn min_real(&self) -> f64 {
        self.spheres.iter().map(|s| s.re).fold(f64::INFINITY, f64::min)
    }

    pub fn max_real(&self) -> f64 {
        self.spheres.iter().map(|s| s.re).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Spherical residual spectrum: empty in finite dimension.
    pub fn residual() -> Vec<Sphere> {
        Vec::new()
    }

    /// Spherical continuous spectrum: empty in finite dimension.
    pub fn continuous() -> Vec<Sphere> {
        Vec::new()
    }

    /// Hausdorff distance between the representative sets of two spectra.
    pub fn hausdorff_distance(&self, other: &SphericalSpectrum) -> f64 {
        fn directed(a: &[Sphere], b: &[Sphere]) -> f64 {
            a.iter()
                .map(|p| {
                    b.iter()
                        .map(|q| ((p.re - q.re).powi(2) + (p.im - q.im).powi(2)).sqrt())
                        .fold(f64::INFINITY, f64::min)
                })
                .fold(0.0, f64::max)
        }
        directed(&self.spheres, &other.spheres).max(directed(&other.spheres, &self.spheres))
    }

    /// The spectrum with the origin adjoined (used by the `ST` vs `TS`
    /// comparison, which only holds up to 0).
    pub fn with_zero(&self) -> SphericalSpectrum {
        let mut spheres = self.spheres.clone();
        spheres.push(Sphere {
            re: 0.0,
            im: 0.0,
            mult: 0,
        });
        SphericalSpectrum { spheres }
    }
}

/// Spectral bounds of a selfadjoint operator: `m_T = min sigma_S(T)`,
/// `M_T = max sigma_S(T)`, both attained in the spectrum.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SpectralBounds {
    #[serde(rename = "m_T")]
    pub lower: f64,
    #[serde(rename = "M_T")]
    pub upper: f64,
}

/// `Delta_q(T) = T^2 - T (q + conj q) + I |q|^2`. Both coefficients are
/// real, so scalar placement is unambiguous.
pub fn delta(t: &QMatrix, q: Quaternion) -> QMatrix {
    let two_re = 2.0 * q.re();
    let abs_sq = q.abs_sq();
    let t2 = t.matmul(t).expect("same dimension");
    let id = QMatrix::identity(t.n());
    &(&t2 - &t.scale_real(two_re)) + &id.scale_real(abs_sq)
}

/// Smallest singular value of `chi(Delta_q(T))`; near zero exactly when `q`
/// lies on a spectral sphere.
pub fn delta_min_singular(t: &QMatrix, q: Quaternion) -> f64 {
    let sv = chi(&delta(t, q)).into_matrix().svd(false, false).singular_values;
    sv.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Eigenvalues of a general complex matrix via Schur decomposition, with a
/// relaxed-tolerance retry before giving up.
fn general_eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let dim = m.nrows();
    let budget = 400 * dim + 4000;
    for eps in [1e-13, 1e-10] {
        if let Some(schur) = m.clone().try_schur(eps, budget) {
            if let Some(vals) = schur.eigenvalues() {
                return Ok(vals.iter().cloned().collect());
            }
        }
    }
    Err(Error::Numerical(
        "complex Schur decomposition did not converge".into(),
    ))
}

fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    let h = (m + m.adjoint()).scale(0.5);
    let dim = h.nrows();
    SymmetricEigen::try_new(h, 1e-14, 400 * dim + 4000)
        .map(|eig| eig.eigenvalues.iter().cloned().collect())
        .ok_or_else(|| Error::Numerical("Hermitian eigensolver did not converge".into()))
}

/// Collapses the `2n` eigenvalues of `chi(T)` (which occur in conjugate
/// pairs) into spheres: canonical representatives within `merge_tol`
/// coalesce with summed multiplicity.
fn cluster_to_spheres(mut reps: Vec<(f64, f64)>, merge_tol: f64) -> Result<Vec<Sphere>> {
    reps.sort_by(|a, b| a.partial_cmp(b).expect("finite representatives"));
    let mut clusters: Vec<(f64, f64, usize)> = Vec::new(); // (sum re, sum im, count)
    for (re, im) in reps {
        let joined = clusters.last_mut().is_some_and(|(sre, sim, cnt)| {
            let cre = *sre / *cnt as f64;
            let cim = *sim / *cnt as f64;
            if ((re - cre).powi(2) + (im - cim).powi(2)).sqrt() <= merge_tol {
                *sre += re;
                *sim += im;
                *cnt += 1;
                true
            } else {
                false
            }
        });
        if !joined {
            clusters.push((re, im, 1));
        }
    }
    let mut spheres = Vec::with_capacity(clusters.len());
    for (sre, sim, cnt) in clusters {
        if cnt % 2 != 0 {
            return Err(Error::Numerical(
                "eigenvalues of the embedding did not pair into conjugate spheres".into(),
            ));
        }
        let re = sre / cnt as f64;
        let im = sim / cnt as f64;
        let im = if im.abs() <= merge_tol { 0.0 } else { im };
        spheres.push(Sphere {
            re,
            im,
            mult: cnt / 2,
        });
    }
    Ok(spheres)
}

/// Spherical point spectrum of `T`.
pub fn spectrum(t: &QMatrix) -> Result<SphericalSpectrum> {
    let norm = op_norm(t);
    let merge_tol = MERGE_TOL * 1f64.max(norm);
    let block = chi(t);
    let selfadjoint = op_norm(&(t - &t.adjoint())) <= CLASSIFY_TOL * 1f64.max(norm);
    let reps: Vec<(f64, f64)> = if selfadjoint {
        hermitian_eigenvalues(block.matrix())?
            .into_iter()
            .map(|l| (l, 0.0))
            .collect()
    } else {
        general_eigenvalues(block.matrix())?
            .into_iter()
            .map(|z| (z.re, z.im.abs()))
            .collect()
    };
    let spheres = cluster_to_spheres(reps, merge_tol)?;
    Ok(SphericalSpectrum { spheres })
}

/// Spherical spectral radius `r_S(T)`; satisfies `r_S(T) <= ||T||`.
pub fn spectral_radius(t: &QMatrix) -> Result<f64> {
    Ok(spectrum(t)?.radius())
}

/// `m_T`/`M_T` for a selfadjoint operator; usage error otherwise.
pub fn bounds(t: &QMatrix) -> Result<SpectralBounds> {
    require_selfadjoint(t, "bounds")?;
    let spec = spectrum(t)?;
    Ok(SpectralBounds {
        lower: spec.min_real(),
        upper: spec.max_real(),
    })
}

/// Normalized resolvent coefficient `c_n = sum_{h=0..n} u^h v^{n-h}` with
/// `u = q/|q|`, `v = conj(u)`, evaluated as an explicit quaternion sum.
/// The sum is self-conjugate, hence real up to roundoff; `a_n = c_n /
/// |q|^(n+2)`.
pub fn resolvent_coefficient_sum(q: Quaternion, n: usize) -> Quaternion {
    let qa = q.abs();
    assert!(qa > 0.0, "coefficient of the zero quaternion");
    let u = q * (1.0 / qa);
    let v = u.conj();
    // v^n, then term_{h+1} = u * term_h * u removes one v and adds one u.
    let mut term = Quaternion::ONE;
    for _ in 0..n {
        term = term * v;
    }
    let mut sum = Quaternion::ZERO;
    for _ in 0..=n {
        sum = sum + term;
        term = u * term * u;
    }
    sum
}

/// Real resolvent coefficient `a_n = |q|^(-2n-2) sum_{h=0..n} q^h conj(q)^(n-h)`,
/// in the closed Dirichlet-kernel form `sin((n+1)t)/sin(t) / |q|^(n+2)`
/// where `t` is the argument of `q` in its complex slice.
pub fn resolvent_coefficient(q: Quaternion, n: usize) -> f64 {
    let qa = q.abs();
    assert!(qa > 0.0, "coefficient of the zero quaternion");
    let theta = q.imag_norm().atan2(q.re());
    let s = theta.sin();
    let c_n = if s.abs() < 1e-9 {
        (n as f64 + 1.0) * theta.cos().powi(n as i32)
    } else {
        ((n as f64 + 1.0) * theta).sin() / s
    };
    c_n / qa.powi(n as i32 + 2)
}

/// Outcome of the resolvent power series.
#[derive(Clone, Debug)]
pub struct ResolventSeries {
    /// Partial sum `sum_{n=0..N} T^n a_n`, approximating `Delta_q(T)^{-1}`.
    pub matrix: QMatrix,
    /// Number of terms `N + 1` actually summed.
    pub terms_used: usize,
    /// The geometric tail bound at truncation.
    pub tail_bound: f64,
}

const MAX_SERIES_TERMS: usize = 20_000;

/// Truncated series `sum_n T^n a_n` for `Delta_q(T)^{-1}`, valid on
/// `|q| > ||T||`. The truncation index is the smallest `N` whose tail bound
/// `sum_{n>N} (n+1) ||T||^n / |q|^(n+2)` is at most `rel_tol`.
pub fn resolvent_series(t: &QMatrix, q: Quaternion, rel_tol: f64) -> Result<ResolventSeries> {
    let t_norm = op_norm(t);
    let qa = q.abs();
    if qa <= t_norm {
        return Err(Error::OutsideConvergenceRegion {
            q_abs: qa,
            op_norm: t_norm,
        });
    }
    let ratio = t_norm / qa;
    let tail = |n: usize| -> f64 {
        // sum_{k>n} (k+1) x^k / qa^2 = x^(n+1) ((n+2) - (n+1) x) / ((1-x)^2 qa^2)
        let np1 = n as f64 + 1.0;
        ratio.powf(np1) * ((np1 + 1.0) - np1 * ratio) / ((1.0 - ratio).powi(2) * qa * qa)
    };
    let mut last = 0usize;
    while tail(last) > rel_tol {
        last += 1;
        if last > MAX_SERIES_TERMS {
            return Err(Error::Numerical(format!(
                "resolvent series needs more than {MAX_SERIES_TERMS} terms at rel_tol {rel_tol:e}"
            )));
        }
    }

    // Work with the scaled power (T/|q|)^n so neither factor of the term
    // T^n a_n can overflow on its own.
    let theta = q.imag_norm().atan2(q.re());
    let sin_theta = theta.sin();
    let scaled_t = t.scale_real(1.0 / qa);
    let mut power = QMatrix::identity(t.n());
    let mut acc = QMatrix::zeros(t.n());
    for n in 0..=last {
        let c_n = if sin_theta.abs() < 1e-9 {
            (n as f64 + 1.0) * theta.cos().powi(n as i32)
        } else {
            ((n as f64 + 1.0) * theta).sin() / sin_theta
        };
        acc = &acc + &power.scale_real(c_n / (qa * qa));
        if n < last {
            power = power.matmul(&scaled_t).expect("same dimension");
        }
    }
    Ok(ResolventSeries {
        matrix: acc,
        terms_used: last + 1,
        tail_bound: tail(last),
    })
}

/// Options for [`spectrum_algebra_checks`].
#[derive(Clone, Copy, Debug)]
pub struct AlgebraCheckOptions {
    /// Also verify the sum containment `sigma_S(S+T) c sigma_S(S) + sigma_S(T)`.
    /// Requires a commuting selfadjoint pair.
    pub include_sum_check: bool,
    pub tol: f64,
}

/// Verifies the product-spectrum identities `sigma_S(ST) u {0} =
/// sigma_S(TS) u {0}` and `r_S(ST) = r_S(TS)`, and optionally the sum
/// containment for commuting selfadjoint pairs. Each check is reported as a
/// `[measured, allowed]` chain.
pub fn spectrum_algebra_checks(
    s: &QMatrix,
    t: &QMatrix,
    opts: AlgebraCheckOptions,
    witness: Witness,
) -> Result<Vec<ChainReport>> {
    if s.n() != t.n() {
        return Err(Error::DimensionMismatch {
            expected: s.n(),
            got: t.n(),
        });
    }
    let st = s.matmul(t).expect("same dimension");
    let ts = t.matmul(s).expect("same dimension");
    let spec_st = spectrum(&st)?;
    let spec_ts = spectrum(&ts)?;
    let scale = 1f64.max(spec_st.radius()).max(spec_ts.radius());

    let mut reports = Vec::new();
    let hd = spec_st.with_zero().hausdorff_distance(&spec_ts.with_zero());
    reports.push(ChainReport::evaluate(
        "spectrum-algebra:product",
        vec![
            Term::new("hausdorff(sigma(ST)u{0}, sigma(TS)u{0})", hd),
            Term::new("tolerance", 1e-8 * scale),
        ],
        opts.tol,
        false,
        witness.clone(),
    ));
    let radius_gap = (spec_st.radius() - spec_ts.radius()).abs();
    reports.push(ChainReport::evaluate(
        "spectrum-algebra:radius",
        vec![
            Term::new("|r_S(ST) - r_S(TS)|", radius_gap),
            Term::new("tolerance", 1e-9 * scale),
        ],
        opts.tol,
        false,
        witness.clone(),
    ));

    if opts.include_sum_check {
        let comm = op_norm(&(&st - &ts));
        let comm_tol = 1e-10 * 1f64.max(op_norm(s) * op_norm(t));
        if comm > comm_tol {
            return Err(Error::Hypothesis(format!(
                "sum containment requires a commuting pair (||ST - TS|| = {comm:.3e})"
            )));
        }
        if !classify(s).selfadjoint || !classify(t).selfadjoint {
            return Err(Error::Hypothesis(
                "sum containment check is restricted to commuting selfadjoint pairs".into(),
            ));
        }
        let spec_sum = spectrum(&(s + t))?;
        let spec_s = spectrum(s)?;
        let spec_t = spectrum(t)?;
        let sum_scale = 1f64.max(spec_sum.radius());
        let worst = spec_sum
            .spheres
            .iter()
            .map(|w| {
                spec_s
                    .spheres
                    .iter()
                    .flat_map(|a| spec_t.spheres.iter().map(move |b| (a.re + b.re, a.im + b.im)))
                    .map(|(re, im)| ((w.re - re).powi(2) + (w.im - im).powi(2)).sqrt())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max);
        reports.push(ChainReport::evaluate(
            "spectrum-algebra:sum",
            vec![
                Term::new("max dist(sigma(S+T), sigma(S)+sigma(T))", worst),
                Term::new("tolerance", 1e-8 * sum_scale),
            ],
            opts.tol,
            false,
            witness,
        ));
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol::CHAIN_TOL;

    fn diag(values: &[f64]) -> QMatrix {
        QMatrix::from_real_diag(values)
    }

    fn sphere_eq(s: &Sphere, re: f64, im: f64, mult: usize, tol: f64) -> bool {
        (s.re - re).abs() <= tol && (s.im - im).abs() <= tol && s.mult == mult
    }

    #[test]
    fn delta_scalar_examples() {
        // T = [[2]], q = 3: 4 - 12 + 9 = 1
        let t = diag(&[2.0]);
        let d = delta(&t, Quaternion::from_real(3.0));
        assert!(d.get(0, 0).approx_eq(Quaternion::ONE, 1e-14));
        // T = [[2]], q = 2: 4 - 8 + 4 = 0
        let d = delta(&t, Quaternion::from_real(2.0));
        assert!(d.get(0, 0).approx_eq(Quaternion::ZERO, 1e-14));
        // T = [[j]], q = i: -1 - 0 + 1 = 0
        let t = QMatrix::from_rows(vec![vec![Quaternion::J]]).unwrap();
        let d = delta(&t, Quaternion::I);
        assert!(d.get(0, 0).approx_eq(Quaternion::ZERO, 1e-14));
    }

    #[test]
    fn spectrum_of_real_diag() {
        let spec = spectrum(&diag(&[1.0, 4.0])).unwrap();
        assert_eq!(spec.spheres.len(), 2);
        assert!(sphere_eq(&spec.spheres[0], 1.0, 0.0, 1, 1e-12));
        assert!(sphere_eq(&spec.spheres[1], 4.0, 0.0, 1, 1e-12));
        assert_eq!(spec.total_multiplicity(), 2);
    }

    #[test]
    fn spectrum_of_j_is_the_unit_imaginary_sphere() {
        let t = QMatrix::from_rows(vec![vec![Quaternion::J]]).unwrap();
        let spec = spectrum(&t).unwrap();
        assert_eq!(spec.spheres.len(), 1);
        assert!(sphere_eq(&spec.spheres[0], 0.0, 1.0, 1, 1e-12));
        assert!((spectral_radius(&t).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_of_selfadjoint_block() {
        // [[2, j], [-j, 2]]: (T - 2I)^2 = I, spectrum {1, 3}
        let t = QMatrix::from_rows(vec![
            vec![Quaternion::from_real(2.0), Quaternion::J],
            vec![-Quaternion::J, Quaternion::from_real(2.0)],
        ])
        .unwrap();
        let spec = spectrum(&t).unwrap();
        assert_eq!(spec.spheres.len(), 2);
        assert!(sphere_eq(&spec.spheres[0], 1.0, 0.0, 1, 1e-9));
        assert!(sphere_eq(&spec.spheres[1], 3.0, 0.0, 1, 1e-9));
        let b = bounds(&t).unwrap();
        assert!((b.lower - 1.0).abs() < 1e-9 && (b.upper - 3.0).abs() < 1e-9);
    }

    #[test]
    fn representatives_make_delta_singular() {
        let t = QMatrix::from_rows(vec![
            vec![Quaternion::from_real(2.0), Quaternion::J],
            vec![-Quaternion::J, Quaternion::from_real(2.0)],
        ])
        .unwrap();
        let scale = 1f64.max(op_norm(&t).powi(2));
        for s in &spectrum(&t).unwrap().spheres {
            assert!(delta_min_singular(&t, s.representative()) <= RANK_TOL * scale);
        }
    }

    #[test]
    fn bounds_rejects_non_selfadjoint() {
        let t = QMatrix::from_rows(vec![vec![Quaternion::J]]).unwrap();
        assert!(matches!(bounds(&t), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn identity_bounds_are_degenerate() {
        let b = bounds(&QMatrix::identity(3)).unwrap();
        assert_eq!((b.lower, b.upper), (1.0, 1.0));
    }

    #[test]
    fn resolvent_of_zero_matrix_is_scaled_identity() {
        let t = QMatrix::zeros(2);
        let q = Quaternion::from_real(3.0);
        let out = resolvent_series(&t, q, 1e-12).unwrap();
        assert_eq!(out.terms_used, 1);
        assert!(out
            .matrix
            .approx_eq(&QMatrix::identity(2).scale_real(1.0 / 9.0), 1e-14));
    }

    #[test]
    fn resolvent_matches_direct_inversion_on_scalar() {
        // T = [[1]], q = 3: Delta = 1 - 6 + 9 = 4, inverse 0.25
        let t = diag(&[1.0]);
        let out = resolvent_series(&t, Quaternion::from_real(3.0), 1e-12).unwrap();
        assert!((out.matrix.get(0, 0).re() - 0.25).abs() < 1e-10);
    }

    #[test]
    fn resolvent_rejects_small_q() {
        let t = diag(&[1.0]);
        let err = resolvent_series(&t, Quaternion::from_real(0.5), 1e-10);
        assert!(matches!(err, Err(Error::OutsideConvergenceRegion { .. })));
    }

    #[test]
    fn coefficient_sum_is_real_and_matches_closed_form() {
        let q = Quaternion::new(1.3, -0.4, 2.0, 0.7);
        let qa = q.abs();
        for n in 0..=20 {
            let c = resolvent_coefficient_sum(q, n);
            assert!(
                c.imag_norm() <= 1e-14 * (n as f64 + 1.0),
                "imag residue at n = {n}: {}",
                c.imag_norm()
            );
            let a_n = resolvent_coefficient(q, n);
            assert!((c.re() / qa.powi(n as i32 + 2) - a_n).abs() <= 1e-12 * a_n.abs().max(1.0));
        }
    }

    #[test]
    fn product_spectra_agree_for_commuting_diagonals() {
        let s = diag(&[1.0, 2.0]);
        let t = diag(&[3.0, 4.0]);
        let reports = spectrum_algebra_checks(
            &s,
            &t,
            AlgebraCheckOptions {
                include_sum_check: true,
                tol: CHAIN_TOL,
            },
            Witness::default(),
        )
        .unwrap();
        assert_eq!(reports.len(), 3);
        assert!(reports.iter().all(|r| r.pass), "{reports:?}");
        // sigma(S+T) = {4, 6} inside {1,2}+{3,4}
        let sum_spec = spectrum(&(&s + &t)).unwrap();
        assert!(sphere_eq(&sum_spec.spheres[0], 4.0, 0.0, 1, 1e-12));
        assert!(sphere_eq(&sum_spec.spheres[1], 6.0, 0.0, 1, 1e-12));
    }

    #[test]
    fn sum_check_on_noncommuting_pair_is_usage_error() {
        let s = QMatrix::from_rows(vec![
            vec![Quaternion::ZERO, Quaternion::ONE],
            vec![Quaternion::ONE, Quaternion::ZERO],
        ])
        .unwrap();
        let t = diag(&[1.0, 2.0]);
        let err = spectrum_algebra_checks(
            &s,
            &t,
            AlgebraCheckOptions {
                include_sum_check: true,
                tol: CHAIN_TOL,
            },
            Witness::default(),
        );
        assert!(matches!(err, Err(Error::Hypothesis(_))));
    }

    #[test]
    fn spectrum_json_shape() {
        let spec = spectrum(&diag(&[1.0, 4.0])).unwrap();
        let json = crate::io::to_json(&spec);
        assert_eq!(
            json,
            r#"{"spheres":[{"re":1.0,"im":0.0,"mult":1},{"re":4.0,"im":0.0,"mult":1}]}"#
        );
    }
}
