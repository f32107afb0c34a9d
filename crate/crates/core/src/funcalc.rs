//! Continuous functional calculus for selfadjoint operators.
//!
//! `f(T)` is computed through the complex-adjoint embedding: diagonalize the
//! Hermitian matrix `chi(T) = U D U^H`, apply `f` entrywise to `D`, form
//! `U f(D) U^H`, project the result back onto the quaternionic structure,
//! and pull it through `chi_inv`. The result is selfadjoint, commutes with
//! `T`, and is a unital algebra homomorphism in `f` up to roundoff.
//!
//! [`ScalarFunction`] descriptors carry the function, its derivative and
//! logarithm where defined, and the convexity/positivity attributes the
//! inequality checkers validate as hypotheses. The registry grammar is
//! `<id>[:r=<float>]`, e.g. `exp`, `power:r=-1`, `kyfan:r=2`.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qlinalg::{chi, chi_inv, op_norm, require_selfadjoint, ComplexBlock, QMatrix, QVector};
use crate::report::{ChainReport, Term, Witness};
use crate::spectral::{bounds, spectrum};
use crate::tol::DOMAIN_MARGIN;

/// Domain restriction for the Ky Fan function: `[eps, 1/2 - eps]`.
pub const KYFAN_EPS: f64 = 1e-6;

/// A real interval with independently open or closed endpoints; infinite
/// endpoints are open.
#[derive(Clone, Copy, Debug)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub const REAL_LINE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
        lo_closed: false,
        hi_closed: false,
    };

    pub const fn closed(lo: f64, hi: f64) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    /// `(0, +inf)`.
    pub const fn positive_axis() -> Self {
        Interval {
            lo: 0.0,
            hi: f64::INFINITY,
            lo_closed: false,
            hi_closed: false,
        }
    }

    /// `[0, +inf)`.
    pub const fn nonnegative_axis() -> Self {
        Interval {
            lo: 0.0,
            hi: f64::INFINITY,
            lo_closed: true,
            hi_closed: false,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }

    /// Whether `[m, M]` lies strictly inside the interval's interior.
    pub fn contains_in_interior(&self, m: f64, upper: f64) -> bool {
        self.lo < m && upper < self.hi
    }

    /// Points inside pass through; points within `margin` of a closed
    /// boundary clamp to it; anything else has escaped the domain.
    pub fn clamp_with_margin(&self, x: f64, margin: f64) -> Option<f64> {
        if self.contains(x) {
            Some(x)
        } else if self.lo_closed && x < self.lo && x >= self.lo - margin {
            Some(self.lo)
        } else if self.hi_closed && x > self.hi && x <= self.hi + margin {
            Some(self.hi)
        } else {
            None
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo_b = if self.lo_closed { '[' } else { '(' };
        let hi_b = if self.hi_closed { ']' } else { ')' };
        write!(f, "{}{}, {}{}", lo_b, self.lo, self.hi, hi_b)
    }
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Descriptor of a real function on an interval, with derivative and
/// logarithm where they exist, plus the attributes the theorems hypothesize.
///
/// `positive` means `f > 0` on the whole domain (and gates `log_eval`);
/// `log_convex` implies `convex` and the registry sets both accordingly.
#[derive(Clone)]
pub struct ScalarFunction {
    id: String,
    pub domain: Interval,
    eval_fn: ScalarFn,
    deriv_fn: Option<ScalarFn>,
    log_fn: Option<ScalarFn>,
    pub convex: bool,
    pub log_convex: bool,
    pub positive: bool,
    pub differentiable: bool,
    pub param: Option<f64>,
}

impl fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarFunction")
            .field("id", &self.id)
            .field("domain", &self.domain)
            .field("convex", &self.convex)
            .field("log_convex", &self.log_convex)
            .field("positive", &self.positive)
            .field("differentiable", &self.differentiable)
            .field("param", &self.param)
            .finish()
    }
}

impl ScalarFunction {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.eval_fn)(t)
    }

    /// Evaluates after clamping `t` into the domain (margin policy of the
    /// functional calculus); errors when `t` has genuinely escaped.
    pub fn eval_clamped(&self, t: f64, margin: f64) -> Result<f64> {
        let c = self
            .domain
            .clamp_with_margin(t, margin)
            .ok_or_else(|| Error::DomainEscape {
                value: t,
                domain: self.domain.to_string(),
            })?;
        Ok(self.eval(c))
    }

    pub fn deriv(&self, t: f64) -> Result<f64> {
        match &self.deriv_fn {
            Some(d) => Ok(d(t)),
            None => Err(Error::Hypothesis(format!(
                "function `{}` is not differentiable",
                self.id
            ))),
        }
    }

    pub fn log_eval(&self, t: f64) -> Result<f64> {
        match &self.log_fn {
            Some(l) => Ok(l(t)),
            None => Err(Error::Hypothesis(format!(
                "function `{}` is not positive, ln f undefined",
                self.id
            ))),
        }
    }

    /// `ln f` as a standalone descriptor (requires positivity).
    pub fn log_function(&self) -> Result<ScalarFunction> {
        let log = self.log_fn.clone().ok_or_else(|| {
            Error::Hypothesis(format!(
                "function `{}` is not positive, ln f undefined",
                self.id
            ))
        })?;
        Ok(ScalarFunction::custom(
            format!("ln({})", self.id),
            self.domain,
            move |t| log(t),
        ))
    }

    /// Bare descriptor for composite expressions: only the evaluation map
    /// and domain, no attribute flags.
    pub fn custom(
        id: impl Into<String>,
        domain: Interval,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        ScalarFunction {
            id: id.into(),
            domain,
            eval_fn: Arc::new(eval),
            deriv_fn: None,
            log_fn: None,
            convex: false,
            log_convex: false,
            positive: false,
            differentiable: false,
            param: None,
        }
    }

    pub fn with_deriv(mut self, deriv: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.deriv_fn = Some(Arc::new(deriv));
        self.differentiable = true;
        self
    }

    /// `exp(t)` on the real line: convex, log-convex, positive.
    pub fn exp() -> Self {
        let mut f = Self::custom("exp", Interval::REAL_LINE, f64::exp).with_deriv(f64::exp);
        f.log_fn = Some(Arc::new(|t| t));
        f.convex = true;
        f.log_convex = true;
        f.positive = true;
        f
    }

    /// `t` on the real line (affine, hence convex).
    pub fn identity() -> Self {
        let mut f = Self::custom("identity", Interval::REAL_LINE, |t| t).with_deriv(|_| 1.0);
        f.convex = true;
        f
    }

    /// `ln t` on `(0, +inf)` (concave, not positive).
    pub fn ln() -> Self {
        Self::custom("ln", Interval::positive_axis(), f64::ln).with_deriv(|t| 1.0 / t)
    }

    /// `t^r`. Domain `(0, +inf)` for `r < 0`, `[0, +inf)` otherwise;
    /// convex iff `r(r-1) >= 0`, log-convex (hence positive) iff `r <= 0`.
    pub fn power(r: f64) -> Self {
        let domain = if r < 0.0 {
            Interval::positive_axis()
        } else {
            Interval::nonnegative_axis()
        };
        let mut f = Self::custom(format!("power:r={r}"), domain, move |t| t.powf(r))
            .with_deriv(move |t| r * t.powf(r - 1.0));
        f.convex = r * (r - 1.0) >= 0.0;
        f.log_convex = r <= 0.0;
        f.positive = r <= 0.0;
        if r <= 0.0 {
            f.log_fn = Some(Arc::new(move |t| r * t.ln()));
        }
        f.param = Some(r);
        f
    }

    /// `t^(-r)` for `r > 0` on `(0, +inf)`: convex, log-convex, positive.
    pub fn neg_power(r: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::FunctionSpec(format!("neg_power requires r > 0, got {r}")));
        }
        let mut f = Self::power(-r);
        f.id = format!("neg_power:r={r}");
        f.param = Some(r);
        Ok(f)
    }

    /// `((1-t)/t)^r` for `r > 0`, hard-restricted to `[eps, 1/2 - eps]`
    /// with `eps = 1e-6`: positive and log-convex there.
    pub fn kyfan(r: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::FunctionSpec(format!("kyfan requires r > 0, got {r}")));
        }
        let domain = Interval::closed(KYFAN_EPS, 0.5 - KYFAN_EPS);
        let mut f = Self::custom(format!("kyfan:r={r}"), domain, move |t| {
            ((1.0 - t) / t).powf(r)
        })
        // f' = f * (ln f)' with (ln f)' = -r / (t (1 - t))
        .with_deriv(move |t| ((1.0 - t) / t).powf(r) * (-r / (t * (1.0 - t))));
        f.log_fn = Some(Arc::new(move |t| r * ((1.0 - t).ln() - t.ln())));
        f.convex = true;
        f.log_convex = true;
        f.positive = true;
        f.param = Some(r);
        Ok(f)
    }

    /// Parses `<id>[:r=<float>]`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = || Error::FunctionSpec(spec.to_string());
        let (id, param) = match spec.split_once(':') {
            None => (spec, None),
            Some((id, rest)) => {
                let value = rest.strip_prefix("r=").ok_or_else(bad)?;
                let r: f64 = value.parse().map_err(|_| bad())?;
                if !r.is_finite() {
                    return Err(bad());
                }
                (id, Some(r))
            }
        };
        match (id, param) {
            ("exp", None) => Ok(Self::exp()),
            ("identity", None) => Ok(Self::identity()),
            ("ln", None) => Ok(Self::ln()),
            ("power", Some(r)) => Ok(Self::power(r)),
            ("neg_power", Some(r)) => Self::neg_power(r),
            ("kyfan", Some(r)) => Self::kyfan(r),
            _ => Err(bad()),
        }
    }

    /// Registry ids accepted by [`ScalarFunction::parse`].
    pub fn registry_ids() -> &'static [&'static str] {
        &["exp", "identity", "ln", "power", "neg_power", "kyfan"]
    }

    pub(crate) fn eval_arc(&self) -> ScalarFn {
        self.eval_fn.clone()
    }

    pub(crate) fn deriv_arc(&self) -> Result<ScalarFn> {
        self.deriv_fn.clone().ok_or_else(|| {
            Error::Hypothesis(format!("function `{}` is not differentiable", self.id))
        })
    }

    pub(crate) fn log_arc(&self) -> Result<ScalarFn> {
        self.log_fn.clone().ok_or_else(|| {
            Error::Hypothesis(format!(
                "function `{}` is not positive, ln f undefined",
                self.id
            ))
        })
    }
}

fn hermitize(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (m + m.adjoint()).scale(0.5)
}

struct HermitianEig {
    values: Vec<f64>,
    vectors: DMatrix<Complex64>,
}

fn hermitian_eigen(t: &QMatrix) -> Result<HermitianEig> {
    let block = chi(&t.symmetrized());
    let h = hermitize(block.matrix());
    let dim = h.nrows();
    let eig = SymmetricEigen::try_new(h, 1e-14, 400 * dim + 4000)
        .ok_or_else(|| Error::Numerical("Hermitian eigensolver did not converge".into()))?;
    Ok(HermitianEig {
        values: eig.eigenvalues.iter().cloned().collect(),
        vectors: eig.eigenvectors,
    })
}

/// Applies `f` to a selfadjoint operator through its Hermitian
/// eigendecomposition. Eigenvalues within the domain margin
/// `1e-9 * max(1, ||T||)` of a closed boundary are clamped to it; an
/// eigenvalue genuinely outside the domain is a domain error naming it.
pub fn fc_apply(t: &QMatrix, f: &ScalarFunction) -> Result<QMatrix> {
    require_selfadjoint(t, "fc_apply")?;
    let eig = hermitian_eigen(t)?;
    let t_norm = eig.values.iter().fold(0.0f64, |a, &l| a.max(l.abs()));
    let margin = DOMAIN_MARGIN * 1f64.max(t_norm);
    let mapped: Vec<f64> = eig
        .values
        .iter()
        .map(|&l| f.eval_clamped(l, margin))
        .collect::<Result<_>>()?;
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        mapped.len(),
        mapped.iter().map(|&v| Complex64::new(v, 0.0)),
    ));
    let m = &eig.vectors * d * eig.vectors.adjoint();
    let mut block = ComplexBlock::from_matrix(t.n(), hermitize(&m));
    block.symmetrize_structure();
    chi_inv(&block)
}

/// Checks `||f(T)|| = max |f| over sigma_S(T)` (the calculus is isometric),
/// reported as a `[measured, allowed]` chain.
pub fn fc_norm_isometry_check(
    t: &QMatrix,
    f: &ScalarFunction,
    tol: f64,
    witness: Witness,
) -> Result<ChainReport> {
    let ft = fc_apply(t, f)?;
    let ft_norm = op_norm(&ft);
    let margin = DOMAIN_MARGIN * 1f64.max(op_norm(t));
    let mut sup = 0.0f64;
    for sphere in &spectrum(t)?.spheres {
        sup = sup.max(f.eval_clamped(sphere.re, margin)?.abs());
    }
    Ok(ChainReport::evaluate(
        "calculus-axioms:isometry",
        vec![
            Term::new("| ||f(T)|| - max|f(sigma_S(T))| |", (ft_norm - sup).abs()),
            Term::new("tolerance", 1e-9 * 1f64.max(ft_norm)),
        ],
        tol,
        false,
        witness,
    ))
}

/// Checks positivity of the calculus: `f >= 0` on the spectrum implies
/// `f(T) >= 0` (smallest eigenvalue above `-1e-9 * scale`).
pub fn fc_positivity_check(
    t: &QMatrix,
    f: &ScalarFunction,
    tol: f64,
    witness: Witness,
) -> Result<ChainReport> {
    let margin = DOMAIN_MARGIN * 1f64.max(op_norm(t));
    for sphere in &spectrum(t)?.spheres {
        let v = f.eval_clamped(sphere.re, margin)?;
        if v < 0.0 {
            return Err(Error::Hypothesis(format!(
                "positivity check requires f >= 0 on the spectrum; f({}) = {v}",
                sphere.re
            )));
        }
    }
    let ft = fc_apply(t, f)?;
    let low = bounds(&ft)?.lower;
    Ok(ChainReport::evaluate(
        "calculus-axioms:positivity",
        vec![
            Term::new("-min sigma_S(f(T))", -low),
            Term::new("tolerance", 1e-9 * 1f64.max(op_norm(&ft))),
        ],
        tol,
        false,
        witness,
    ))
}

/// Operator-order consequence of positivity: `f >= g` pointwise on
/// `[m_T, M_T]` implies `f(T) >= g(T)`.
pub fn fc_order_check(
    t: &QMatrix,
    f: &ScalarFunction,
    g: &ScalarFunction,
    tol: f64,
    witness: Witness,
) -> Result<ChainReport> {
    let b = bounds(t)?;
    let samples = 512;
    for k in 0..=samples {
        let x = b.lower + (b.upper - b.lower) * k as f64 / samples as f64;
        let margin = DOMAIN_MARGIN * 1f64.max(x.abs());
        let (fv, gv) = (f.eval_clamped(x, margin)?, g.eval_clamped(x, margin)?);
        if fv < gv {
            return Err(Error::Hypothesis(format!(
                "order check requires f >= g on [m_T, M_T]; at t = {x}: {fv} < {gv}"
            )));
        }
    }
    let diff = &fc_apply(t, f)? - &fc_apply(t, g)?;
    let low = bounds(&diff)?.lower;
    Ok(ChainReport::evaluate(
        "calculus-axioms:order",
        vec![
            Term::new("-min sigma_S(f(T) - g(T))", -low),
            Term::new("tolerance", 1e-9 * 1f64.max(op_norm(&diff))),
        ],
        tol,
        false,
        witness,
    ))
}

/// Rayleigh quotient `<Tx, x>` with its imaginary residue (real for
/// selfadjoint `T`).
pub fn rayleigh(t: &QMatrix, x: &QVector) -> Result<(f64, f64)> {
    let q = t.apply(x)?.inner(x)?;
    Ok((q.re(), q.imag_norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion;
    use crate::tol::CHAIN_TOL;

    fn selfadjoint_block() -> QMatrix {
        QMatrix::from_rows(vec![
            vec![Quaternion::from_real(2.0), Quaternion::J],
            vec![-Quaternion::J, Quaternion::from_real(2.0)],
        ])
        .unwrap()
    }

    #[test]
    fn identity_function_reproduces_t() {
        let t = selfadjoint_block();
        let out = fc_apply(&t, &ScalarFunction::identity()).unwrap();
        assert!(out.approx_eq(&t, 1e-12));
    }

    #[test]
    fn sqrt_of_diagonal() {
        let t = QMatrix::from_real_diag(&[1.0, 4.0]);
        let out = fc_apply(&t, &ScalarFunction::power(0.5)).unwrap();
        assert!(out.approx_eq(&QMatrix::from_real_diag(&[1.0, 2.0]), 1e-12));
    }

    #[test]
    fn square_matches_matrix_product() {
        let t = selfadjoint_block();
        let via_fc = fc_apply(&t, &ScalarFunction::power(2.0)).unwrap();
        let via_mul = t.matmul(&t).unwrap();
        assert!(via_fc.approx_eq(&via_mul, 1e-10));
    }

    #[test]
    fn rejects_non_selfadjoint_input() {
        let t = QMatrix::from_rows(vec![vec![Quaternion::J]]).unwrap();
        assert!(matches!(
            fc_apply(&t, &ScalarFunction::exp()),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn domain_escape_names_the_eigenvalue() {
        let t = QMatrix::from_real_diag(&[-1.0, 4.0]);
        let err = fc_apply(&t, &ScalarFunction::ln()).unwrap_err();
        match err {
            Error::DomainEscape { value, .. } => assert!((value + 1.0).abs() < 1e-9),
            other => panic!("expected domain escape, got {other}"),
        }
    }

    #[test]
    fn exp_ln_roundtrip() {
        let t = QMatrix::from_real_diag(&[0.5, 2.0, 3.0]);
        let back = fc_apply(&fc_apply(&t, &ScalarFunction::ln()).unwrap(), &ScalarFunction::exp())
            .unwrap();
        assert!(back.approx_eq(&t, 1e-10));
    }

    #[test]
    fn isometry_on_diagonal_sqrt() {
        let t = QMatrix::from_real_diag(&[1.0, 4.0]);
        let report = fc_norm_isometry_check(
            &t,
            &ScalarFunction::power(0.5),
            CHAIN_TOL,
            Witness::default(),
        )
        .unwrap();
        assert!(report.pass);
        let ft = fc_apply(&t, &ScalarFunction::power(0.5)).unwrap();
        assert!((op_norm(&ft) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn positivity_of_square() {
        let t = QMatrix::from_real_diag(&[-2.0, 1.0]);
        let report =
            fc_positivity_check(&t, &ScalarFunction::power(2.0), CHAIN_TOL, Witness::default())
                .unwrap();
        assert!(report.pass);
    }

    #[test]
    fn order_exp_above_affine() {
        // exp(t) >= 1 + t on [0, 1]
        let t = QMatrix::from_real_diag(&[0.0, 0.5, 1.0]);
        let affine = ScalarFunction::custom("1+t", Interval::REAL_LINE, |t| 1.0 + t);
        let report = fc_order_check(
            &t,
            &ScalarFunction::exp(),
            &affine,
            CHAIN_TOL,
            Witness::default(),
        )
        .unwrap();
        assert!(report.pass);
    }

    #[test]
    fn equal_functions_give_zero_difference() {
        let t = selfadjoint_block();
        let diff = &fc_apply(&t, &ScalarFunction::exp()).unwrap()
            - &fc_apply(&t, &ScalarFunction::exp()).unwrap();
        assert!(op_norm(&diff) < 1e-13);
    }

    #[test]
    fn parse_registry_specs() {
        assert_eq!(ScalarFunction::parse("exp").unwrap().id(), "exp");
        let p = ScalarFunction::parse("power:r=-1").unwrap();
        assert_eq!(p.param, Some(-1.0));
        assert!(p.log_convex && p.positive);
        let k = ScalarFunction::parse("kyfan:r=2").unwrap();
        assert!(k.convex && k.log_convex);
        assert!(ScalarFunction::parse("power").is_err());
        assert!(ScalarFunction::parse("kyfan:r=-2").is_err());
        assert!(ScalarFunction::parse("exp:r=1").is_err());
        assert!(ScalarFunction::parse("mystery").is_err());
    }

    #[test]
    fn power_flags_by_regime() {
        assert!(ScalarFunction::power(2.0).convex);
        assert!(!ScalarFunction::power(2.0).log_convex);
        assert!(!ScalarFunction::power(0.5).convex);
        let inv = ScalarFunction::power(-1.0);
        assert!(inv.convex && inv.log_convex && inv.positive);
    }

    #[test]
    fn kyfan_domain_is_hard_restricted() {
        let k = ScalarFunction::kyfan(1.0).unwrap();
        assert!(k.domain.contains(KYFAN_EPS));
        assert!(!k.domain.contains(0.5 - KYFAN_EPS / 2.0));
        assert!(matches!(
            k.eval_clamped(0.6, 1e-9),
            Err(Error::DomainEscape { .. })
        ));
    }
}
