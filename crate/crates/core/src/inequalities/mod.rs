//! Inequality-chain checkers, the seeded verification campaign driver, and
//! the adversarial slack search.
//!
//! Each checker evaluates one theorem's full chain of real values on a
//! concrete instance `(T, f, x, [m, M], r)` and renders a tolerance verdict
//! as one or more [`ChainReport`]s. Hypothesis violations are usage errors
//! naming the failed hypothesis, never silent skips.

mod campaign;
mod checkers;
mod search;

pub use campaign::{
    run_campaign, run_trial, trial_seed, validate_config, CampaignSummary, RunConfig, TheoremId,
};
pub use checkers::{
    check_gruss_type, check_holder_mccarthy, check_jensen_gap, check_kyfan_operator,
    check_kyfan_scalar, check_lah_log, check_lah_ribaric, check_mond_pecaric, check_mondlog,
    check_mondlog_multi, check_mult_jensen, check_neg_power_gap, check_neg_power_refinement,
    check_power_lah, kyfan_exponent_diagnostic, CheckContext, KyfanExponentDiagnostic,
    KyfanVariant,
};
pub use search::{run_search, SearchOutcome};

use crate::error::{Error, Result};
use crate::qlinalg::{classify, op_norm, QMatrix, QVector};
use crate::spectral::{bounds, SpectralBounds};
use crate::tol::{REALNESS_TOL, UNIT_NORM_TOL};

/// Tracks imaginary residues of inner products that must be real. A residue
/// beyond `1e-10 * (1 + |value|)` marks the trial invalid (numerical noise)
/// rather than failed (theorem violation).
#[derive(Debug, Default)]
pub(crate) struct Realness {
    pub invalid: bool,
    pub max_residue: f64,
}

impl Realness {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn take(&mut self, re: f64, imag: f64) -> f64 {
        self.max_residue = self.max_residue.max(imag);
        if imag > REALNESS_TOL * (1.0 + re.abs()) {
            self.invalid = true;
        }
        re
    }

    /// `<Ax, x>` as a guarded real value.
    pub fn expect(&mut self, a: &QMatrix, x: &QVector) -> Result<f64> {
        let q = a.apply(x)?.inner(x)?;
        Ok(self.take(q.re(), q.imag_norm()))
    }
}

pub(crate) fn require_unit(x: &QVector) -> Result<()> {
    let norm = x.norm();
    if (norm - 1.0).abs() > UNIT_NORM_TOL {
        return Err(Error::Hypothesis(format!(
            "x must be a unit vector (||x|| = {norm})"
        )));
    }
    Ok(())
}

pub(crate) fn require_interval(m: f64, upper: f64) -> Result<()> {
    if !(m < upper) {
        return Err(Error::Hypothesis(format!(
            "spectrum interval requires m < M, got [{m}, {upper}]"
        )));
    }
    Ok(())
}

/// Selfadjointness plus `sigma_S(T) in [m, M]` (with a scale-relative
/// slack for roundoff). Returns `(bounds, ||T||)` for downstream use.
pub(crate) fn require_selfadjoint_in(
    t: &QMatrix,
    m: f64,
    upper: f64,
) -> Result<(SpectralBounds, f64)> {
    if !classify(t).selfadjoint {
        return Err(Error::Hypothesis("operator must be selfadjoint".into()));
    }
    let b = bounds(t)?;
    let slack = 1e-9 * 1f64.max(m.abs()).max(upper.abs());
    if b.lower < m - slack || b.upper > upper + slack {
        return Err(Error::Hypothesis(format!(
            "sigma_S(T) = [{}, {}] must lie in [{m}, {upper}]",
            b.lower, b.upper
        )));
    }
    Ok((b, op_norm(t)))
}

/// Selfadjoint with strictly positive spectrum (positive invertible).
pub(crate) fn require_positive_invertible(t: &QMatrix, what: &str) -> Result<SpectralBounds> {
    if !classify(t).selfadjoint {
        return Err(Error::Hypothesis(format!("{what}: operator must be selfadjoint")));
    }
    let b = bounds(t)?;
    if !(b.lower > 0.0) {
        return Err(Error::Hypothesis(format!(
            "{what}: operator must be positive and invertible (min sigma_S = {})",
            b.lower
        )));
    }
    Ok(b)
}

pub(crate) fn require_domain(f: &crate::funcalc::ScalarFunction, m: f64, upper: f64) -> Result<()> {
    if !f.domain.contains(m) || !f.domain.contains(upper) {
        return Err(Error::Hypothesis(format!(
            "[{m}, {upper}] must lie inside the domain {} of `{}`",
            f.domain,
            f.id()
        )));
    }
    Ok(())
}
