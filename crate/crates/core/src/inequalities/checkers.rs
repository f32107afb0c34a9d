//! One checker per inequality chain.
//!
//! Operator expressions such as `exp(f'(T) f(T)^{-1} (T - cI))` are always
//! realized as a single scalar function of `T` through the functional
//! calculus, never as products of separately computed matrices: every
//! factor is a function of `T`, so commutation and exactness hold by
//! construction.

use crate::error::{Error, Result};
use crate::funcalc::{fc_apply, Interval, ScalarFunction, KYFAN_EPS};
use crate::qlinalg::{QMatrix, QVector};
use crate::report::{ChainReport, Term, Witness};
use crate::tol::{CHAIN_TOL, DOMAIN_MARGIN};

use super::{
    require_domain, require_interval, require_positive_invertible, require_selfadjoint_in,
    require_unit, Realness,
};

/// Shared checker configuration: chain tolerance and the witness stamped
/// into every report.
#[derive(Clone, Debug)]
pub struct CheckContext {
    pub tol: f64,
    pub witness: Witness,
}

impl Default for CheckContext {
    fn default() -> Self {
        Self {
            tol: CHAIN_TOL,
            witness: Witness::default(),
        }
    }
}

impl CheckContext {
    pub fn new(tol: f64, witness: Witness) -> Self {
        Self { tol, witness }
    }
}

fn margin_for(norm: f64) -> f64 {
    DOMAIN_MARGIN * 1f64.max(norm)
}

fn require_flags(f: &ScalarFunction, theorem: &str, convex: bool, log_convex: bool) -> Result<()> {
    if convex && !f.convex {
        return Err(Error::Hypothesis(format!(
            "{theorem} requires a convex function, `{}` is not flagged convex",
            f.id()
        )));
    }
    if log_convex && !(f.log_convex && f.positive) {
        return Err(Error::Hypothesis(format!(
            "{theorem} requires a positive log-convex function, `{}` is not",
            f.id()
        )));
    }
    Ok(())
}

fn require_differentiable(f: &ScalarFunction, theorem: &str) -> Result<()> {
    if !f.differentiable {
        return Err(Error::Hypothesis(format!(
            "{theorem} requires a differentiable function, `{}` is not",
            f.id()
        )));
    }
    Ok(())
}

/// Jensen inequality: `f(<Tx,x>) <= <f(T)x,x>` for convex `f`.
pub fn check_mond_pecaric(
    t: &QMatrix,
    f: &ScalarFunction,
    x: &QVector,
    m: f64,
    upper: f64,
    ctx: &CheckContext,
) -> Result<Vec<ChainReport>> {
    require_interval(m, upper)?;
    require_unit(x)?;
    let (_, norm) = require_selfadjoint_in(t, m, upper)?;
    require_flags(f, "mond-pecaric", true, false)?;
    require_domain(f, m, upper)?;
    let margin = margin_for(norm);
    let mut guard = Realness::new();
    let c = guard.expect(t, x)?;
    let left = f.eval_clamped(c, margin)?;
    let right = guard.expect(&fc_apply(t, f)?, x)?;
    Ok(vec![ChainReport::evaluate(
        "mond-pecaric",
        vec![Term::new("f(<Tx,x>)", left), Term::new("<f(T)x,x>", right)],
        ctx.tol,
        guard.invalid,
        ctx.witness.clone(),
    )])
}

/// Chord bound: `<f(T)x,x> <= ((M-c) f(m) + (c-m) f(M)) / (M-m)`.
pub fn check_lah_ribaric(
    t: &QMatrix,
    f: &ScalarFunction,
    x: &QVector,
    m: f64,
    upper: f64,
    ctx: &CheckContext,
) -> Result<Vec<ChainReport>> {
    require_interval(m, upper)?;
    require_unit(x)?;
    let (_, norm) = require_selfadjoint_in(t, m, upper)?;
    require_flags(f, "lah-ribaric", true, false)?;
    require_domain(f, m, upper)?;
    let margin = margin_for(norm);
    let mut guard = Realness::new();
    let c = guard.expect(t, x)?;
    let left = guard.expect(&fc_apply(t, f)?, x)?;
    let chord = ((upper - c) * f.eval_clamped(m, margin)?
        + (c - m) * f.eval_clamped(upper, margin)?)
        / (upper - m);
    Ok(vec![ChainReport::evaluate(
        "lah-ribaric",
        vec![
            Term::new("<f(T)x,x>", left),
            Term::new("((M-<Tx,x>)f(m)+(<Tx,x>-m)f(M))/(M-m)", chord),
        ],
        ctx.tol,
        guard.invalid,
        ctx.witness.clone(),
    )])
}

/// Power-mean comparison of `<T^r x,x>` against `<Tx,x>^r` by exponent
/// regime; `T` positive (invertible for `r < 0`).
pub fn check_holder_mccarthy(
    t: &QMatrix,
    x: &QVector,
    r: f64,
    ctx: &CheckContext,
) -> Result<Vec<ChainReport>> {
    require_unit(x)?;
    if r == 0.0 || r == 1.0 || !r.is_finite() {
        return Err(Error::Hypothesis(format!(
            "holder-mccarthy requires r > 1, 0 < r < 1, or r < 0; got r = {r}"
        )));
    }
    let f = ScalarFunction::power(r);
    if !crate::qlinalg::classify(t).selfadjoint {
        return Err(Error::Hypothesis("operator must be selfadjoint".into()));
    }
    let b = crate::spectral::bounds(t)?;
    if r < 0.0 {
        if !(b.lower > 0.0) {
            return Err(Error::Hypothesis(format!(
                "holder-mccarthy with r < 0 requires a positive invertible operator (min sigma_S = {})",
                b.lower
            )));
        }
    } else if b.lower < -1e-9 * 1f64.max(b.upper.abs()) {
        return Err(Error::Hypothesis(format!(
            "holder-mccarthy requires a positive operator (min sigma_S = {})",
            b.lower
        )));
    }
    let margin = margin_for(b.lower.abs().max(b.upper.abs()));
    let mut guard = Realness::new();
    let c = guard.expect(t, x)?;
    let cr = f.eval_clamped(c, margin)?;
    let tr = guard.expect(&fc_apply(t, &f)?, x)?;
    let terms = if r > 1.0 || r < 0.0 {
        vec![Term::new("(<Tx,x>)^r", cr), Term::new("<T^r x,x>", tr)]
    } else {
        vec![Term::new("<T^r x,x>", tr), Term::new("(<Tx,x>)^r", cr)]
    };
    Ok(vec![ChainReport::evaluate(
        "holder-mccarthy",
        terms,
        ctx.tol,
        guard.invalid,
        ctx.witness.clone(),
    )])
}

/// The three mondlog terms `[f(c), exp<ln f(T)x,x>, <f(T)x,x>]`.
fn mondlog_terms(
    t: &QMatrix,
    f: &ScalarFunction,
    x: &QVector,
    margin: f64,
    guard: &mut Realness,
) -> Result<[f64; 3]> {
    let c = guard.expect(t, x)?;
    let left = f.eval_clamped(c, margin)?;
    let mid = guard.expect(&fc_apply(t, &f.log_function()?)?, x)?.exp();
    let right = guard.expect(&fc_apply(t, f)?, x)?;
    Ok([left, mid, right])
}

/// Log-convex refinement of the Jensen inequality:
/// `f(<Tx,x>) <= exp<ln f(T)x,x> <= <f(T)x,x>`.
pub fn check_mondlog(
    t: &QMatrix,
    f: &ScalarFunction,
    x: &QVector,
    m: f64,
    upper: f64,
    ctx: &CheckContext,
) -> Result<Vec<ChainReport>> {
    require_interval(m, upper)?;
    require_unit(x)?;
    let (_, norm) = require_selfadjoint_in(t, m, upper)?;
    require_flags(f, "mondlog", false, true)?;
    require_domain(f, m, upper)?;
    let mut guard = Realness::new();
    let [left, mid, right] = mondlog_terms(t, f, x, margin_for(norm), &mut guard)?;
    Ok(vec![ChainReport::evaluate(
        "mondlog",
        vec![
            Term::new("f(<Tx,x>)", left),
            Term::new("exp<ln f(T)x,x>", mid),
            Term::new("<f(T)x,x>", right),
        ],
        ctx.tol,
        guard.invalid,
        ctx.witness.clone(),
    )])
}

/// Multi-operator mondlog with weights `sum_j ||x_j||^2 = 1`.
pub fn check_mondlog_multi(
    ts: &[QMatrix],
    f: &ScalarFunction,
    xs: &[QVector],
    m: f64,
    upper: f64,
    ctx: &CheckContext,
) -> Result<Vec<ChainReport>> {
    require_interval(m, upper)?;
    if ts.is_empty() || ts.len() != xs.len() {
        return Err(Error::Hypothesis(format!(
            "mondlog-multi needs matching non-empty operator/vector lists ({} vs {})",
            ts.len(),
            xs.len()
        )));
    }
    let weight: f64 = xs.iter().map(|x| x.norm().powi(2)).sum();
    if (weight - 1.0).abs() > 1e-10 {
        return Err(Error::Hypothesis(format!(
            "mondlog-multi requires sum ||x_j||^2 = 1, got {weight}"
        )));
    }
    require_flags(f, "mondlog-multi", false, true)?;
    require_domain(f, m, upper)?;
    let mut norm_max = 0.0f64;
    for (t, x) in ts.iter().zip(xs) {
        let (_, norm) = require_selfadjoint_in(t, m, upper)?;
        if t.n() != x.dim() {
            return Err(Error::DimensionMismatch {
                expected: t.n(),
                got: x.dim(),
            });
        }
        norm_max = norm_max.max(norm);
    }
    let margin = margin_for(norm_max);
    let mut guard = Realness::new();
    let lnf = f.log_function()?;
    let mut c_sum = 0.0;
    let mut mid_sum = 0.0;
    let mut right_sum = 0.0;
    for (t, x) in ts.iter().zip(xs) {
        c_sum += guard.expect(t, x)?;
        mid_sum += guard.expect(&fc_apply(t, &lnf)?, x)?;
        right_sum += guard.expect(&fc_apply(t, f)?, x)?;
    }
    Ok(vec![ChainReport::evaluate(
        "mondlog-multi",
        vec![
            Term::new("f(sum <T_j x_j,x_j>)", f.eval_clamped(c_sum, margin)?),
            Term::new("exp(sum <ln f(T_j) x_j,x_j>)", mid_sum.exp()),
            Term::new("sum <f(T_j) x_j,x_j>", right_sum),
        ],
        ctx.tol,
        guard.invalid,
        ctx.witness.clone(),
    )])
}

/// Refined Hoelder-McCarthy for `r < 0`:
/// `<Tx,x>^r <= exp<ln(T^r)x,x> <= <T^r x,x>`.
pub fn check_neg_power_refinement(
    t: &QMatrix,
    x: &QVector,
    r: f64,
    ctx: &CheckContext,
) -> Result<Vec<ChainReport>> {
    if !(r < 0.0) {
        return Err(Error::Hypothesis(format!(
            "neg-power-refinement requires r < 0, got {r}"
        )));
    }
    require_unit(x)?;
    let b = require_positive_invertible(t, "neg-power-refinement")?;
    let f = ScalarFunction::power(r);
    let mut guard = Realness::new();
    let [left, mid, right] = mondlog_terms(t, &f, x, margin_for(b.upper.abs()), &mut guard)?;
    Ok(vec![ChainReport::evaluate(
        "neg-power-refinement",
        vec![
            Term::new("(<Tx,x>)^r", left),
            Term::new("exp<ln(T^r)x,x>", mid),
            Term::new("<T^r x,x>", right),
        ],
        ctx.tol,
        guard.invalid,
        ctx.witness.clone(),
    )])
}

/// Shared guts for the geometric-interpolant refinements of the chord
/// bound. The interpolant is
/// `g(t) = f(m)^((M-t)/(M-m)) f(M)^((t-m)/(M-m))`.
fn lah_log_chains(
    t: &QMatrix,
    f: &ScalarFunction,
    x: &QVector,
    m: f64,
    upper: f64,
    ctx: &CheckContext,
    theorem: &str,
    id_i: &str,
    id_ii: &str,
) -> Result<Vec<ChainReport>> {
    require_interval(m, upper)?;
    require_unit(x)?;
    let (_, norm) = require_selfadjoint_in(t, m, upper)?;
    require_flags(f, theorem, false, true)?;
    require_domain(f, m, upper)?;
    let margin = margin_for(norm);
    let log_f = f.log_arc()?;
    let (lf_m, lf_upper) = (log_f(m), log_f(upper));
    let span = upper - m;
    let g = ScalarFunction::custom(format!("interp({})", f.id()), f.domain, move |t| {
        (((upper - t) * lf_m + (t - m) * lf_upper) / span).exp()
    });

    let mut guard = Realness::new();
    let c = guard.expect(t, x)?;
    let gv = guard.expect(&fc_apply(t, &g)?, x)?;
    let fv = guard.expect(&fc_apply(t, f)?, x)?;
    let chord =
        ((upper - c) * f.eval_clamped(m, margin)? + (c - m) * f.eval_clamped(upper, margin)?) / span;
    let scalar_mid = (((upper - c) * lf_m + (c - m) * lf_upper) / span).exp();
    let f_at_c = f.eval_clamped(c, margin)?;

    Ok(vec![
        ChainReport::evaluate(
            id_i,
            vec![
                Term::new("<f(T)x,x>", fv),
                Term::new("<[f(m)^((MI-T)/(M-m)) f(M)^((T-mI)/(M-m))]x,x>", gv),
                Term::new("((M-<Tx,x>)f(m)+(<Tx,x>-m)f(M))/(M-m)", chord),
            ],
            ctx.tol,
            guard.invalid,
            ctx.witness.clone(),
        ),
        ChainReport::evaluate(
            id_ii,
            vec![
                Term::new("f(<Tx,x>)", f_at_c),
                Term::new("f(m)^((M-<Tx,x>)/(M-m)) f(M)^((<Tx,x>-m)/(M-m))", scalar_mid),
                Term::new("<[f(m)^((MI-T)/(M-m)) f(M)^((T-mI)/(M-m))]x,x>", gv),
            ],
            ctx.tol,
            guard.invalid,
            ctx.witness.clone(),
        ),
    ])
}

/// Geometric-interpolant refinement of the chord bound for log-convex `f`
/// (two chains).
pub fn check_lah_log(
    t: &QMatrix,
    f: &ScalarFunction,
    x: &QVector,
    m: f64,
    upper: f64,
    ctx: &CheckContext,
) -> Result<Vec<ChainReport>> {
    lah_log_chains(t, f, x, m, upper, ctx, "lah-log", "lah-log:i", "lah-log:ii")
}

/// The lah-log chains instantiated with `f(t) = t^r`, `r < 0`, on
/// `0 < m < M` (two chains).
pub fn check_power_lah(
    t: &QMatrix,
    x: &QVector,
    m: f64,
    upper: f64,
    r: f64,
    ctx: &CheckContext,
) -> Result<Vec<ChainReport>> {
    if !(r < 0.0) {
        return Err(Error::Hypothesis(format!("power-lah requires r < 0, got {r}")));
    }
    if !(m > 0.0) {
        return Err(Error::Hypothesis(format!(
            "power-lah requires 0 < m < M, got m = {m}"
        )));
    }
    require_positive_invertible(t, "power-lah")?;
    let f = ScalarFunction::power(r);
    lah_log_chains(t, &f, x, m, upper, ctx, "power-lah", "power-lah:i", "power-lah:ii")
}

fn jensen_gap_convex_chain(
    t: &QMatrix,
    f: &ScalarFunction,
    x: &QVector,
    margin: f64,
    ctx: &CheckContext,
    id: &str,
) -> Result<ChainReport> {
    let fd = f.deriv_arc()?;
    let mut guard = Realness::new();
    let c = guard.expect(t, x)?;
    let gap = guard.expect(&fc_apply(t, f)?, x)? - f.eval_clamped(c, margin)?;
    let t_fp = ScalarFunction::custom(format!("t*{}'", f.id()), f.domain, {
        let fd = fd.clone();
        move |t| t * fd(t)
    });
    let fp = ScalarFunction::custom(format!("{}'", f.id()), f.domain, move |t| fd(t));
    let bound =
        guard.expect(&fc_apply(t, &t_fp)?, x)? - c * guard.expect(&fc_apply(t, &fp)?, x)?;
    Ok(ChainReport::evaluate(
        id,
        vec![
            Term::new("0", 0.0),
            Term::new("<f(T)x,x> - f(<Tx,x>)", gap),
            Term::new("<f'(T)Tx,x> - <Tx,x><f'(T)x,x>", bound),
        ],
        ctx.tol,
        guard.invalid,
        ctx.witness.clone(),
    ))
}

fn jensen_gap_log_chain(
    t: &QMatrix,
    f: &ScalarFunction,
    x: &QVector,
    margin: f64,
    ctx: &CheckContext,
    id: &str,
) -> Result<ChainReport> {
    let fd = f.deriv_arc()?;
    let fe = f.eval_arc();
    let mut guard = Realness::new();
    let c = guard.expect(t, x)?;
    let mid = guard.expect(&fc_apply(t, &f.log_function()?)?, x)?.exp()
        / f.eval_clamped(c, margin)?;
    let t_logd = ScalarFunction::custom(format!("t*{}'/{}", f.id(), f.id()), f.domain, {
        let fd = fd.clone();
        let fe = fe.clone();
        move |t| t * fd(t) / fe(t)
    });
    let logd = ScalarFunction::custom(format!("{}'/{}", f.id(), f.id()), f.domain, move |t| {
        fd(t) / fe(t)
    });
    let bound = (guard.expect(&fc_apply(t, &t_logd)?, x)?
        - c * guard.expect(&fc_apply(t, &logd)?, x)?)
    .exp();
    Ok(ChainReport::evaluate(
        id,
        vec![
            Term::new("1", 1.0),
            Term::new("exp<ln f(T)x,x> / f(<Tx,x>)", mid),
            Term::new("exp(<f'(T)f(T)^-1 Tx,x> - <Tx,x><f'(T)f(T)^-1 x,x>)", bound),
        ],
        ctx.tol,
        guard.invalid,
        ctx.witness.clone(),
    ))
}

/// Jensen-gap sandwich for differentiable `f` with `[m, M]` inside the open
/// interior of the domain. Emits the additive chain for convex `f` and the
/// multiplicative chain for positive log-convex `f` (both when both apply).
pub fn check_jensen_gap(
    t: &QMatrix,
    f: &ScalarFunction,
    x: &QVector,
    m: f64,
    upper: f64,
    ctx: &CheckContext,
) -> Result<Vec<ChainReport>> {
    require_interval(m, upper)?;
    require_unit(x)?;
    let (_, norm) = require_selfadjoint_in(t, m, upper)?;
    require_differentiable(f, "jensen-gap")?;
    if !f.domain.contains_in_interior(m, upper) {
        return Err(Error::Hypothesis(format!(
            "jensen-gap requires [{m}, {upper}] inside the open interior of the domain {}",
            f.domain
        )));
    }
    let margin = margin_for(norm);
    let mut out = Vec::new();
    if f.convex {
        out.push(jensen_gap_convex_chain(t, f, x, margin, ctx, "jensen-gap:i")?);
    }
    if f.log_convex && f.positive {
        out.push(jensen_gap_log_chain(t, f, x, margin, ctx, "jensen-gap:ii")?);
    }
    if out.is_empty() {
        return Err(Error::Hypothesis(format!(
            "jensen-gap requires f convex (variant i) or positive log-convex (variant ii); `{}` is neither",
            f.id()
        )));
    }
    Ok(out)
}

/// Gap corollary for `f(t) = t^{-r}`, `r > 0`:
/// `<Tx,x>^r exp<ln(T^{-r})x,x> <= exp(r(<Tx,x><T^{-1}x,x> - 1))`.
pub fn check_neg_power_gap(
    t: &QMatrix,
    x: &QVector,
    r: f64,
    ctx: &CheckContext,
) -> Result<Vec<ChainReport>> {
    if !(r > 0.0) {
        return Err(Error::Hypothesis(format!("neg-power-gap requires r > 0, got {r}")));
    }
    require_unit(x)?;
    require_positive_invertible(t, "neg-power-gap")?;
    let mut guard = Realness::new();
    let c = guard.expect(t, x)?;
    let ln_neg_pow = ScalarFunction::custom("ln(t^-r)", Interval::positive_axis(), move |t| {
        -r * t.ln()
    });
    let left = c.powf(r) * guard.expect(&fc_apply(t, &ln_neg_pow)?, x)?.exp();
    let t_inv = guard.expect(&fc_apply(t, &ScalarFunction::power(-1.0))?, x)?;
    let right = (r * (c * t_inv - 1.0)).exp();
    Ok(vec![ChainReport::evaluate(
        "neg-power-gap",
        vec![
            Term::new("<Tx,x>^r exp<ln(T^-r)x,x>", left),
            Term::new("exp(r(<Tx,x><T^-1x,x> - 1))", right),
        ],
        ctx.tol,
        guard.invalid,
        ctx.witness.clone(),
    )])
}

fn mult_jensen_chain(
    t: &QMatrix,
    f: &ScalarFunction,
    x: &QVector,
    margin: f64,
    ctx: &CheckContext,
    id: &str,
) -> Result<ChainReport> {
    let fd = f.deriv_arc()?;
    let fe = f.eval_arc();
    let mut guard = Realness::new();
    let c = guard.expect(t, x)?;
    let f_c = f.eval_clamped(c, margin)?;
    let slope = fd(
        f.domain
            .clamp_with_margin(c, margin)
            .ok_or_else(|| Error::DomainEscape {
                value: c,
                domain: f.domain.to_string(),
            })?,
    ) / f_c;
    let frozen = ScalarFunction::custom("exp(k(t-c))", f.domain, move |t| {
        (slope * (t - c)).exp()
    });
    let second = guard.expect(&fc_apply(t, &frozen)?, x)?;
    let third = guard.expect(&fc_apply(t, f)?, x)? / f_c;
    let moving = ScalarFunction::custom("exp(f'/f (t-c))", f.domain, {
        let fd = fd.clone();
        let fe = fe.clone();
        move |t| ((fd(t) / fe(t)) * (t - c)).exp()
    });
    let fourth = guard.expect(&fc_apply(t, &moving)?, x)?;
    Ok(ChainReport::evaluate(
        id,
        vec![
            Term::new("1", 1.0),
            Term::new("<exp[(f'(c)/f(c))(T-cI)]x,x>", second),
            Term::new("<f(T)x,x>/f(<Tx,x>)", third),
            Term::new("<exp[f'(T)f(T)^-1(T-cI)]x,x>", fourth),
        ],
        ctx.tol,
        guard.invalid,
        ctx.witness.clone(),
    ))
}

/// Refinement and reverse of the multiplicative Jensen inequality for
/// positive log-convex differentiable `f` (four terms).
pub fn check_mult_jensen(
    t: &QMatrix,
    f: &ScalarFunction,
    x: &QVector,
    m: f64,
    upper: f64,
    ctx: &CheckContext,
) -> Result<Vec<ChainReport>> {
    require_interval(m, upper)?;
    require_unit(x)?;
    let (_, norm) = require_selfadjoint_in(t, m, upper)?;
    require_flags(f, "mult-jensen", false, true)?;
    require_differentiable(f, "mult-jensen")?;
    if !f.domain.contains_in_interior(m, upper) {
        return Err(Error::Hypothesis(format!(
            "mult-jensen requires [{m}, {upper}] inside the open interior of the domain {}",
            f.domain
        )));
    }
    Ok(vec![mult_jensen_chain(
        t,
        f,
        x,
        margin_for(norm),
        ctx,
        "mult-jensen",
    )?])
}

/// Gruess-type sandwich with the constant bound
/// `exp((1/4)(M-m)(f'(M)/f(M) - f'(m)/f(m)))`.
pub fn check_gruss_type(
    t: &QMatrix,
    f: &ScalarFunction,
    m: f64,
    upper: f64,
    x: &QVector,
    ctx: &CheckContext,
) -> Result<Vec<ChainReport>> {
    require_interval(m, upper)?;
    require_unit(x)?;
    let (_, norm) = require_selfadjoint_in(t, m, upper)?;
    require_flags(f, "gruss-type", false, true)?;
    require_differentiable(f, "gruss-type")?;
    require_domain(f, m, upper)?;
    let fd = f.deriv_arc()?;
    let fe = f.eval_arc();
    let kappa = fd(upper) / fe(upper) - fd(m) / fe(m);
    let log_f = f.log_arc()?;
    let (lf_m, lf_upper) = (log_f(m), log_f(upper));
    let span = upper - m;

    let mut guard = Realness::new();
    let den = guard.expect(&fc_apply(t, f)?, x)?;
    let g2 = ScalarFunction::custom("f(M)^((T-mI)/(M-m)) f(m)^((MI-T)/(M-m))", f.domain, move |t| {
        (((t - m) * lf_upper + (upper - t) * lf_m) / span).exp()
    });
    let second = guard.expect(&fc_apply(t, &g2)?, x)? / den;
    let mid = ScalarFunction::custom("f(t)exp(((M-t)(t-m)/(M-m))k)", f.domain, {
        let fe = fe.clone();
        move |t| fe(t) * (((upper - t) * (t - m) / span) * kappa).exp()
    });
    let third = guard.expect(&fc_apply(t, &mid)?, x)? / den;
    let bound = (0.25 * span * kappa).exp();
    Ok(vec![ChainReport::evaluate(
        "gruss-type",
        vec![
            Term::new("1", 1.0),
            Term::new("<f(M)^((T-mI)/(M-m)) f(m)^((MI-T)/(M-m))x,x> / <f(T)x,x>", second),
            Term::new("<f(T)exp(((MI-T)(T-mI)/(M-m))(f'(M)/f(M)-f'(m)/f(m)))x,x> / <f(T)x,x>", third),
            Term::new("exp((1/4)(M-m)(f'(M)/f(M)-f'(m)/f(m)))", bound),
        ],
        ctx.tol,
        guard.invalid,
        ctx.witness.clone(),
    )])
}

/// Scalar Ky Fan inequality via Jensen for `f(t) = ((1-t)/t)^r`:
/// `f(sum p_i t_i) <= prod f(t_i)^{p_i}` for weights on `(0, 1/2)`.
pub fn check_kyfan_scalar(
    ts: &[f64],
    ps: &[f64],
    r: f64,
    ctx: &CheckContext,
) -> Result<Vec<ChainReport>> {
    if ts.is_empty() || ts.len() != ps.len() {
        return Err(Error::Hypothesis(format!(
            "kyfan-scalar needs matching non-empty t/p lists ({} vs {})",
            ts.len(),
            ps.len()
        )));
    }
    if !(r > 0.0) {
        return Err(Error::Hypothesis(format!("kyfan-scalar requires r > 0, got {r}")));
    }
    if ps.iter().any(|&p| !(p > 0.0)) {
        return Err(Error::Hypothesis("weights p_i must be strictly positive".into()));
    }
    let total: f64 = ps.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::Hypothesis(format!(
            "weights must sum to 1, got {total}"
        )));
    }
    if ts.iter().any(|&t| !(t > 0.0 && t < 0.5)) {
        return Err(Error::Hypothesis("every t_i must lie in (0, 1/2)".into()));
    }
    let w: f64 = ts.iter().zip(ps).map(|(t, p)| t * p).sum();
    let left = ((1.0 - w) / w).powf(r);
    let right = ts
        .iter()
        .zip(ps)
        .map(|(&t, &p)| p * r * ((1.0 - t).ln() - t.ln()))
        .sum::<f64>()
        .exp();
    Ok(vec![ChainReport::evaluate(
        "kyfan-scalar",
        vec![
            Term::new("((1-sum p t)/(sum p t))^r", left),
            Term::new("prod ((1-t_i)/t_i)^(r p_i)", right),
        ],
        ctx.tol,
        false,
        ctx.witness.clone(),
    )])
}

/// Which of the three operator Ky Fan chains to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KyfanVariant {
    /// Mondlog chain for `f = ((1-t)/t)^r`.
    V1,
    /// The two lah-log chains for the same `f`.
    V2,
    /// The two gap chains (multiplicative Jensen gap and its reverse).
    V3,
}

impl KyfanVariant {
    pub fn from_index(v: u8) -> Result<Self> {
        match v {
            1 => Ok(Self::V1),
            2 => Ok(Self::V2),
            3 => Ok(Self::V3),
            other => Err(Error::Hypothesis(format!(
                "kyfan-operator variant must be 1, 2, or 3; got {other}"
            ))),
        }
    }
}

fn require_kyfan_interval(m: f64, upper: f64) -> Result<()> {
    let domain = Interval::closed(KYFAN_EPS, 0.5 - KYFAN_EPS);
    if !domain.contains(m) || !domain.contains(upper) {
        return Err(Error::Hypothesis(format!(
            "kyfan requires [m, M] within {domain}, got [{m}, {upper}]"
        )));
    }
    Ok(())
}

/// Operator Ky Fan chains for `sigma_S(T) in [m, M] in (0, 1/2)`.
pub fn check_kyfan_operator(
    t: &QMatrix,
    x: &QVector,
    m: f64,
    upper: f64,
    r: f64,
    variant: KyfanVariant,
    ctx: &CheckContext,
) -> Result<Vec<ChainReport>> {
    require_interval(m, upper)?;
    require_kyfan_interval(m, upper)?;
    require_unit(x)?;
    let (_, norm) = require_selfadjoint_in(t, m, upper)?;
    require_positive_invertible(t, "kyfan-operator")?;
    let f = ScalarFunction::kyfan(r)?;
    let margin = margin_for(norm);
    match variant {
        KyfanVariant::V1 => {
            let mut guard = Realness::new();
            let [left, mid, right] = mondlog_terms(t, &f, x, margin, &mut guard)?;
            Ok(vec![ChainReport::evaluate(
                "kyfan-operator:v1",
                vec![
                    Term::new("(<(I-T)x,x><Tx,x>^-1)^r", left),
                    Term::new("exp<ln((T^-1(I-T))^r)x,x>", mid),
                    Term::new("<((I-T)T^-1)^r x,x>", right),
                ],
                ctx.tol,
                guard.invalid,
                ctx.witness.clone(),
            )])
        }
        KyfanVariant::V2 => lah_log_chains(
            t,
            &f,
            x,
            m,
            upper,
            ctx,
            "kyfan-operator",
            "kyfan-operator:v2:i",
            "kyfan-operator:v2:ii",
        ),
        KyfanVariant::V3 => Ok(vec![
            jensen_gap_log_chain(t, &f, x, margin, ctx, "kyfan-operator:v3:gap")?,
            mult_jensen_chain(t, &f, x, margin, ctx, "kyfan-operator:v3:mult")?,
        ]),
    }
}

/// Side-by-side evaluation of the two readings of the variant-2 middle
/// operator exponent.
///
/// The default reading pairs `f(M)` with `(T - mI)/(M - m)`, consistent
/// with the general log-convex interpolant. The literal reading pairs it
/// with `(T - MI)/(M - m)`, which rescales the middle operator by the
/// constant `((1-M)/M)^{-r} < 1` and is expected to break the chain; this
/// diagnostic reports whether it ever does, without guessing intent.
#[derive(Clone, Debug)]
pub struct KyfanExponentDiagnostic {
    pub default_reports: Vec<ChainReport>,
    pub literal_reports: Vec<ChainReport>,
    pub literal_violations: usize,
}

pub fn kyfan_exponent_diagnostic(
    t: &QMatrix,
    x: &QVector,
    m: f64,
    upper: f64,
    r: f64,
    ctx: &CheckContext,
) -> Result<KyfanExponentDiagnostic> {
    let default_reports = check_kyfan_operator(t, x, m, upper, r, KyfanVariant::V2, ctx)?;
    let f = ScalarFunction::kyfan(r)?;
    let margin = margin_for(require_selfadjoint_in(t, m, upper)?.1);
    let log_f = f.log_arc()?;
    let (lf_m, lf_upper) = (log_f(m), log_f(upper));
    let span = upper - m;
    // Literal middle operator: f(m)^((M-t)/(M-m)) * f(M)^((t-M)/(M-m)).
    let literal = ScalarFunction::custom("literal-interp", f.domain, move |t| {
        (((upper - t) * lf_m + (t - upper) * lf_upper) / span).exp()
    });

    let mut guard = Realness::new();
    let c = guard.expect(t, x)?;
    let lit_gv = guard.expect(&fc_apply(t, &literal)?, x)?;
    let fv = guard.expect(&fc_apply(t, &f)?, x)?;
    let chord =
        ((upper - c) * f.eval_clamped(m, margin)? + (c - m) * f.eval_clamped(upper, margin)?) / span;
    let scalar_mid = (((upper - c) * lf_m + (c - m) * lf_upper) / span).exp();
    let f_at_c = f.eval_clamped(c, margin)?;

    let literal_reports = vec![
        ChainReport::evaluate(
            "kyfan-operator:v2:i:literal-M",
            vec![
                Term::new("<f(T)x,x>", fv),
                Term::new("<literal-middle x,x>", lit_gv),
                Term::new("chord", chord),
            ],
            ctx.tol,
            guard.invalid,
            ctx.witness.clone(),
        ),
        ChainReport::evaluate(
            "kyfan-operator:v2:ii:literal-M",
            vec![
                Term::new("f(<Tx,x>)", f_at_c),
                Term::new("scalar middle", scalar_mid),
                Term::new("<literal-middle x,x>", lit_gv),
            ],
            ctx.tol,
            guard.invalid,
            ctx.witness.clone(),
        ),
    ];
    let literal_violations = literal_reports
        .iter()
        .filter(|r| !r.pass && !r.invalid)
        .count();
    Ok(KyfanExponentDiagnostic {
        default_reports,
        literal_reports,
        literal_violations,
    })
}
