//! Seeded verification campaigns: per-theorem instance generation and the
//! trial loop behind `qineq verify`.
//!
//! The master seed splits per trial through a counter-based derivation, so
//! trial `k` of a campaign is reproducible in isolation from `(master, k)`.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcalc::{fc_apply, ScalarFunction, KYFAN_EPS};
use crate::qlinalg::{
    op_norm, random_normal_matrix, random_selfadjoint, random_unit_vector, random_unit_vector_rng,
    random_unitary_rng, QMatrix, QVector,
};
use crate::report::{ChainReport, Term, Witness};
use crate::spectral::{spectrum_algebra_checks, AlgebraCheckOptions};
use crate::tol::CHAIN_TOL;

use super::checkers::{
    check_gruss_type, check_holder_mccarthy, check_jensen_gap, check_kyfan_operator,
    check_kyfan_scalar, check_lah_log, check_lah_ribaric, check_mond_pecaric, check_mondlog,
    check_mondlog_multi, check_mult_jensen, check_neg_power_gap, check_neg_power_refinement,
    check_power_lah, kyfan_exponent_diagnostic, CheckContext, KyfanVariant,
};
use super::Realness;

/// Every theorem id the verifier knows. The first fourteen are inequality
/// chains; the last two verify the spectral algebra identities and the
/// functional-calculus axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    MondPecaric,
    LahRibaric,
    HolderMccarthy,
    Mondlog,
    MondlogMulti,
    NegPowerRefinement,
    LahLog,
    PowerLah,
    JensenGap,
    NegPowerGap,
    MultJensen,
    GrussType,
    KyfanScalar,
    KyfanOperator,
    SpectrumAlgebra,
    CalculusAxioms,
}

impl TheoremId {
    pub const ALL: [TheoremId; 16] = [
        TheoremId::MondPecaric,
        TheoremId::LahRibaric,
        TheoremId::HolderMccarthy,
        TheoremId::Mondlog,
        TheoremId::MondlogMulti,
        TheoremId::NegPowerRefinement,
        TheoremId::LahLog,
        TheoremId::PowerLah,
        TheoremId::JensenGap,
        TheoremId::NegPowerGap,
        TheoremId::MultJensen,
        TheoremId::GrussType,
        TheoremId::KyfanScalar,
        TheoremId::KyfanOperator,
        TheoremId::SpectrumAlgebra,
        TheoremId::CalculusAxioms,
    ];

    /// The fourteen inequality-chain ids.
    pub const INEQUALITIES: [TheoremId; 14] = [
        TheoremId::MondPecaric,
        TheoremId::LahRibaric,
        TheoremId::HolderMccarthy,
        TheoremId::Mondlog,
        TheoremId::MondlogMulti,
        TheoremId::NegPowerRefinement,
        TheoremId::LahLog,
        TheoremId::PowerLah,
        TheoremId::JensenGap,
        TheoremId::NegPowerGap,
        TheoremId::MultJensen,
        TheoremId::GrussType,
        TheoremId::KyfanScalar,
        TheoremId::KyfanOperator,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::MondPecaric => "mond-pecaric",
            TheoremId::LahRibaric => "lah-ribaric",
            TheoremId::HolderMccarthy => "holder-mccarthy",
            TheoremId::Mondlog => "mondlog",
            TheoremId::MondlogMulti => "mondlog-multi",
            TheoremId::NegPowerRefinement => "neg-power-refinement",
            TheoremId::LahLog => "lah-log",
            TheoremId::PowerLah => "power-lah",
            TheoremId::JensenGap => "jensen-gap",
            TheoremId::NegPowerGap => "neg-power-gap",
            TheoremId::MultJensen => "mult-jensen",
            TheoremId::GrussType => "gruss-type",
            TheoremId::KyfanScalar => "kyfan-scalar",
            TheoremId::KyfanOperator => "kyfan-operator",
            TheoremId::SpectrumAlgebra => "spectrum-algebra",
            TheoremId::CalculusAxioms => "calculus-axioms",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }

    /// Theorems parameterized by a registry function.
    pub fn takes_function(self) -> bool {
        matches!(
            self,
            TheoremId::MondPecaric
                | TheoremId::LahRibaric
                | TheoremId::Mondlog
                | TheoremId::MondlogMulti
                | TheoremId::LahLog
                | TheoremId::JensenGap
                | TheoremId::MultJensen
                | TheoremId::GrussType
        )
    }

    /// Theorems parameterized by a bare exponent `r`.
    pub fn takes_exponent(self) -> bool {
        matches!(
            self,
            TheoremId::HolderMccarthy
                | TheoremId::NegPowerRefinement
                | TheoremId::PowerLah
                | TheoremId::NegPowerGap
                | TheoremId::KyfanScalar
                | TheoremId::KyfanOperator
        )
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One verification run: theorem, instance shape, and reproducibility knobs.
/// Identical configs (including seed) produce bit-identical report streams.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub theorem: TheoremId,
    pub dims: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    pub tol: f64,
    pub spectrum: Option<(f64, f64)>,
    pub function: Option<String>,
    pub exponent: Option<f64>,
    pub variant: Option<u8>,
    /// For `kyfan-operator`: also emit the literal `(T - MI)` exponent
    /// reading of the variant-2 middle operator as extra reports.
    pub diagnostic: bool,
}

impl RunConfig {
    pub fn new(theorem: TheoremId) -> Self {
        RunConfig {
            theorem,
            dims: vec![1, 2, 4, 8],
            trials: 1,
            seed: 0,
            tol: CHAIN_TOL,
            spectrum: None,
            function: None,
            exponent: None,
            variant: None,
            diagnostic: false,
        }
    }
}

const MAX_DIM: usize = 64;

/// Rejects hypothesis-violating configurations up front (exit code 2
/// territory): degenerate intervals, out-of-domain spectra, inadmissible
/// functions or exponents.
pub fn validate_config(cfg: &RunConfig) -> Result<()> {
    if cfg.trials < 1 {
        return Err(Error::Hypothesis("trials must be >= 1".into()));
    }
    if cfg.dims.is_empty() || cfg.dims.iter().any(|&n| n < 1 || n > MAX_DIM) {
        return Err(Error::Hypothesis(format!(
            "dims must be within 1..={MAX_DIM}, got {:?}",
            cfg.dims
        )));
    }
    if !(cfg.tol > 0.0) {
        return Err(Error::Hypothesis(format!("tol must be positive, got {}", cfg.tol)));
    }
    if let Some((m, upper)) = cfg.spectrum {
        if !(m < upper) {
            return Err(Error::Hypothesis(format!(
                "spectrum interval requires m < M, got [{m}, {upper}]"
            )));
        }
    }
    if cfg.variant.is_some() && cfg.theorem != TheoremId::KyfanOperator {
        return Err(Error::Hypothesis(format!(
            "--variant only applies to kyfan-operator, not {}",
            cfg.theorem
        )));
    }
    if let Some(v) = cfg.variant {
        KyfanVariant::from_index(v)?;
    }
    if cfg.diagnostic && cfg.theorem != TheoremId::KyfanOperator {
        return Err(Error::Hypothesis(format!(
            "--diagnostic only applies to kyfan-operator, not {}",
            cfg.theorem
        )));
    }
    if cfg.function.is_some() && !cfg.theorem.takes_function() {
        return Err(Error::Hypothesis(format!(
            "theorem {} does not take a function",
            cfg.theorem
        )));
    }
    if cfg.exponent.is_some() && !cfg.theorem.takes_exponent() {
        return Err(Error::Hypothesis(format!(
            "theorem {} does not take an exponent",
            cfg.theorem
        )));
    }

    if let Some(r) = cfg.exponent {
        match cfg.theorem {
            TheoremId::HolderMccarthy if r == 0.0 || r == 1.0 || !r.is_finite() => {
                return Err(Error::Hypothesis(format!(
                    "holder-mccarthy requires r > 1, 0 < r < 1, or r < 0; got {r}"
                )));
            }
            TheoremId::NegPowerRefinement | TheoremId::PowerLah if !(r < 0.0) => {
                return Err(Error::Hypothesis(format!(
                    "{} requires r < 0, got {r}",
                    cfg.theorem
                )));
            }
            TheoremId::NegPowerGap | TheoremId::KyfanScalar | TheoremId::KyfanOperator
                if !(r > 0.0) =>
            {
                return Err(Error::Hypothesis(format!(
                    "{} requires r > 0, got {r}",
                    cfg.theorem
                )));
            }
            _ => {}
        }
    }

    if let Some((m, upper)) = cfg.spectrum {
        match cfg.theorem {
            TheoremId::KyfanOperator => {
                if m < KYFAN_EPS || upper > 0.5 - KYFAN_EPS {
                    return Err(Error::Hypothesis(format!(
                        "kyfan requires [m, M] within [{KYFAN_EPS}, {}], got [{m}, {upper}]",
                        0.5 - KYFAN_EPS
                    )));
                }
            }
            TheoremId::NegPowerRefinement
            | TheoremId::PowerLah
            | TheoremId::NegPowerGap => {
                if !(m > 0.0) {
                    return Err(Error::Hypothesis(format!(
                        "{} requires 0 < m < M, got m = {m}",
                        cfg.theorem
                    )));
                }
            }
            TheoremId::HolderMccarthy => {
                if cfg.exponent.is_some_and(|r| r < 0.0) && !(m > 0.0) {
                    return Err(Error::Hypothesis(format!(
                        "holder-mccarthy with r < 0 requires 0 < m < M, got m = {m}"
                    )));
                }
                if m < 0.0 {
                    return Err(Error::Hypothesis(format!(
                        "holder-mccarthy requires a positive operator, got m = {m}"
                    )));
                }
            }
            _ => {}
        }
    }

    if let Some(spec) = &cfg.function {
        let f = ScalarFunction::parse(spec)?;
        let needs_convex = matches!(cfg.theorem, TheoremId::MondPecaric | TheoremId::LahRibaric);
        let needs_log = matches!(
            cfg.theorem,
            TheoremId::Mondlog
                | TheoremId::MondlogMulti
                | TheoremId::LahLog
                | TheoremId::MultJensen
                | TheoremId::GrussType
        );
        if needs_convex && !f.convex {
            return Err(Error::Hypothesis(format!(
                "{} requires a convex function, `{}` is not",
                cfg.theorem,
                f.id()
            )));
        }
        if needs_log && !(f.log_convex && f.positive) {
            return Err(Error::Hypothesis(format!(
                "{} requires a positive log-convex function, `{}` is not",
                cfg.theorem,
                f.id()
            )));
        }
        if matches!(
            cfg.theorem,
            TheoremId::JensenGap | TheoremId::MultJensen | TheoremId::GrussType
        ) && !f.differentiable
        {
            return Err(Error::Hypothesis(format!(
                "{} requires a differentiable function, `{}` is not",
                cfg.theorem,
                f.id()
            )));
        }
        if cfg.theorem == TheoremId::JensenGap && !(f.convex || (f.log_convex && f.positive)) {
            return Err(Error::Hypothesis(format!(
                "jensen-gap requires f convex or positive log-convex; `{}` is neither",
                f.id()
            )));
        }
        if let Some((m, upper)) = cfg.spectrum {
            let interior = matches!(
                cfg.theorem,
                TheoremId::JensenGap | TheoremId::MultJensen
            );
            let ok = if interior {
                f.domain.contains_in_interior(m, upper)
            } else {
                f.domain.contains(m) && f.domain.contains(upper)
            };
            if !ok {
                return Err(Error::Hypothesis(format!(
                    "[{m}, {upper}] must lie inside the domain {} of `{}`",
                    f.domain,
                    f.id()
                )));
            }
        }
    }
    Ok(())
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based per-trial seed derivation.
pub fn trial_seed(master: u64, k: u64) -> u64 {
    splitmix64(master.wrapping_add(k.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

/// Function families admissible per theorem, with their exponent ranges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FunKind {
    Exp,
    PowerHi,
    PowerNeg,
    NegPower,
    Kyfan,
}

const CONVEX_POOL: [FunKind; 5] = [
    FunKind::Exp,
    FunKind::PowerHi,
    FunKind::PowerNeg,
    FunKind::NegPower,
    FunKind::Kyfan,
];
const LOG_CONVEX_POOL: [FunKind; 4] = [
    FunKind::Exp,
    FunKind::PowerNeg,
    FunKind::NegPower,
    FunKind::Kyfan,
];

fn sample_function(kind: FunKind, rng: &mut ChaCha8Rng) -> ScalarFunction {
    match kind {
        FunKind::Exp => ScalarFunction::exp(),
        FunKind::PowerHi => ScalarFunction::power(rng.gen_range(1.2..3.0)),
        FunKind::PowerNeg => ScalarFunction::power(rng.gen_range(-3.0..-0.2)),
        FunKind::NegPower => {
            ScalarFunction::neg_power(rng.gen_range(0.2..3.0)).expect("r > 0 by construction")
        }
        FunKind::Kyfan => {
            ScalarFunction::kyfan(rng.gen_range(0.5..3.0)).expect("r > 0 by construction")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum IntervalKind {
    /// Any real interval of moderate width.
    Any,
    /// `0 < m < M`, bounded away from zero.
    Positive,
    /// `0 <= m < M` (positive operators that may be singular).
    Nonnegative,
    /// Inside `(0, 1/2)` with the Ky Fan margin.
    Kyfan,
}

fn sample_interval(kind: IntervalKind, rng: &mut ChaCha8Rng) -> (f64, f64) {
    match kind {
        IntervalKind::Any => {
            let m = rng.gen_range(-2.0..1.5);
            (m, m + rng.gen_range(0.3..2.5))
        }
        IntervalKind::Positive => {
            let m = rng.gen_range(0.05..1.0);
            (m, m + rng.gen_range(0.3..3.0))
        }
        IntervalKind::Nonnegative => {
            let m = rng.gen_range(0.0..2.0);
            (m, m + rng.gen_range(0.3..3.0))
        }
        IntervalKind::Kyfan => {
            let m = rng.gen_range(0.02..0.3);
            let width = rng.gen_range(0.02..(0.46 - m).min(0.27));
            (m, m + width)
        }
    }
}

/// The interval family a function's domain admits.
fn interval_kind_for(f: &ScalarFunction) -> IntervalKind {
    if f.domain.hi <= 0.5 {
        IntervalKind::Kyfan
    } else if f.domain.lo >= 0.0 {
        IntervalKind::Positive
    } else {
        IntervalKind::Any
    }
}

fn admits_interval(f: &ScalarFunction, m: f64, upper: f64, interior: bool) -> bool {
    if interior {
        f.domain.contains_in_interior(m, upper)
    } else {
        f.domain.contains(m) && f.domain.contains(upper)
    }
}

/// A fully-instantiated trial, shared between the campaign and the slack
/// search.
#[derive(Clone, Debug)]
pub(crate) enum Instance {
    Single {
        t: QMatrix,
        x: QVector,
        f: Option<ScalarFunction>,
        r: Option<f64>,
        m: f64,
        upper: f64,
        variant: Option<KyfanVariant>,
    },
    Multi {
        ts: Vec<QMatrix>,
        xs: Vec<QVector>,
        f: ScalarFunction,
        m: f64,
        upper: f64,
    },
    Scalar {
        ts: Vec<f64>,
        ps: Vec<f64>,
        r: f64,
    },
    Pair {
        general: (QMatrix, QMatrix),
        commuting: (QMatrix, QMatrix),
    },
    Calculus {
        t: QMatrix,
        f: ScalarFunction,
        g: ScalarFunction,
        m: f64,
        upper: f64,
        poly: [f64; 5],
    },
}

fn pick_function(
    cfg: &RunConfig,
    pool: &[FunKind],
    interior: bool,
    k: u64,
    rng: &mut ChaCha8Rng,
) -> Result<(ScalarFunction, f64, f64)> {
    if let Some(spec) = &cfg.function {
        let f = ScalarFunction::parse(spec)?;
        let (m, upper) = match cfg.spectrum {
            Some(pair) => pair,
            None => sample_interval(interval_kind_for(&f), rng),
        };
        if !admits_interval(&f, m, upper, interior) {
            return Err(Error::Hypothesis(format!(
                "[{m}, {upper}] must lie inside the domain {} of `{}`",
                f.domain,
                f.id()
            )));
        }
        return Ok((f, m, upper));
    }
    if let Some((m, upper)) = cfg.spectrum {
        // Keep only families whose domain admits the pinned interval.
        let admissible: Vec<FunKind> = pool
            .iter()
            .copied()
            .filter(|kind| {
                let probe = sample_function(*kind, &mut rng.clone());
                admits_interval(&probe, m, upper, interior)
            })
            .collect();
        if admissible.is_empty() {
            return Err(Error::Hypothesis(format!(
                "no registry function admits the pinned spectrum [{m}, {upper}] for {}",
                cfg.theorem
            )));
        }
        let kind = admissible[(k as usize) % admissible.len()];
        return Ok((sample_function(kind, rng), m, upper));
    }
    let kind = pool[(k as usize) % pool.len()];
    let f = sample_function(kind, rng);
    let (m, upper) = sample_interval(interval_kind_for(&f), rng);
    Ok((f, m, upper))
}

/// Generates the deterministic instance for trial `k`.
pub(crate) fn generate_instance(cfg: &RunConfig, k: u64) -> Result<(Instance, Witness)> {
    let seed = trial_seed(cfg.seed, k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = cfg.dims[(k as usize) % cfg.dims.len()];
    let mut witness = Witness {
        n,
        trial: Some(k),
        ..Witness::default()
    };

    let instance = match cfg.theorem {
        TheoremId::KyfanScalar => {
            let count = 2 + (k as usize) % 4;
            let r = cfg.exponent.unwrap_or(1.0);
            let ts: Vec<f64> = (0..count).map(|_| rng.gen_range(0.001..0.499)).collect();
            let raw: Vec<f64> = (0..count).map(|_| rng.gen_range(0.1..1.0)).collect();
            let total: f64 = raw.iter().sum();
            let ps: Vec<f64> = raw.iter().map(|w| w / total).collect();
            witness.r = Some(r);
            witness.m = 0.0;
            witness.upper = 0.5;
            Instance::Scalar { ts, ps, r }
        }
        TheoremId::SpectrumAlgebra => {
            let s_seed = rng.next_u64();
            let t_seed = rng.next_u64();
            let general = (
                random_normal_matrix(n, &mut ChaCha8Rng::seed_from_u64(s_seed)),
                random_normal_matrix(n, &mut ChaCha8Rng::seed_from_u64(t_seed)),
            );
            let u = random_unitary_rng(n, &mut rng);
            let d1: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let d2: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let build = |diag: &[f64]| {
                u.matmul(&QMatrix::from_real_diag(diag))
                    .and_then(|ud| ud.matmul(&u.adjoint()))
                    .map(|t| t.symmetrized())
                    .expect("same dimension")
            };
            witness.matrix_seed = Some(s_seed);
            witness.vector_seed = Some(t_seed);
            Instance::Pair {
                general,
                commuting: (build(&d1), build(&d2)),
            }
        }
        TheoremId::CalculusAxioms => {
            let (m, upper) = cfg
                .spectrum
                .unwrap_or_else(|| sample_interval(IntervalKind::Positive, &mut rng));
            let pool = LOG_CONVEX_POOL;
            let f = sample_function(pool[(k as usize) % pool.len()], &mut rng);
            let g = sample_function(pool[(k as usize + 1) % pool.len()], &mut rng);
            // Fall back to a kyfan-compatible interval when either function
            // needs one.
            let (m, upper) = if admits_interval(&f, m, upper, false)
                && admits_interval(&g, m, upper, false)
            {
                (m, upper)
            } else {
                sample_interval(IntervalKind::Kyfan, &mut rng)
            };
            let matrix_seed = rng.next_u64();
            let t = random_selfadjoint(n, m, upper, matrix_seed)?;
            let poly = [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            witness.m = m;
            witness.upper = upper;
            witness.function = Some(f.id().to_string());
            witness.matrix_seed = Some(matrix_seed);
            Instance::Calculus {
                t,
                f,
                g,
                m,
                upper,
                poly,
            }
        }
        TheoremId::MondlogMulti => {
            let (f, m, upper) = pick_function(cfg, &LOG_CONVEX_POOL, false, k, &mut rng)?;
            let count = 1 + (k as usize) % 3;
            let ts = (0..count)
                .map(|_| {
                    let seed = rng.next_u64();
                    random_selfadjoint(n, m, upper, seed)
                })
                .collect::<Result<Vec<_>>>()?;
            let raw: Vec<QVector> = (0..count)
                .map(|_| random_unit_vector_rng(n, &mut rng))
                .collect();
            let total: f64 = raw.iter().map(|x| x.norm().powi(2)).sum();
            let xs: Vec<QVector> = raw
                .iter()
                .map(|x| x.scale_real(1.0 / total.sqrt()))
                .collect();
            witness.m = m;
            witness.upper = upper;
            witness.function = Some(f.id().to_string());
            Instance::Multi {
                ts,
                xs,
                f,
                m,
                upper,
            }
        }
        _ => {
            // Single-operator theorems.
            let (f, r, m, upper) = single_instance_params(cfg, k, &mut rng)?;
            let matrix_seed = rng.next_u64();
            let vector_seed = rng.next_u64();
            let t = random_selfadjoint(n, m, upper, matrix_seed)?;
            let x = random_unit_vector(n, vector_seed);
            let variant = if cfg.theorem == TheoremId::KyfanOperator {
                Some(KyfanVariant::from_index(
                    cfg.variant.unwrap_or(1 + (k % 3) as u8),
                )?)
            } else {
                None
            };
            witness.m = m;
            witness.upper = upper;
            witness.r = r;
            witness.function = f.as_ref().map(|f| f.id().to_string());
            witness.matrix_seed = Some(matrix_seed);
            witness.vector_seed = Some(vector_seed);
            Instance::Single {
                t,
                x,
                f,
                r,
                m,
                upper,
                variant,
            }
        }
    };
    Ok((instance, witness))
}

/// Samples `(function, exponent, m, M)` for the single-operator theorems.
fn single_instance_params(
    cfg: &RunConfig,
    k: u64,
    rng: &mut ChaCha8Rng,
) -> Result<(Option<ScalarFunction>, Option<f64>, f64, f64)> {
    match cfg.theorem {
        TheoremId::MondPecaric | TheoremId::LahRibaric => {
            let (f, m, upper) = pick_function(cfg, &CONVEX_POOL, false, k, rng)?;
            Ok((Some(f), None, m, upper))
        }
        TheoremId::Mondlog | TheoremId::LahLog | TheoremId::MultJensen | TheoremId::GrussType => {
            let interior = cfg.theorem == TheoremId::MultJensen;
            let (f, m, upper) = pick_function(cfg, &LOG_CONVEX_POOL, interior, k, rng)?;
            Ok((Some(f), None, m, upper))
        }
        TheoremId::JensenGap => {
            let (f, m, upper) = pick_function(cfg, &CONVEX_POOL, true, k, rng)?;
            Ok((Some(f), None, m, upper))
        }
        TheoremId::HolderMccarthy => {
            let r = cfg.exponent.unwrap_or_else(|| match k % 3 {
                0 => rng.gen_range(1.2..3.0),
                1 => rng.gen_range(0.1..0.9),
                _ => rng.gen_range(-3.0..-0.2),
            });
            let kind = if r < 0.0 {
                IntervalKind::Positive
            } else {
                IntervalKind::Nonnegative
            };
            let (m, upper) = cfg.spectrum.unwrap_or_else(|| sample_interval(kind, rng));
            Ok((None, Some(r), m, upper))
        }
        TheoremId::NegPowerRefinement | TheoremId::PowerLah => {
            let r = cfg.exponent.unwrap_or_else(|| rng.gen_range(-3.0..-0.2));
            let (m, upper) = cfg
                .spectrum
                .unwrap_or_else(|| sample_interval(IntervalKind::Positive, rng));
            Ok((None, Some(r), m, upper))
        }
        TheoremId::NegPowerGap => {
            let r = cfg.exponent.unwrap_or_else(|| rng.gen_range(0.2..3.0));
            let (m, upper) = cfg
                .spectrum
                .unwrap_or_else(|| sample_interval(IntervalKind::Positive, rng));
            Ok((None, Some(r), m, upper))
        }
        TheoremId::KyfanOperator => {
            let r = cfg.exponent.unwrap_or_else(|| rng.gen_range(0.3..3.0));
            let (m, upper) = cfg
                .spectrum
                .unwrap_or_else(|| sample_interval(IntervalKind::Kyfan, rng));
            Ok((None, Some(r), m, upper))
        }
        _ => unreachable!("multi/scalar/pair theorems handled by the caller"),
    }
}

/// Runs the checker for an instantiated trial.
pub(crate) fn evaluate_instance(
    cfg: &RunConfig,
    instance: &Instance,
    witness: &Witness,
) -> Result<Vec<ChainReport>> {
    let ctx = CheckContext::new(cfg.tol, witness.clone());
    match (cfg.theorem, instance) {
        (TheoremId::MondPecaric, Instance::Single { t, x, f, m, upper, .. }) => {
            check_mond_pecaric(t, f.as_ref().expect("function instance"), x, *m, *upper, &ctx)
        }
        (TheoremId::LahRibaric, Instance::Single { t, x, f, m, upper, .. }) => {
            check_lah_ribaric(t, f.as_ref().expect("function instance"), x, *m, *upper, &ctx)
        }
        (TheoremId::HolderMccarthy, Instance::Single { t, x, r, .. }) => {
            check_holder_mccarthy(t, x, r.expect("exponent instance"), &ctx)
        }
        (TheoremId::Mondlog, Instance::Single { t, x, f, m, upper, .. }) => {
            check_mondlog(t, f.as_ref().expect("function instance"), x, *m, *upper, &ctx)
        }
        (TheoremId::MondlogMulti, Instance::Multi { ts, xs, f, m, upper }) => {
            check_mondlog_multi(ts, f, xs, *m, *upper, &ctx)
        }
        (TheoremId::NegPowerRefinement, Instance::Single { t, x, r, .. }) => {
            check_neg_power_refinement(t, x, r.expect("exponent instance"), &ctx)
        }
        (TheoremId::LahLog, Instance::Single { t, x, f, m, upper, .. }) => {
            check_lah_log(t, f.as_ref().expect("function instance"), x, *m, *upper, &ctx)
        }
        (TheoremId::PowerLah, Instance::Single { t, x, r, m, upper, .. }) => {
            check_power_lah(t, x, *m, *upper, r.expect("exponent instance"), &ctx)
        }
        (TheoremId::JensenGap, Instance::Single { t, x, f, m, upper, .. }) => {
            check_jensen_gap(t, f.as_ref().expect("function instance"), x, *m, *upper, &ctx)
        }
        (TheoremId::NegPowerGap, Instance::Single { t, x, r, .. }) => {
            check_neg_power_gap(t, x, r.expect("exponent instance"), &ctx)
        }
        (TheoremId::MultJensen, Instance::Single { t, x, f, m, upper, .. }) => {
            check_mult_jensen(t, f.as_ref().expect("function instance"), x, *m, *upper, &ctx)
        }
        (TheoremId::GrussType, Instance::Single { t, x, f, m, upper, .. }) => {
            check_gruss_type(t, f.as_ref().expect("function instance"), *m, *upper, x, &ctx)
        }
        (TheoremId::KyfanScalar, Instance::Scalar { ts, ps, r }) => {
            check_kyfan_scalar(ts, ps, *r, &ctx)
        }
        (TheoremId::KyfanOperator, Instance::Single { t, x, r, m, upper, variant, .. }) => {
            let variant = variant.expect("kyfan variant");
            let r = r.expect("exponent instance");
            let mut reports = check_kyfan_operator(t, x, *m, *upper, r, variant, &ctx)?;
            if cfg.diagnostic {
                let diag = kyfan_exponent_diagnostic(t, x, *m, *upper, r, &ctx)?;
                reports.extend(diag.literal_reports);
            }
            Ok(reports)
        }
        (TheoremId::SpectrumAlgebra, Instance::Pair { general, commuting }) => {
            let mut reports = spectrum_algebra_checks(
                &general.0,
                &general.1,
                AlgebraCheckOptions {
                    include_sum_check: false,
                    tol: cfg.tol,
                },
                witness.clone(),
            )?;
            reports.extend(spectrum_algebra_checks(
                &commuting.0,
                &commuting.1,
                AlgebraCheckOptions {
                    include_sum_check: true,
                    tol: cfg.tol,
                },
                witness.clone(),
            )?);
            Ok(reports)
        }
        (TheoremId::CalculusAxioms, Instance::Calculus { t, f, g, m, poly, .. }) => {
            calculus_axioms_reports(t, f, g, *m, poly, &ctx)
        }
        _ => unreachable!("instance shape always matches its theorem"),
    }
}

/// Functional-calculus axiom checks on one instance, each reported as a
/// `[measured, allowed]` chain.
fn calculus_axioms_reports(
    t: &QMatrix,
    f: &ScalarFunction,
    g: &ScalarFunction,
    m: f64,
    poly: &[f64; 5],
    ctx: &CheckContext,
) -> Result<Vec<ChainReport>> {
    let mut reports = vec![
        crate::funcalc::fc_norm_isometry_check(t, f, ctx.tol, ctx.witness.clone())?,
        crate::funcalc::fc_positivity_check(t, f, ctx.tol, ctx.witness.clone())?,
    ];

    // Homomorphism: (f*g)(T) = f(T) g(T) and (f+g)(T) = f(T) + g(T).
    let fe = f.eval_arc();
    let ge = g.eval_arc();
    let dom = intersect(&f.domain, &g.domain);
    let prod_fn = ScalarFunction::custom("f*g", dom, {
        let fe = fe.clone();
        let ge = ge.clone();
        move |t| fe(t) * ge(t)
    });
    let sum_fn = ScalarFunction::custom("f+g", dom, {
        let fe = fe.clone();
        let ge = ge.clone();
        move |t| fe(t) + ge(t)
    });
    let ft = fc_apply(t, f)?;
    let gt = fc_apply(t, g)?;
    let prod_direct = ft.matmul(&gt).expect("same dimension");
    let prod_fc = fc_apply(t, &prod_fn)?;
    let scale_p = 1f64.max(prod_fc.frobenius_norm());
    reports.push(ChainReport::evaluate(
        "calculus-axioms:homomorphism-product",
        vec![
            Term::new(
                "||(fg)(T) - f(T)g(T)|| / scale",
                (&prod_fc - &prod_direct).frobenius_norm() / scale_p,
            ),
            Term::new("tolerance", 1e-10),
        ],
        ctx.tol,
        false,
        ctx.witness.clone(),
    ));
    let sum_fc = fc_apply(t, &sum_fn)?;
    let sum_direct = &ft + &gt;
    let scale_s = 1f64.max(sum_fc.frobenius_norm());
    reports.push(ChainReport::evaluate(
        "calculus-axioms:homomorphism-sum",
        vec![
            Term::new(
                "||(f+g)(T) - (f(T)+g(T))|| / scale",
                (&sum_fc - &sum_direct).frobenius_norm() / scale_s,
            ),
            Term::new("tolerance", 1e-10),
        ],
        ctx.tol,
        false,
        ctx.witness.clone(),
    ));

    // Commutation: f(T) T = T f(T).
    let comm = (&ft.matmul(t).expect("dim") - &t.matmul(&ft).expect("dim")).frobenius_norm()
        / 1f64.max(ft.frobenius_norm() * op_norm(t));
    reports.push(ChainReport::evaluate(
        "calculus-axioms:commutation",
        vec![Term::new("||f(T)T - Tf(T)|| / scale", comm), Term::new("tolerance", 1e-10)],
        ctx.tol,
        false,
        ctx.witness.clone(),
    ));

    // Polynomial consistency for degree <= 4.
    let coeffs = *poly;
    let poly_fn = ScalarFunction::custom("poly4", crate::funcalc::Interval::REAL_LINE, move |t| {
        coeffs[0] + t * (coeffs[1] + t * (coeffs[2] + t * (coeffs[3] + t * coeffs[4])))
    });
    let via_fc = fc_apply(t, &poly_fn)?;
    let mut direct = QMatrix::zeros(t.n());
    for (k, &c) in coeffs.iter().enumerate() {
        direct = &direct + &t.pow(k as u32).scale_real(c);
    }
    let scale_poly = 1f64.max(via_fc.frobenius_norm());
    reports.push(ChainReport::evaluate(
        "calculus-axioms:polynomial",
        vec![
            Term::new(
                "||p(T)_fc - p(T)_horner|| / scale",
                (&via_fc - &direct).frobenius_norm() / scale_poly,
            ),
            Term::new("tolerance", 1e-9),
        ],
        ctx.tol,
        false,
        ctx.witness.clone(),
    ));

    // exp(ln(T)) = T for positive definite T.
    if m > 0.0 {
        let back = fc_apply(&fc_apply(t, &ScalarFunction::ln())?, &ScalarFunction::exp())?;
        let rel = (&back - t).frobenius_norm() / 1f64.max(t.frobenius_norm());
        reports.push(ChainReport::evaluate(
            "calculus-axioms:exp-ln",
            vec![Term::new("||exp(ln(T)) - T|| / scale", rel), Term::new("tolerance", 1e-8)],
            ctx.tol,
            false,
            ctx.witness.clone(),
        ));
    }

    // Realness of <f(T)x, x> on a fresh unit vector.
    let x = random_unit_vector(t.n(), 0xC0FFEE);
    let mut guard = Realness::new();
    guard.expect(&ft, &x)?;
    reports.push(ChainReport::evaluate(
        "calculus-axioms:rayleigh-real",
        vec![
            Term::new("imag residue of <f(T)x,x>", guard.max_residue),
            Term::new("tolerance", 1e-10),
        ],
        ctx.tol,
        guard.invalid,
        ctx.witness.clone(),
    ));
    Ok(reports)
}

fn intersect(a: &crate::funcalc::Interval, b: &crate::funcalc::Interval) -> crate::funcalc::Interval {
    let (lo, lo_closed) = if a.lo > b.lo {
        (a.lo, a.lo_closed)
    } else if b.lo > a.lo {
        (b.lo, b.lo_closed)
    } else {
        (a.lo, a.lo_closed && b.lo_closed)
    };
    let (hi, hi_closed) = if a.hi < b.hi {
        (a.hi, a.hi_closed)
    } else if b.hi < a.hi {
        (b.hi, b.hi_closed)
    } else {
        (a.hi, a.hi_closed && b.hi_closed)
    };
    crate::funcalc::Interval {
        lo,
        hi,
        lo_closed,
        hi_closed,
    }
}

/// Runs trial `k` of a validated config; deterministic in `(cfg, k)`.
pub fn run_trial(cfg: &RunConfig, k: u64) -> Result<Vec<ChainReport>> {
    let (instance, witness) = generate_instance(cfg, k)?;
    evaluate_instance(cfg, &instance, &witness)
}

/// Aggregate campaign verdict. Counters are at trial granularity: a trial
/// passes when all of its chains pass, is invalid when any chain tripped
/// the realness guard, and is a violation otherwise.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub theorem: String,
    pub trials: u64,
    pub pass_count: u64,
    pub invalid_count: u64,
    pub violation_count: u64,
    pub min_slack: f64,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub literal_violations: Option<u64>,
}

impl CampaignSummary {
    pub fn all_passed(&self) -> bool {
        self.violation_count == 0
    }
}

/// Runs the full campaign, streaming every chain report to `sink` in trial
/// order.
pub fn run_campaign(
    cfg: &RunConfig,
    mut sink: impl FnMut(&ChainReport),
) -> Result<CampaignSummary> {
    validate_config(cfg)?;
    let mut summary = CampaignSummary {
        theorem: cfg.theorem.as_str().to_string(),
        trials: cfg.trials,
        pass_count: 0,
        invalid_count: 0,
        violation_count: 0,
        min_slack: f64::INFINITY,
        tol: cfg.tol,
        literal_violations: if cfg.diagnostic { Some(0) } else { None },
    };
    for k in 0..cfg.trials {
        let reports = run_trial(cfg, k)?;
        let mut invalid = false;
        let mut violated = false;
        for report in &reports {
            sink(report);
            let literal = report.theorem.ends_with(":literal-M");
            if literal {
                if !report.pass && !report.invalid {
                    if let Some(count) = summary.literal_violations.as_mut() {
                        *count += 1;
                    }
                }
                continue;
            }
            if report.invalid {
                invalid = true;
            } else {
                summary.min_slack = summary.min_slack.min(report.slack);
                if !report.pass {
                    violated = true;
                }
            }
        }
        if invalid {
            summary.invalid_count += 1;
        } else if violated {
            summary.violation_count += 1;
        } else {
            summary.pass_count += 1;
        }
    }
    Ok(summary)
}
