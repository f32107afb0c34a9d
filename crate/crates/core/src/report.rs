//! Evaluated inequality chains and their JSON form.

use serde::{Deserialize, Serialize};

/// One labeled value in a chain.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Term {
    pub label: String,
    pub value: f64,
}

impl Term {
    pub fn new(label: impl Into<String>, value: f64) -> Self {
        Self {
            label: label.into(),
            value,
        }
    }
}

/// Instance provenance attached to every report; enough to regenerate the
/// trial in isolation.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Witness {
    pub n: usize,
    pub m: f64,
    #[serde(rename = "M")]
    pub upper: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vector_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix_source: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
}

/// An evaluated chain: ordered labeled real values expected to be
/// non-decreasing.
///
/// `pass` holds when every adjacent pair satisfies
/// `next - prev >= -tol * max(1, |prev|, |next|)`. `slack` is the raw
/// minimum of `next - prev` over adjacent pairs. A chain whose inner
/// products carried an imaginary residue beyond the realness guard is
/// `invalid` (and not passed): numerical noise, not a theorem violation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainReport {
    pub theorem: String,
    pub terms: Vec<Term>,
    pub slack: f64,
    pub pass: bool,
    pub invalid: bool,
    pub witness: Witness,
}

impl ChainReport {
    /// Evaluates the tolerance verdict over `terms`.
    pub fn evaluate(
        theorem: impl Into<String>,
        terms: Vec<Term>,
        tol: f64,
        invalid: bool,
        witness: Witness,
    ) -> Self {
        assert!(terms.len() >= 2, "a chain needs at least two terms");
        let mut slack = f64::INFINITY;
        let mut pass = true;
        for pair in terms.windows(2) {
            let (prev, next) = (pair[0].value, pair[1].value);
            let gap = next - prev;
            slack = slack.min(gap);
            if !(gap >= -tol * 1f64.max(prev.abs()).max(next.abs())) {
                pass = false;
            }
            if !prev.is_finite() || !next.is_finite() {
                pass = false;
            }
        }
        ChainReport {
            theorem: theorem.into(),
            terms,
            slack,
            pass: pass && !invalid,
            invalid,
            witness,
        }
    }

    /// The adjacent pair realizing the minimum slack, for violation
    /// reporting.
    pub fn tightest_pair(&self) -> (&Term, &Term) {
        let mut best = 0;
        let mut best_gap = f64::INFINITY;
        for (idx, pair) in self.terms.windows(2).enumerate() {
            let gap = pair[1].value - pair[0].value;
            if gap < best_gap {
                best_gap = gap;
                best = idx;
            }
        }
        (&self.terms[best], &self.terms[best + 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slack_and_verdict() {
        let terms = vec![Term::new("a", 1.0), Term::new("b", 1.5), Term::new("c", 1.25)];
        let report = ChainReport::evaluate("demo", terms, 1e-9, false, Witness::default());
        assert!(!report.pass);
        assert_eq!(report.slack, -0.25);
        let (lo, hi) = report.tightest_pair();
        assert_eq!(lo.label, "b");
        assert_eq!(hi.label, "c");
    }

    #[test]
    fn tiny_negative_gap_passes_under_hybrid_tolerance() {
        let terms = vec![Term::new("a", 100.0), Term::new("b", 100.0 - 1e-8)];
        let report = ChainReport::evaluate("demo", terms, 1e-9, false, Witness::default());
        assert!(report.pass, "relative tolerance should absorb 1e-10 relative gap");
    }

    #[test]
    fn invalid_is_not_passed() {
        let terms = vec![Term::new("a", 0.0), Term::new("b", 1.0)];
        let report = ChainReport::evaluate("demo", terms, 1e-9, true, Witness::default());
        assert!(!report.pass);
        assert!(report.invalid);
    }

    #[test]
    fn json_shape_matches_schema() {
        let report = ChainReport::evaluate(
            "demo",
            vec![Term::new("lhs", 0.5), Term::new("rhs", 1.0)],
            1e-9,
            false,
            Witness {
                n: 2,
                m: 1.0,
                upper: 4.0,
                r: Some(-1.0),
                function: Some("power:r=-1".into()),
                matrix_seed: Some(7),
                vector_seed: Some(8),
                matrix_source: None,
                trial: Some(0),
            },
        );
        let json = crate::io::to_json(&report);
        assert!(json.starts_with(r#"{"theorem":"demo","terms":[{"label":"lhs","value":0.5}"#));
        assert!(json.contains(r#""slack":0.5"#));
        assert!(json.contains(r#""witness":{"n":2,"m":1.0,"M":4.0,"r":-1.0"#));
    }
}
