//! Identity suite: every relation the engine knows about, evaluated against a
//! built [`MopSequence`] and collected into a JSON report.

mod ad;
mod basic;
mod family;
mod ladders;
mod samples;

pub use ad::check_ad_case;
pub use basic::{
    check_anbn, check_cauchy_second_kind, check_cd, check_hp, check_lof, check_omega_inverse, check_orthogonality,
    check_realness, check_recurrence,
};
pub use family::{check_closed_forms, check_freud_string, check_reductions};
pub use ladders::{
    check_expansion, check_ladder_symmetry, check_ladders, check_lax, check_rh, check_second_order, check_string,
    check_y_frame,
};
pub use samples::SampleSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{MoprlError, Result};
use crate::matpoly::{CMatrix, MatPoly};
use crate::mop::MopSequence;
use crate::weights::{AdConditionCase, Family};

/// Default tolerance for identities at quadrature tolerance `1e-12`.
pub const IDENTITY_TOL: f64 = 1e-8;
/// Looser tolerance for quartic-weight checks that involve `β_{n+1}`.
pub const FREUD_TOL: f64 = 1e-6;

/// One line of the report.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub anchor: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
    pub samples: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub skipped: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn new(name: &str, residual: f64, tol: f64, samples: usize) -> Self {
        Self {
            name: name.to_string(),
            anchor: anchor_of(name).to_string(),
            residual,
            tol,
            // NaN never passes
            pass: residual <= tol,
            samples,
            skipped: false,
            note: None,
        }
    }

    /// A check that does not apply; it counts as passing.
    pub fn skip(name: &str, reason: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            anchor: anchor_of(name).to_string(),
            residual: 0.0,
            tol: 0.0,
            pass: true,
            samples: 0,
            skipped: true,
            note: Some(reason.into()),
        }
    }

    /// A check whose evaluation raised an error.
    pub fn failed(name: &str, err: &MoprlError) -> Self {
        Self {
            name: name.to_string(),
            anchor: anchor_of(name).to_string(),
            residual: f64::INFINITY,
            tol: 0.0,
            pass: false,
            samples: 0,
            skipped: false,
            note: Some(err.to_string()),
        }
    }
}

/// Registered checks with their descriptive anchors, in report order.
pub const CHECKS: &[(&str, &str)] = &[
    ("recurrence", "three-term recurrence relation"),
    ("orthogonality", "orthogonality of the monic polynomials"),
    ("liouville-ostrogradski", "Liouville–Ostrogradski formula"),
    ("liouville-ostrogradski-constancy", "Liouville–Ostrogradski right side is independent of z"),
    ("hermitian-property", "Hermitian property of the second-kind pairing"),
    ("second-kind-cauchy", "Cauchy transform of the weighted orthonormal polynomial"),
    ("christoffel-darboux", "Christoffel–Darboux formula"),
    ("a-b-relations", "coefficient relations from the expansion of Y times its inverse"),
    ("omega-inverse", "moments of the monic polynomials from the inverse coefficient triangle"),
    ("realness", "real coefficients for real parameters"),
    ("ladder-symmetry", "gamma-symmetry of the ladder coefficient A_n"),
    ("string-first", "first compatibility condition of the ladder coefficients"),
    ("string-second", "second compatibility condition of the ladder coefficients"),
    ("lowering", "lowering operator"),
    ("raising", "raising operator"),
    ("second-order", "second-order differential equation from the ladder operators"),
    ("lax", "Lax pair compatibility"),
    ("rh-determinant", "unit determinant of the Riemann–Hilbert solution"),
    ("rh-inverse", "explicit inverse of the Riemann–Hilbert solution"),
    ("y-frame", "first-order differential equation for the Riemann–Hilbert solution"),
    ("expansion", "F_n from the asymptotic expansion of Y"),
    ("closed-forms", "closed-form ladder coefficients of the built-in families"),
    ("reductions", "family-specific compatibility conditions and ladder operators"),
    ("freud-string", "matrix discrete Painlevé (string) equation"),
    ("ad-conditions", "commutator conditions on A and J"),
    ("ad-closed-forms", "closed forms of the H ladder coefficients"),
    ("ad-zeroth-order", "zeroth-order ladder operators"),
    ("ad-first-order", "first-order differential relation"),
    ("ad-second-order", "reduced second-order differential equation"),
];

fn anchor_of(name: &str) -> &'static str {
    CHECKS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, a)| *a)
        .unwrap_or("unregistered")
}

/// Which checks to run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Named(Vec<String>),
}

impl Suite {
    /// `"all"` or a comma-separated list of registered names.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "all" {
            return Ok(Self::All);
        }
        let names: Vec<String> = s.split(',').map(|t| t.trim().to_string()).collect();
        for n in &names {
            if !CHECKS.iter().any(|(c, _)| c == n) {
                return Err(MoprlError::InvalidArgument(format!("unknown check '{n}'")));
            }
        }
        Ok(Self::Named(names))
    }

    pub fn includes(&self, name: &str) -> bool {
        match self {
            Self::All => true,
            Self::Named(v) => v.iter().any(|n| n == name),
        }
    }
}

/// Machine-readable outcome of a verification run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: String,
    pub weight: String,
    pub dim: usize,
    pub n_range: [usize; 2],
    pub quadrature_tol: f64,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

type Job<'a> = (&'static [&'static str], Box<dyn Fn() -> Result<Vec<CheckResult>> + Send + Sync + 'a>);

/// Runs the selected checks; their order in the report follows [`CHECKS`].
pub fn verify(seq: &MopSequence, suite: &Suite, seed: u64) -> VerificationReport {
    let samples = SampleSet::new(seed);
    let g = seq.spec().g_poly().clone();
    let ad_case = match seq.spec().family() {
        Family::HermiteA { a } => AdConditionCase::detect(a),
        _ => None,
    };
    let s = &samples;
    let g = &g;
    let jobs: Vec<Job> = vec![
        (&["recurrence"], Box::new(move || Ok(vec![check_recurrence(seq)]))),
        (&["orthogonality"], Box::new(move || Ok(vec![check_orthogonality(seq)]))),
        (
            &["liouville-ostrogradski", "liouville-ostrogradski-constancy"],
            Box::new(move || Ok(check_lof(seq))),
        ),
        (&["hermitian-property"], Box::new(move || Ok(vec![check_hp(seq)]))),
        (&["second-kind-cauchy"], Box::new(move || Ok(vec![check_cauchy_second_kind(seq)?]))),
        (&["christoffel-darboux"], Box::new(move || Ok(vec![check_cd(seq)?]))),
        (&["a-b-relations"], Box::new(move || Ok(vec![check_anbn(seq)?]))),
        (&["omega-inverse"], Box::new(move || Ok(vec![check_omega_inverse(seq)?]))),
        (&["realness"], Box::new(move || Ok(vec![check_realness(seq)?]))),
        (&["ladder-symmetry"], Box::new(move || Ok(vec![check_ladder_symmetry(seq, g)?]))),
        (&["string-first", "string-second"], Box::new(move || check_string(seq, g))),
        (&["lowering", "raising"], Box::new(move || check_ladders(seq, g))),
        (&["second-order"], Box::new(move || Ok(vec![check_second_order(seq, g, s)?]))),
        (&["lax"], Box::new(move || Ok(vec![check_lax(seq, g, s)?]))),
        (&["rh-determinant", "rh-inverse"], Box::new(move || check_rh(seq, s))),
        (&["y-frame"], Box::new(move || Ok(vec![check_y_frame(seq)?]))),
        (&["expansion"], Box::new(move || Ok(vec![check_expansion(seq, s)?]))),
        (&["closed-forms"], Box::new(move || Ok(vec![check_closed_forms(seq)?]))),
        (&["reductions"], Box::new(move || Ok(vec![check_reductions(seq, s)?]))),
        (&["freud-string"], Box::new(move || Ok(vec![check_freud_string(seq)?]))),
        (
            &["ad-conditions", "ad-closed-forms", "ad-zeroth-order", "ad-first-order", "ad-second-order"],
            Box::new(move || match &ad_case {
                Some(case) => check_ad_case(seq, case, s),
                None => Ok(["ad-conditions", "ad-closed-forms", "ad-zeroth-order", "ad-first-order", "ad-second-order"]
                    .iter()
                    .map(|n| CheckResult::skip(n, "weight is not an ad-condition Hermite case"))
                    .collect()),
            }),
        ),
    ];

    let mut results: Vec<CheckResult> = jobs
        .par_iter()
        .filter(|(names, _)| names.iter().any(|n| suite.includes(n)))
        .flat_map_iter(|(names, job)| match job() {
            Ok(v) => v,
            Err(e) => names.iter().map(|n| CheckResult::failed(n, &e)).collect(),
        })
        .filter(|c| suite.includes(&c.name))
        .collect();
    results.sort_by_key(|c| CHECKS.iter().position(|(n, _)| *n == c.name));

    VerificationReport {
        family: seq.spec().family().name().to_string(),
        weight: seq.spec().description().to_string(),
        dim: seq.dim(),
        n_range: [0, seq.n_max()],
        quadrature_tol: seq.tol(),
        seed,
        checks: results,
    }
}

/// `‖Σ terms‖ / max(1, maxᵢ ‖termᵢ‖)` for an identity written as a zero sum.
pub(crate) fn zero_sum(terms: &[CMatrix]) -> f64 {
    let dim = terms[0].dim();
    let mut total = CMatrix::zeros(dim);
    let mut scale = 1.0f64;
    for t in terms {
        total += t;
        scale = scale.max(t.frobenius_norm());
    }
    total.frobenius_norm() / scale
}

/// Coefficient-wise [`zero_sum`].
pub(crate) fn zero_sum_poly(terms: &[MatPoly]) -> f64 {
    let dim = terms[0].dim();
    let mut total = MatPoly::zero(dim);
    let mut scale = 1.0f64;
    for t in terms {
        total = total.add(t).expect("same dimension");
        scale = scale.max(t.max_coeff_norm());
    }
    total.max_coeff_norm() / scale
}

/// Small polynomial-building helpers shared by the check modules.
pub(crate) mod poly {
    use crate::matpoly::{CMatrix, MatPoly};

    pub fn c(m: &CMatrix) -> MatPoly {
        MatPoly::constant(m.clone())
    }

    pub fn mul(a: &MatPoly, b: &MatPoly) -> MatPoly {
        a.mul(b).expect("same dimension")
    }

    pub fn sub(a: &MatPoly, b: &MatPoly) -> MatPoly {
        a.sub(b).expect("same dimension")
    }

    /// `p M − M p`.
    pub fn comm(p: &MatPoly, m: &CMatrix) -> MatPoly {
        sub(&p.right_mul(m), &p.left_mul(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_parsing() {
        assert_eq!(Suite::parse("all").unwrap(), Suite::All);
        assert_eq!(
            Suite::parse("lax, recurrence").unwrap(),
            Suite::Named(vec!["lax".into(), "recurrence".into()])
        );
        assert!(Suite::parse("nosuchcheck").is_err());
    }

    #[test]
    fn check_result_pass_rule() {
        assert!(CheckResult::new("lax", 1e-9, 1e-8, 1).pass);
        assert!(!CheckResult::new("lax", f64::NAN, 1e-8, 1).pass);
        assert!(!CheckResult::new("lax", 2e-8, 1e-8, 1).pass);
        assert_eq!(CheckResult::new("lax", 0.0, 1.0, 1).anchor, "Lax pair compatibility");
    }

    #[test]
    fn zero_sum_normalization() {
        let a = CMatrix::identity(2).scale_re(1e3);
        let b = CMatrix::identity(2).scale_re(-1e3 + 1e-6);
        assert!((zero_sum(&[a, b]) - 1e-9).abs() < 1e-12);
    }
}
