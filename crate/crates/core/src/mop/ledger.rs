use serde::{Deserialize, Serialize};

use super::MopSequence;
use crate::error::Result;
use crate::matpoly::{CMatrix, MatPoly};
use crate::moments::MomentTable;
use crate::weights::Family;

/// Serializable snapshot of a [`MopSequence`]; the golden-file format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Ledger {
    pub weight: Family,
    pub n_max: usize,
    pub tol: f64,
    pub moments: MomentTable,
    /// `a[n][j]` for `j < n`
    pub a: Vec<Vec<CMatrix>>,
    pub gamma: Vec<CMatrix>,
    pub gamma_inv: Vec<CMatrix>,
    pub alpha: Vec<CMatrix>,
    /// `β₁ … β_{n_max}`
    pub beta: Vec<CMatrix>,
    /// `b[n][k]` for `n ≤ k ≤ 2 n_max − 1`
    pub b: Vec<Vec<CMatrix>>,
    pub second_kind: Vec<MatPoly>,
    pub kappa: Vec<CMatrix>,
    pub hankel_condition: Vec<f64>,
}

impl Ledger {
    pub fn from_sequence(seq: &MopSequence) -> Self {
        let n_max = seq.n_max();
        let upper = (2 * n_max).max(1) - 1;
        Self {
            weight: seq.spec().family().clone(),
            n_max,
            tol: seq.tol(),
            moments: seq.moments().clone(),
            a: (0..=n_max)
                .map(|n| (0..n).map(|j| seq.a(n as isize, j as isize)).collect())
                .collect(),
            gamma: (0..=n_max).map(|n| seq.gamma(n as isize)).collect(),
            gamma_inv: (0..=n_max).map(|n| seq.gamma_inv(n).clone()).collect(),
            alpha: (0..n_max).map(|n| seq.alpha(n).clone()).collect(),
            beta: (1..=n_max).map(|n| seq.beta(n).clone()).collect(),
            b: (0..=n_max)
                .map(|n| {
                    (n..=upper.max(n))
                        .map(|k| seq.b(n as isize, k as isize).expect("within the moment range"))
                        .collect()
                })
                .collect(),
            second_kind: (0..=n_max).map(|n| seq.second_kind(n).clone()).collect(),
            kappa: (0..=n_max).map(|n| seq.kappa(n).clone()).collect(),
            hankel_condition: seq.conditions().to_vec(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Largest entrywise difference over the `a`, `γ`, `α`, `β` and `b` tables.
    pub fn max_difference(&self, other: &Ledger) -> f64 {
        fn diff(x: &[CMatrix], y: &[CMatrix]) -> f64 {
            if x.len() != y.len() {
                return f64::INFINITY;
            }
            x.iter().zip(y).map(|(a, b)| (a - b).max_abs()).fold(0.0, f64::max)
        }
        fn diff2(x: &[Vec<CMatrix>], y: &[Vec<CMatrix>]) -> f64 {
            if x.len() != y.len() {
                return f64::INFINITY;
            }
            x.iter().zip(y).map(|(a, b)| diff(a, b)).fold(0.0, f64::max)
        }
        [
            diff2(&self.a, &other.a),
            diff(&self.gamma, &other.gamma),
            diff(&self.gamma_inv, &other.gamma_inv),
            diff(&self.alpha, &other.alpha),
            diff(&self.beta, &other.beta),
            diff2(&self.b, &other.b),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}
