use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;
use rayon::prelude::*;

use crate::error::{MoprlError, Result};
use crate::matpoly::{CMatrix, MatrixAccumulator};
use crate::weights::{Envelope, WeightSpec};

/// Gauss–Legendre points per panel.
pub const PANEL_ORDER: usize = 20;
/// Truncation radii beyond this are treated as divergence.
pub const MAX_RADIUS: f64 = 1000.0;
const MAX_PANELS: usize = 1 << 17;
const INITIAL_PANELS: usize = 16;

fn rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        GaussLegendre::new(NonZeroUsize::new(PANEL_ORDER).unwrap())
            .as_node_weight_pairs()
            .to_vec()
    })
}

/// Composite Gauss–Legendre quadrature on a union of base intervals.
///
/// Each base interval is split into `2^s` equal panels; `s` grows until two
/// successive estimates agree.
#[derive(Clone, Debug)]
pub struct Quadrature {
    breakpoints: Vec<f64>,
}

/// Converged integrals plus the node count of the accepted level.
#[derive(Clone, Debug)]
pub struct Integral {
    pub values: Vec<CMatrix>,
    pub nodes: usize,
}

struct Estimate {
    values: Vec<CMatrix>,
    mass: Vec<f64>,
    nodes: usize,
}

impl Quadrature {
    pub fn new(breakpoints: Vec<f64>) -> Result<Self> {
        if breakpoints.len() < 2 || breakpoints.windows(2).any(|w| w[1] <= w[0]) {
            return Err(MoprlError::InvalidArgument(
                "quadrature breakpoints must be strictly increasing".into(),
            ));
        }
        Ok(Self { breakpoints })
    }

    /// Chooses `[−R, R]` so that `|x|^power ‖W(x)‖` is negligible at `±R`, then
    /// doubles `R`. Tabulated weights integrate over their grid cells.
    pub fn for_weight(spec: &WeightSpec, power: usize, tol: f64) -> Result<Self> {
        match spec.envelope() {
            Envelope::Support { .. } => {
                let grid = match spec.family() {
                    crate::weights::Family::Custom { grid, .. } => grid.clone(),
                    _ => unreachable!("only tabulated weights have compact support"),
                };
                Self::new(grid)
            }
            Envelope::Gaussian | Envelope::Quartic => {
                let r = truncation_radius(spec, power, tol)?;
                Self::new(vec![-2.0 * r, 2.0 * r])
            }
        }
    }

    pub fn lo(&self) -> f64 {
        self.breakpoints[0]
    }

    pub fn hi(&self) -> f64 {
        *self.breakpoints.last().unwrap()
    }

    pub fn radius(&self) -> f64 {
        self.lo().abs().max(self.hi().abs())
    }

    fn panels(&self, split: usize) -> Vec<(f64, f64)> {
        self.breakpoints
            .windows(2)
            .flat_map(|w| {
                let h = (w[1] - w[0]) / split as f64;
                (0..split).map(move |k| {
                    let a = w[0] + h * k as f64;
                    let b = if k + 1 == split { w[1] } else { a + h };
                    (a, b)
                })
            })
            .collect()
    }

    fn estimate<F>(&self, split: usize, dim: usize, count: usize, f: &F) -> Estimate
    where
        F: Fn(f64) -> Vec<CMatrix> + Sync,
    {
        let panels = self.panels(split);
        let rule = rule();
        let partials: Vec<(Vec<MatrixAccumulator>, Vec<f64>)> = panels
            .par_iter()
            .map(|&(a, b)| {
                let half = 0.5 * (b - a);
                let mid = 0.5 * (a + b);
                let mut acc = vec![MatrixAccumulator::new(dim); count];
                let mut mass = vec![0.0; count];
                for &(node, weight) in rule {
                    let vals = f(mid + half * node);
                    debug_assert_eq!(vals.len(), count);
                    for ((slot, m), v) in acc.iter_mut().zip(mass.iter_mut()).zip(&vals) {
                        slot.add_scaled(v, weight * half);
                        *m += v.max_abs() * weight * half;
                    }
                }
                (acc, mass)
            })
            .collect();
        // fixed left-to-right reduction keeps results bit-identical across thread counts
        let mut total = vec![MatrixAccumulator::new(dim); count];
        let mut mass = vec![0.0; count];
        for (p, m) in &partials {
            for ((t, tm), (v, vm)) in total.iter_mut().zip(mass.iter_mut()).zip(p.iter().zip(m)) {
                t.merge(v);
                *tm += vm;
            }
        }
        Estimate {
            values: total.iter().map(MatrixAccumulator::value).collect(),
            mass,
            nodes: panels.len() * rule.len(),
        }
    }

    /// Integrates `count` matrix-valued functions (returned together by `f`)
    /// until successive panel doublings agree to `tol/4` relative to
    /// `max(1, ‖value‖, ∫ max|fᵢⱼ|)`. The last term keeps integrals that cancel to
    /// zero (odd moments of even weights) from demanding absolute accuracy.
    pub fn integrate<F>(&self, dim: usize, count: usize, tol: f64, f: F) -> Result<Integral>
    where
        F: Fn(f64) -> Vec<CMatrix> + Sync,
    {
        if tol.is_nan() || tol <= 0.0 {
            return Err(MoprlError::InvalidArgument(format!("tolerance must be positive, got {tol}")));
        }
        let cells = self.breakpoints.len() - 1;
        let mut split = (INITIAL_PANELS / cells).max(1);
        let mut prev = self.estimate(split, dim, count, &f).values;
        loop {
            split *= 2;
            if split * cells > MAX_PANELS {
                return Err(MoprlError::NonConvergent(format!(
                    "no agreement to {tol:e} after {} panels on [{}, {}]",
                    MAX_PANELS,
                    self.lo(),
                    self.hi()
                )));
            }
            let Estimate { values: next, mass, nodes } = self.estimate(split, dim, count, &f);
            if next.iter().any(|m| !m.is_finite()) {
                return Err(MoprlError::NonConvergent("integrand produced non-finite values".into()));
            }
            let worst = next
                .iter()
                .zip(&prev)
                .zip(&mass)
                .map(|((a, b), m)| (a - b).max_abs() / a.max_abs().max(*m).max(1.0))
                .fold(0.0, f64::max);
            if worst < tol / 4.0 {
                return Ok(Integral { values: next, nodes });
            }
            prev = next;
        }
    }
}

fn tail_size(spec: &WeightSpec, power: usize, r: f64) -> f64 {
    let (wp, wm) = (spec.weight_eval(r), spec.weight_eval(-r));
    if !wp.is_finite() || !wm.is_finite() {
        return f64::INFINITY;
    }
    let v = r.max(1.0).powi(power as i32) * wp.max_abs().max(wm.max_abs());
    if v.is_finite() {
        v
    } else {
        f64::INFINITY
    }
}

/// Smallest scanned `R` with `|x|^power ‖W(±x)‖ < tol·1e−3` at `R` and `R + 1`.
pub fn truncation_radius(spec: &WeightSpec, power: usize, tol: f64) -> Result<f64> {
    let small = tol * 1e-3;
    let mut r = 2.0f64;
    while r <= MAX_RADIUS {
        if tail_size(spec, power, r) < small && tail_size(spec, power, r + 1.0) < small {
            return Ok(r);
        }
        r += (0.1 * r).max(0.5);
    }
    Err(MoprlError::NonConvergent(format!(
        "weight does not decay fast enough: |x|^{power} W(x) is not below {small:e} for |x| <= {MAX_RADIUS}"
    )))
}
