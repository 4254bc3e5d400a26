//! Moment tables `μₖ = ∫ xᵏ W(x) dx` and block-Hankel assembly.

mod quadrature;

pub use quadrature::{truncation_radius, Integral, Quadrature, MAX_RADIUS, PANEL_ORDER};

use serde::{Deserialize, Serialize};

use crate::error::{MoprlError, Result};
use crate::matpoly::{BlockMatrix, CMatrix};
use crate::weights::WeightSpec;

/// `(n+1) × (n+1)` block grid with block `(i, j) = μ_{i+j}`.
pub type BlockHankel = BlockMatrix;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MomentTable {
    pub dim: usize,
    pub max_order: usize,
    pub moments: Vec<CMatrix>,
    pub truncation_radius: f64,
    pub tol: f64,
    pub node_count: usize,
}

impl MomentTable {
    pub fn get(&self, k: usize) -> Result<&CMatrix> {
        self.moments.get(k).ok_or(MoprlError::InsufficientMoments {
            needed: k,
            available: self.max_order,
        })
    }

    pub fn require(&self, order: usize) -> Result<()> {
        if order > self.max_order {
            return Err(MoprlError::InsufficientMoments {
                needed: order,
                available: self.max_order,
            });
        }
        Ok(())
    }
}

/// Moments `μ₀ … μ_K` of `spec`, each accurate to about `tol·max(1, ‖μₖ‖)`.
pub fn compute_moments(spec: &WeightSpec, max_order: usize, tol: f64) -> Result<MomentTable> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(MoprlError::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let quad = Quadrature::for_weight(spec, max_order, tol)?;
    compute_moments_on(spec, &quad, max_order, tol)
}

/// As [`compute_moments`] on a caller-chosen integration domain.
pub fn compute_moments_on(spec: &WeightSpec, quad: &Quadrature, max_order: usize, tol: f64) -> Result<MomentTable> {
    let dim = spec.dim();
    let integral = quad.integrate(dim, max_order + 1, tol, |x| {
        let w = spec.weight_eval(x);
        let mut out = Vec::with_capacity(max_order + 1);
        let mut p = 1.0;
        for _ in 0..=max_order {
            out.push(w.scale_re(p));
            p *= x;
        }
        out
    })?;
    // W is Hermitian pointwise, so only rounding separates μₖ from μₖ*
    let moments = integral.values.iter().map(CMatrix::hermitian_part).collect();
    Ok(MomentTable {
        dim,
        max_order,
        moments,
        truncation_radius: quad.radius(),
        tol,
        node_count: integral.nodes,
    })
}

pub fn block_hankel(table: &MomentTable, n: usize) -> Result<BlockHankel> {
    table.require(2 * n)?;
    Ok(BlockMatrix::from_fn(table.dim, n + 1, |i, j| table.moments[i + j].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matpoly::c64;

    const SQRT_PI: f64 = 1.772_453_850_905_516;
    const GAMMA_QUARTER: f64 = 3.625_609_908_221_908;

    fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
        (a - b).max_abs() <= tol
    }

    #[test]
    fn gaussian_moments() {
        let t = compute_moments(&WeightSpec::scalar_hermite(), 6, 1e-13).unwrap();
        let expect = [SQRT_PI, 0.0, SQRT_PI / 2.0, 0.0, 3.0 * SQRT_PI / 4.0, 0.0, 15.0 * SQRT_PI / 8.0];
        for (k, e) in expect.iter().enumerate() {
            assert!((t.moments[k][(0, 0)] - c64(*e, 0.0)).norm() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn nilpotent_hermite_a_moments() {
        let a = CMatrix::unit(2, 0, 1);
        let t = compute_moments(&WeightSpec::hermite_a(a), 2, 1e-13).unwrap();
        assert!(close(&t.moments[0], &CMatrix::diag_real(&[1.5, 1.0]).scale_re(SQRT_PI), 1e-12));
        let off = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).scale_re(SQRT_PI / 2.0);
        assert!(close(&t.moments[1], &off, 1e-12));
        assert!(close(&t.moments[2], &CMatrix::diag_real(&[1.25, 0.5]).scale_re(SQRT_PI), 1e-12));
    }

    #[test]
    fn quartic_mass() {
        let t = compute_moments(&WeightSpec::freud_b(CMatrix::zeros(1)), 0, 1e-13).unwrap();
        assert!((t.moments[0][(0, 0)].re - GAMMA_QUARTER / 2.0).abs() < 1e-10);
    }

    #[test]
    fn hankel_layout() {
        let t = compute_moments(&WeightSpec::scalar_hermite(), 4, 1e-13).unwrap();
        let h0 = block_hankel(&t, 0).unwrap();
        assert_eq!(h0.block(0, 0), &t.moments[0]);
        let h1 = block_hankel(&t, 1).unwrap();
        assert!((h1.block(1, 1)[(0, 0)].re - SQRT_PI / 2.0).abs() < 1e-12);
        assert!(h1.block(0, 1)[(0, 0)].norm() < 1e-14);
        let h2 = block_hankel(&t, 2).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(h2.block(i, j), &t.moments[i + j]);
            }
        }
        assert!(matches!(block_hankel(&t, 3), Err(MoprlError::InsufficientMoments { .. })));
    }

    #[test]
    fn divergent_weight_is_reported() {
        let err = compute_moments(&WeightSpec::hermite_b(CMatrix::identity(1)), 2, 1e-12).unwrap_err();
        assert!(matches!(err, MoprlError::NonConvergent(_)));
    }

    #[test]
    fn table_round_trips_through_json() {
        let t = compute_moments(&WeightSpec::scalar_hermite(), 2, 1e-12).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        let back: MomentTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back.moments, t.moments);
        assert_eq!(back.node_count, t.node_count);
    }
}
