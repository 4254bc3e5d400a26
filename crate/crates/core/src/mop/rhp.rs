use num_complex::Complex64;

use super::MopSequence;
use crate::error::{MoprlError, Result};
use crate::matpoly::{two_pi_i, CMatrix};

/// Minimum distance from the real axis for Cauchy transforms.
pub const AXIS_GUARD: f64 = 1e-6;

/// Which `F` to transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CauchyIntegrand {
    /// `W`
    Weight,
    /// `P̂ₙ W`
    MonicTimesWeight(usize),
    /// `W P̂ₙ*`
    WeightTimesMonicAdjoint(usize),
}

/// `𝒞(F)(z) = (1/2πi) ∫ F(t)/(t − z) dt` and its `z`-derivative.
#[derive(Clone, Debug)]
pub struct CauchyValue {
    pub value: CMatrix,
    pub derivative: CMatrix,
}

fn check_axis(z: Complex64) -> Result<()> {
    if z.im.abs() <= AXIS_GUARD || !z.is_finite() {
        return Err(MoprlError::NearAxis { re: z.re, im: z.im });
    }
    Ok(())
}

impl MopSequence {
    /// `∫ f(t)/(t − z) dt` for `count` functions at once, plus `∫ f(t)/(t − z)² dt`
    /// as the second half of the result.
    pub fn stieltjes<F>(&self, z: Complex64, count: usize, f: F) -> Result<Vec<CMatrix>>
    where
        F: Fn(f64) -> Vec<CMatrix> + Sync,
    {
        check_axis(z)?;
        let integral = self.quadrature().integrate(self.dim(), 2 * count, self.tol(), |t| {
            let r = 1.0 / (Complex64::new(t, 0.0) - z);
            let vals = f(t);
            let mut out: Vec<CMatrix> = vals.iter().map(|v| v.scale(r)).collect();
            out.extend(vals.iter().map(|v| v.scale(r * r)));
            out
        })?;
        Ok(integral.values)
    }

    /// Cauchy transforms of several integrands in one quadrature pass.
    pub fn cauchy_many(&self, z: Complex64, which: &[CauchyIntegrand]) -> Result<Vec<CauchyValue>> {
        for w in which {
            if let CauchyIntegrand::MonicTimesWeight(n) | CauchyIntegrand::WeightTimesMonicAdjoint(n) = *w {
                if n > self.n_max() {
                    return Err(MoprlError::InvalidArgument(format!(
                        "degree {n} exceeds n_max = {}",
                        self.n_max()
                    )));
                }
            }
        }
        let raw = self.stieltjes(z, which.len(), |t| {
            let w = self.spec().weight_eval(t);
            which
                .iter()
                .map(|sel| match *sel {
                    CauchyIntegrand::Weight => w.clone(),
                    CauchyIntegrand::MonicTimesWeight(n) => &self.monic(n).eval_re(t) * &w,
                    CauchyIntegrand::WeightTimesMonicAdjoint(n) => &w * &self.monic(n).eval_re(t).adjoint(),
                })
                .collect()
        })?;
        let c = 1.0 / two_pi_i();
        let k = which.len();
        Ok((0..k)
            .map(|i| CauchyValue {
                value: raw[i].scale(c),
                derivative: raw[k + i].scale(c),
            })
            .collect())
    }
}

pub fn cauchy_transform(seq: &MopSequence, which: CauchyIntegrand, z: Complex64) -> Result<CauchyValue> {
    Ok(seq.cauchy_many(z, &[which])?.remove(0))
}

/// The Riemann–Hilbert solution `Yⁿ(z)`, its inverse and its derivative.
#[derive(Clone, Debug)]
pub struct RhFrame {
    pub n: usize,
    pub z: Complex64,
    pub y: CMatrix,
    pub y_inv: CMatrix,
    pub dy: CMatrix,
}

impl RhFrame {
    pub fn new(seq: &MopSequence, n: usize, z: Complex64) -> Result<Self> {
        let dim = seq.dim();
        let id = CMatrix::identity(dim);
        let zero = CMatrix::zeros(dim);
        if n == 0 {
            let cw = cauchy_transform(seq, CauchyIntegrand::Weight, z)?;
            return Ok(Self {
                n,
                z,
                y: CMatrix::block2(&id, &cw.value, &zero, &id),
                y_inv: CMatrix::block2(&id, &(-&cw.value), &zero, &id),
                dy: CMatrix::block2(&zero, &cw.derivative, &zero, &zero),
            });
        }
        use CauchyIntegrand::*;
        let c = seq.cauchy_many(
            z,
            &[
                MonicTimesWeight(n),
                MonicTimesWeight(n - 1),
                WeightTimesMonicAdjoint(n),
                WeightTimesMonicAdjoint(n - 1),
            ],
        )?;
        let tpi = two_pi_i();
        let g = seq.gamma(n as isize - 1);
        let p = seq.monic(n);
        let q = seq.monic(n - 1);
        let low = |m: &CMatrix| (&g * m).scale(-tpi);

        let y = CMatrix::block2(&p.eval(z), &c[0].value, &low(&q.eval(z)), &low(&c[1].value));
        let dy = CMatrix::block2(
            &p.derivative().eval(z),
            &c[0].derivative,
            &low(&q.derivative().eval(z)),
            &low(&c[1].derivative),
        );
        let y_inv = CMatrix::block2(
            &(&c[3].value * &g).scale(-tpi),
            &(-&c[2].value),
            &(&q.adjoint_reflect().eval(z) * &g).scale(tpi),
            &p.adjoint_reflect().eval(z),
        );
        Ok(Self { n, z, y, y_inv, dy })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matpoly::c64;
    use crate::weights::WeightSpec;

    fn nil_a() -> MopSequence {
        MopSequence::build(&WeightSpec::hermite_a(CMatrix::unit(2, 0, 1)), 4, 1e-13).unwrap()
    }

    #[test]
    fn near_axis_rejected() {
        let q = nil_a();
        let err = cauchy_transform(&q, CauchyIntegrand::Weight, c64(0.5, 1e-7)).unwrap_err();
        assert!(matches!(err, MoprlError::NearAxis { .. }));
    }

    #[test]
    fn determinant_and_inverse() {
        let q = nil_a();
        let z = c64(1.0, 1.0);
        for n in 0..=4 {
            let f = RhFrame::new(&q, n, z).unwrap();
            assert!((f.y.determinant() - c64(1.0, 0.0)).norm() < 1e-9, "n={n}");
            let prod = &f.y * &f.y_inv;
            assert!((&prod - &CMatrix::identity(4)).max_abs() < 1e-8, "n={n}");
        }
    }

    #[test]
    fn schwarz_reflection_for_real_weight() {
        let q = nil_a();
        let z = c64(0.4, 0.9);
        let up = cauchy_transform(&q, CauchyIntegrand::MonicTimesWeight(2), z).unwrap().value;
        let down = cauchy_transform(&q, CauchyIntegrand::MonicTimesWeight(2), z.conj()).unwrap().value;
        // 𝒞(F)(z̄) = −conj(𝒞(F)(z)) for real F
        assert!((&down + &up.conj()).max_abs() < 1e-12);
    }

    #[test]
    fn large_z_decay() {
        let q = nil_a();
        let z = c64(0.0, 50.0);
        let c = cauchy_transform(&q, CauchyIntegrand::MonicTimesWeight(1), z).unwrap().value;
        // 2πi 𝒞(P̂₁W)(z) ≈ −γ₁⁻¹ z⁻²
        let lead = q.gamma_inv(1).scale(-1.0 / (z * z));
        let got = c.scale(two_pi_i());
        assert!((&got - &lead).max_abs() < 0.05 * lead.max_abs());
    }
}
