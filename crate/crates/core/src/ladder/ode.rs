use num_complex::Complex64;

use super::{ladder_coeffs, LadderCoeffs};
use crate::error::{MoprlError, Result};
use crate::matpoly::{CMatrix, MatPoly};
use crate::mop::MopSequence;

/// Coefficients `Mₙ`, `Nₙ` of the second-order equation
/// `P̂″ + 2P̂′G + P̂(G′ + G²) + MₙP̂′ + NₙP̂ + MₙP̂G = 0`.
#[derive(Clone, Debug)]
pub struct OdeCoeffs {
    pub n: usize,
    g: MatPoly,
    cur: LadderCoeffs,
    next: LadderCoeffs,
    prev: Option<LadderCoeffs>,
    alpha: CMatrix,
    beta: CMatrix,
}

impl OdeCoeffs {
    /// Uses the weight's own `G`; needs `n < n_max` for `ℬ_{n+1}` and `αₙ`.
    pub fn new(seq: &MopSequence, n: usize) -> Result<Self> {
        Self::with_source(seq, n, seq.spec().g_poly())
    }

    pub fn with_source(seq: &MopSequence, n: usize, g: &MatPoly) -> Result<Self> {
        if n >= seq.n_max() {
            return Err(MoprlError::InvalidArgument(format!(
                "second-order coefficients need n < n_max = {}",
                seq.n_max()
            )));
        }
        Ok(Self {
            n,
            g: g.clone(),
            cur: ladder_coeffs(seq, n, g)?,
            next: ladder_coeffs(seq, n + 1, g)?,
            prev: if n > 0 { Some(ladder_coeffs(seq, n - 1, g)?) } else { None },
            alpha: seq.alpha(n).clone(),
            beta: seq.beta(n).clone(),
        })
    }

    pub fn ladder(&self) -> &LadderCoeffs {
        &self.cur
    }

    /// `Mₙ(z) = −(𝒜ₙ*)′𝒜ₙ^{−*} + ℬₙ − 𝒜ₙ*(z − αₙ) + 𝒜ₙ*ℬ_{n+1}𝒜ₙ^{−*}`.
    pub fn m_at(&self, z: Complex64) -> Result<CMatrix> {
        let a_star = self.cur.a_poly.adjoint_reflect();
        let a = a_star.eval(z);
        let a_inv = a.inverse()?;
        let da = a_star.derivative().eval(z);
        let shifted = &CMatrix::identity(self.g.dim()).scale(z) - &self.alpha;
        Ok(&(&(&(-&(&da * &a_inv)) + &self.cur.b_poly.eval(z)) - &(&a * &shifted))
            + &(&(&a * &self.next.b_poly.eval(z)) * &a_inv))
    }

    /// `Nₙ(z) = Mₙℬₙ − ℬₙ² + ℬₙ′ + 𝒜ₙ*βₙ𝒜*_{n−1}`.
    pub fn n_at(&self, z: Complex64) -> Result<CMatrix> {
        let m = self.m_at(z)?;
        let b = self.cur.b_poly.eval(z);
        let db = self.cur.b_poly.derivative().eval(z);
        let mut out = &(&(&m * &b) - &(&b * &b)) + &db;
        if let Some(prev) = &self.prev {
            let a = self.cur.a_poly.adjoint_reflect().eval(z);
            let ap = prev.a_poly.adjoint_reflect().eval(z);
            out += &(&(&a * &self.beta) * &ap);
        }
        Ok(out)
    }

    /// The six terms of the equation applied to `p` at `z`; they sum to zero.
    pub fn residual_terms(&self, p: &MatPoly, z: Complex64) -> Result<Vec<CMatrix>> {
        let (m, nn) = (self.m_at(z)?, self.n_at(z)?);
        let g = self.g.eval(z);
        let dg = self.g.derivative().eval(z);
        let p0 = p.eval(z);
        let p1 = p.derivative().eval(z);
        let p2 = p.derivative().derivative().eval(z);
        Ok(vec![
            p2,
            (&p1 * &g).scale_re(2.0),
            &p0 * &(&dg + &(&g * &g)),
            &m * &p1,
            &nn * &p0,
            &(&m * &p0) * &g,
        ])
    }

    /// Left-hand side of the equation applied to `p` at `z`.
    pub fn residual(&self, p: &MatPoly, z: Complex64) -> Result<CMatrix> {
        let terms = self.residual_terms(p, z)?;
        let mut out = CMatrix::zeros(self.g.dim());
        for t in &terms {
            out += t;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matpoly::c64;
    use crate::weights::WeightSpec;

    #[test]
    fn hermite_a_coefficients() {
        let a = CMatrix::unit(2, 0, 1);
        let q = MopSequence::build(&WeightSpec::hermite_a(a.clone()), 5, 1e-13).unwrap();
        let g = q.spec().g_poly().clone();
        for n in 1..5 {
            let c = OdeCoeffs::new(&q, n).unwrap();
            for z in [c64(0.3, 0.7), c64(-1.2, 0.4)] {
                let m = c.m_at(z).unwrap();
                let expected_m = (q.alpha(n) - &a).scale_re(2.0);
                assert!((&m - &expected_m).max_abs() < 1e-8, "n={n}");
                let gz = g.eval(z);
                let expected_n = &(&(&(-&(&expected_m * &gz)) - &(&gz * &gz)) + &CMatrix::identity(2))
                    + &q.beta(n).scale_re(4.0);
                assert!((&c.n_at(z).unwrap() - &expected_n).max_abs() < 1e-8, "n={n}");
                assert!(c.residual(q.monic(n), z).unwrap().max_abs() < 1e-7);
            }
        }
        assert!(OdeCoeffs::new(&q, 5).is_err());
    }
}
