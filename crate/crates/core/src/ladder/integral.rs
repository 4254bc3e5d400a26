//! Coefficients of `Y′ = 𝔉Y` as Stieltjes integrals against `W′`; these give the
//! plain lowering relation `P̂ₙ′ = −𝔅ₙP̂ₙ + 𝔄ₙ*βₙP̂_{n−1}`.

use num_complex::Complex64;

use crate::error::{MoprlError, Result};
use crate::matpoly::{two_pi_i, CMatrix};
use crate::mop::MopSequence;

/// `𝔄ₙ(z)` and `𝔅ₙ(z)` from Stieltjes integrals against `W′`.
#[derive(Clone, Debug)]
pub struct IntegralCoeffs {
    pub n: usize,
    pub z: Complex64,
    pub a: CMatrix,
    pub b: CMatrix,
}

/// `𝔄ₙ = −γₙ ∫ P̂ₙW′P̂ₙ*/(t − z)`, `𝔅ₙ = −(∫ P̂ₙW′P̂*_{n−1}/(t − z)) γ_{n−1}`.
pub fn integral_coeffs(seq: &MopSequence, n: usize, z: Complex64) -> Result<IntegralCoeffs> {
    if n > seq.n_max() {
        return Err(MoprlError::InvalidArgument(format!("degree {n} exceeds n_max = {}", seq.n_max())));
    }
    let raw = seq.stieltjes(z, 2, |t| {
        let dw = seq.spec().weight_derivative(t);
        let p = seq.monic(n).eval_re(t);
        let lhs = &p * &dw;
        let q = if n > 0 {
            seq.monic(n - 1).eval_re(t).adjoint()
        } else {
            CMatrix::zeros(seq.dim())
        };
        vec![&lhs * &p.adjoint(), &lhs * &q]
    })?;
    Ok(IntegralCoeffs {
        n,
        z,
        a: -&(&seq.gamma(n as isize) * &raw[0]),
        b: -&(&raw[1] * &seq.gamma(n as isize - 1)),
    })
}

/// `[−𝔅ₙ, −(1/2πi)γₙ⁻¹𝔄ₙ; 2πi𝔄_{n−1}γ_{n−1}, 𝔅ₙ*]`, which satisfies `Y′ = 𝔉Y`.
pub fn y_frame_f(seq: &MopSequence, n: usize, z: Complex64) -> Result<CMatrix> {
    if n == 0 {
        return Err(MoprlError::InvalidArgument("the frame matrix needs n >= 1".into()));
    }
    let tpi = two_pi_i();
    let cur = integral_coeffs(seq, n, z)?;
    let prev = integral_coeffs(seq, n - 1, z)?;
    let mirror = integral_coeffs(seq, n, z.conj())?;
    Ok(CMatrix::block2(
        &(-&cur.b),
        &(seq.gamma_inv(n) * &cur.a).scale(-1.0 / tpi),
        &(&prev.a * &seq.gamma(n as isize - 1)).scale(tpi),
        &mirror.b.adjoint(),
    ))
}

/// `𝔄ₙ*(z) = (𝔄ₙ(z̄))*`, likewise for `𝔅ₙ`.
pub fn integral_coeffs_adjoint(seq: &MopSequence, n: usize, z: Complex64) -> Result<IntegralCoeffs> {
    let c = integral_coeffs(seq, n, z.conj())?;
    Ok(IntegralCoeffs {
        n,
        z,
        a: c.a.adjoint(),
        b: c.b.adjoint(),
    })
}
