//! Ladder coefficients `𝒜ₙ(z; G)`, `ℬₙ(z; G)` and the matrices built from them.
//!
//! All polynomial coefficients come straight from the `a`/`b` tables of a
//! [`MopSequence`]; no integration happens here except in [`integral`].

pub mod integral;
mod ode;

pub use ode::OdeCoeffs;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{MoprlError, Result};
use crate::matpoly::{two_pi_i, CMatrix, MatPoly};
use crate::mop::MopSequence;
use crate::weights::AdConditionCase;

/// `𝒜ₙ(·; source)` and `ℬₙ(·; source)` for one degree.
#[derive(Clone, Debug, Serialize)]
pub struct LadderCoeffs {
    pub n: usize,
    pub source: MatPoly,
    #[serde(rename = "A")]
    pub a_poly: MatPoly,
    #[serde(rename = "B")]
    pub b_poly: MatPoly,
}

/// `P̂_{n,k}(z) = zᵏ I + a_{n,n−1} z^{k−1} + ⋯ + a_{n,n−k}`, for `k ≤ n`.
pub fn truncated_monic(seq: &MopSequence, n: usize, k: usize) -> Result<MatPoly> {
    if k > n {
        return Err(MoprlError::InvalidArgument(format!("truncation order {k} exceeds degree {n}")));
    }
    Ok(truncated(seq, n as isize, k))
}

/// Total version: `z^{k−n} P̂ₙ` for `k > n` (the zero-extension of `a_{n,j}`), zero for `n < 0`.
fn truncated(seq: &MopSequence, n: isize, k: usize) -> MatPoly {
    let coeffs = (0..=k)
        .map(|i| seq.a(n, n - k as isize + i as isize))
        .collect();
    MatPoly::new(seq.dim(), coeffs).expect("dimensions agree")
}

fn delta_total(seq: &MopSequence, n: isize, j: usize, source: &MatPoly) -> MatPoly {
    let m = source.degree();
    let mut acc = MatPoly::zero(seq.dim());
    for k in 0..=j {
        let term = truncated(seq, n, k).right_mul(&source.coeff(m - j + k));
        acc = acc.add(&term).expect("dimensions agree");
    }
    acc
}

/// `Δ_{j,n}(z) = Σ_{k=0}^{j} P̂_{n,k}(z) M_{m−j+k}` with `Mᵢ` the coefficients of `source`.
pub fn delta(seq: &MopSequence, n: usize, j: usize, source: &MatPoly) -> Result<MatPoly> {
    if j > source.degree() {
        return Err(MoprlError::InvalidArgument(format!(
            "j = {j} exceeds deg G = {}",
            source.degree()
        )));
    }
    check_source(seq, source)?;
    Ok(delta_total(seq, n as isize, j, source))
}

fn check_source(seq: &MopSequence, source: &MatPoly) -> Result<()> {
    if source.dim() != seq.dim() {
        return Err(MoprlError::DimensionMismatch {
            expected: seq.dim(),
            found: source.dim(),
        });
    }
    Ok(())
}

fn check_degree(seq: &MopSequence, n: usize) -> Result<()> {
    if n > seq.n_max() {
        return Err(MoprlError::InvalidArgument(format!(
            "degree {n} exceeds n_max = {}",
            seq.n_max()
        )));
    }
    Ok(())
}

/// `𝒜ₙ(z; source)` and `ℬₙ(z; source)` from the `b`-table and `Δ` polynomials.
///
/// `ℬ₀` is `−source`.
pub fn ladder_coeffs(seq: &MopSequence, n: usize, source: &MatPoly) -> Result<LadderCoeffs> {
    check_source(seq, source)?;
    check_degree(seq, n)?;
    let m = source.degree() as isize;
    let ni = n as isize;
    let dim = seq.dim();

    let mut a_sum = MatPoly::zero(dim);
    for j in 0..m {
        let d = delta_total(seq, ni, j as usize, source);
        let b = seq.b(ni, ni + m - j - 1)?;
        let t1 = d.adjoint_reflect().left_mul(&b);
        let t2 = d.right_mul(&b.adjoint());
        a_sum = a_sum.add(&t1)?.add(&t2)?;
    }
    let a_poly = a_sum.left_mul(&seq.gamma(ni)).neg();

    let mut b_sum = MatPoly::zero(dim);
    for j in 0..=m {
        let d = delta_total(seq, ni, j as usize, source);
        let d_prev = delta_total(seq, ni - 1, j as usize, source);
        let t1 = d.right_mul(&seq.b(ni - 1, ni + m - j - 1)?.adjoint());
        let t2 = d_prev.adjoint_reflect().left_mul(&seq.b(ni, ni + m - j - 2)?);
        b_sum = b_sum.add(&t1)?.add(&t2)?;
    }
    // the sum vanishes at n = 0; the lowering relation there forces ℬ₀ = −G
    let b_poly = if n == 0 {
        source.neg()
    } else {
        b_sum.right_mul(&seq.gamma(ni - 1)).neg()
    };

    Ok(LadderCoeffs {
        n,
        source: source.clone(),
        a_poly,
        b_poly,
    })
}

/// Ladder coefficients for the polynomial `H` of an ad-condition case.
pub fn ladder_coeffs_h(seq: &MopSequence, n: usize, case: &AdConditionCase) -> Result<LadderCoeffs> {
    let (r1, r2) = case.ad_residuals();
    let slack = 64.0 * f64::EPSILON * case.a.max_abs().max(1.0).powi(2);
    if r1 > slack || r2 > slack {
        return Err(MoprlError::InvalidArgument(format!(
            "ad-conditions fail (residuals {r1:e}, {r2:e})"
        )));
    }
    ladder_coeffs(seq, n, &case.h_poly())
}

/// `Fₙ(z) = [−ℬₙ, −(1/2πi)γₙ⁻¹𝒜ₙ; 2πi𝒜_{n−1}γ_{n−1}, ℬₙ*]`, `n ≥ 1`.
pub fn f_matrix(seq: &MopSequence, n: usize, z: Complex64, source: &MatPoly) -> Result<CMatrix> {
    if n == 0 {
        return Err(MoprlError::InvalidArgument("F_n needs n >= 1".into()));
    }
    let cur = ladder_coeffs(seq, n, source)?;
    let prev = ladder_coeffs(seq, n - 1, source)?;
    Ok(assemble_f(seq, n, z, &cur, &prev))
}

pub(crate) fn assemble_f(seq: &MopSequence, n: usize, z: Complex64, cur: &LadderCoeffs, prev: &LadderCoeffs) -> CMatrix {
    let tpi = two_pi_i();
    let b = cur.b_poly.eval(z);
    let b_star = cur.b_poly.adjoint_reflect().eval(z);
    let a = cur.a_poly.eval(z);
    let a_prev = prev.a_poly.eval(z);
    CMatrix::block2(
        &(-&b),
        &(seq.gamma_inv(n) * &a).scale(-1.0 / tpi),
        &(&a_prev * &seq.gamma(n as isize - 1)).scale(tpi),
        &b_star,
    )
}

/// `Yᵢⁿ` from the asymptotic expansion of the Riemann–Hilbert solution.
pub fn y_coefficient(seq: &MopSequence, n: usize, i: usize) -> Result<CMatrix> {
    let dim = seq.dim();
    if i == 0 {
        return Ok(CMatrix::identity(2 * dim));
    }
    let tpi = two_pi_i();
    let (ni, ii) = (n as isize, i as isize);
    let g = seq.gamma(ni - 1);
    Ok(CMatrix::block2(
        &seq.a(ni, ni - ii),
        &seq.b(ni, ni + ii - 1)?.scale(-1.0 / tpi),
        &(&g * &seq.a(ni - 1, ni - ii)).scale(-tpi),
        &(&g * &seq.b(ni - 1, ni + ii - 1)?),
    ))
}

/// `Ỹᵢⁿ` from the expansion of the inverse, with adjoints in place of transposes.
pub fn y_inverse_coefficient(seq: &MopSequence, n: usize, i: usize) -> Result<CMatrix> {
    let dim = seq.dim();
    if i == 0 {
        return Ok(CMatrix::identity(2 * dim));
    }
    let tpi = two_pi_i();
    let (ni, ii) = (n as isize, i as isize);
    let g = seq.gamma(ni - 1);
    Ok(CMatrix::block2(
        &(&seq.b(ni - 1, ni + ii - 1)?.adjoint() * &g),
        &seq.b(ni, ni + ii - 1)?.adjoint().scale(1.0 / tpi),
        &(&seq.a(ni - 1, ni - ii).adjoint() * &g).scale(tpi),
        &seq.a(ni, ni - ii).adjoint(),
    ))
}

/// `Fₙ(z) = Σₖ (Σ_{j≥k} Σ_{i≤j−k} Yᵢ M̃ⱼ Ỹ_{j−i−k}) zᵏ` with `M̃ⱼ = diag(Mⱼ, −Mⱼ*)`.
pub fn f_matrix_via_expansion(seq: &MopSequence, n: usize, z: Complex64, source: &MatPoly) -> Result<CMatrix> {
    check_source(seq, source)?;
    check_degree(seq, n)?;
    let m = source.degree();
    let dim = seq.dim();
    let y: Vec<CMatrix> = (0..=m).map(|i| y_coefficient(seq, n, i)).collect::<Result<_>>()?;
    let yt: Vec<CMatrix> = (0..=m).map(|i| y_inverse_coefficient(seq, n, i)).collect::<Result<_>>()?;
    let zero = CMatrix::zeros(dim);
    let mt: Vec<CMatrix> = source
        .coeffs()
        .iter()
        .map(|mj| CMatrix::block2(mj, &zero, &zero, &(-&mj.adjoint())))
        .collect();
    let mut total = CMatrix::zeros(2 * dim);
    let mut zk = Complex64::new(1.0, 0.0);
    for k in 0..=m {
        let mut coeff = CMatrix::zeros(2 * dim);
        for j in k..=m {
            for i in 0..=(j - k) {
                coeff += &(&(&y[i] * &mt[j]) * &yt[j - i - k]);
            }
        }
        total += &coeff.scale(zk);
        zk *= z;
    }
    Ok(total)
}

/// `Eₙ(z) = [zI − αₙ, (1/2πi)γₙ⁻¹; −2πiγₙ, 0]`, so that `Y^{n+1} = Eₙ Yⁿ`.
pub fn e_matrix(seq: &MopSequence, n: usize, z: Complex64) -> CMatrix {
    let dim = seq.dim();
    let tpi = two_pi_i();
    CMatrix::block2(
        &(&CMatrix::identity(dim).scale(z) - seq.alpha(n)),
        &seq.gamma_inv(n).scale(1.0 / tpi),
        &seq.gamma(n as isize).scale(-tpi),
        &CMatrix::zeros(dim),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matpoly::c64;
    use crate::weights::{AdCase, WeightSpec};

    fn nil() -> CMatrix {
        CMatrix::unit(2, 0, 1)
    }

    fn herm_a() -> MopSequence {
        MopSequence::build(&WeightSpec::hermite_a(nil()), 5, 1e-13).unwrap()
    }

    #[test]
    fn truncations() {
        let h = MopSequence::build(&WeightSpec::scalar_hermite(), 3, 1e-13).unwrap();
        assert_eq!(truncated_monic(&h, 2, 0).unwrap(), MatPoly::identity(1));
        let t = truncated_monic(&h, 2, 1).unwrap();
        assert_eq!(t.degree(), 1);
        assert!(t.coeff(0).max_abs() < 1e-12);
        assert_eq!(&truncated_monic(&h, 3, 3).unwrap(), h.monic(3));
        assert!(truncated_monic(&h, 1, 2).is_err());
    }

    #[test]
    fn delta_examples() {
        let q = herm_a();
        let g = q.spec().g_poly().clone();
        assert_eq!(delta(&q, 3, 0, &g).unwrap(), MatPoly::constant(g.coeff(1)));
        let d = delta(&q, 3, 1, &g).unwrap();
        let expected = MatPoly::from_coeffs(vec![&nil() - &q.a(3, 2), CMatrix::identity(2).scale_re(-1.0)]);
        assert!(d.sub(&expected).unwrap().max_coeff_norm() < 1e-15);
        assert!(delta(&q, 3, 0, &MatPoly::zero(2)).unwrap().is_zero());
    }

    #[test]
    fn hermite_a_closed_forms() {
        let q = herm_a();
        let g = q.spec().g_poly().clone();
        for n in 0..=5 {
            let c = ladder_coeffs(&q, n, &g).unwrap();
            assert!(c.a_poly.sub(&MatPoly::constant(CMatrix::identity(2).scale_re(2.0))).unwrap().max_coeff_norm() < 1e-10);
            assert!(c.b_poly.add(&g).unwrap().max_coeff_norm() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn expansion_matches_direct() {
        let q = herm_a();
        let g = q.spec().g_poly().clone();
        let m0 = MatPoly::constant(CMatrix::from_real_rows(&[&[0.5, 1.0], &[-0.3, 0.2]]));
        let m2 = MatPoly::from_coeffs(vec![nil(), CMatrix::identity(2), nil().transpose()]);
        for src in [&m0, &g, &m2] {
            for z in [c64(0.0, 0.0), c64(1.0, 1.0), c64(-0.7, 0.3)] {
                for n in 1..=4 {
                    let a = f_matrix(&q, n, z, src).unwrap();
                    let b = f_matrix_via_expansion(&q, n, z, src).unwrap();
                    assert!((&a - &b).max_abs() < 1e-9, "deg {} n={n} z={z}", src.degree());
                }
            }
        }
        let f = f_matrix(&q, 2, c64(0.3, 0.1), &m0).unwrap();
        let m = m0.coeff(0);
        let zero = CMatrix::zeros(2);
        assert!((&f - &CMatrix::block2(&m, &zero, &zero, &(-&m.adjoint()))).max_abs() < 1e-10);
        assert!(f_matrix(&q, 0, c64(0.0, 1.0), &g).is_err());
    }

    #[test]
    fn linearity_is_exact() {
        let q = herm_a();
        let g = q.spec().g_poly().clone();
        let h = AdConditionCase::with_unit_nu(AdCase::Case1, 2).unwrap().h_poly();
        let sum = g.add(&h).unwrap();
        for n in 0..=4 {
            let (cg, ch, cs) = (
                ladder_coeffs(&q, n, &g).unwrap(),
                ladder_coeffs(&q, n, &h).unwrap(),
                ladder_coeffs(&q, n, &sum).unwrap(),
            );
            let da = cs.a_poly.sub(&cg.a_poly.add(&ch.a_poly).unwrap()).unwrap();
            let db = cs.b_poly.sub(&cg.b_poly.add(&ch.b_poly).unwrap()).unwrap();
            assert!(da.max_coeff_norm() < 1e-14 && db.max_coeff_norm() < 1e-14);
        }
    }

    #[test]
    fn case1_h_coefficients() {
        let case = AdConditionCase::with_unit_nu(AdCase::Case1, 2).unwrap();
        let q = MopSequence::build(&case.weight(), 5, 1e-13).unwrap();
        let i = c64(0.0, 1.0);
        for n in 0..5 {
            let c = ladder_coeffs_h(&q, n, &case).unwrap();
            let expected = (&q.alpha(n).adjoint() - &case.a.adjoint()).scale(i * 2.0);
            let d = c.a_poly.sub(&MatPoly::constant(expected)).unwrap();
            assert!(d.max_coeff_norm() < 1e-9, "n={n}");
        }
    }

    #[test]
    fn scalar_h_is_trivial() {
        let q = herm_a();
        // χ = i p(z) I with p(z) = 1 + 2z
        let h = MatPoly::from_coeffs(vec![CMatrix::identity(2).scale(c64(0.0, 1.0)), CMatrix::identity(2).scale(c64(0.0, 2.0))]);
        for n in 1..=4 {
            let c = ladder_coeffs(&q, n, &h).unwrap();
            assert!(c.a_poly.max_coeff_norm() < 1e-10);
            assert!(c.b_poly.add(&h).unwrap().max_coeff_norm() < 1e-10);
        }
    }
}
