use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{c, mul};
use super::{zero_sum, zero_sum_poly, CheckResult, SampleSet, FREUD_TOL, IDENTITY_TOL};
use crate::error::Result;
use crate::ladder::integral::y_frame_f;
use crate::ladder::{assemble_f, e_matrix, f_matrix, f_matrix_via_expansion, ladder_coeffs, LadderCoeffs, OdeCoeffs};
use crate::matpoly::{c64, CMatrix, MatPoly};
use crate::mop::{MopSequence, RhFrame};

/// Smallest singular value below which a sample point is nudged away.
const SINGULAR_GUARD: f64 = 1e-8;

fn all_coeffs(seq: &MopSequence, source: &MatPoly) -> Result<Vec<LadderCoeffs>> {
    (0..=seq.n_max()).map(|n| ladder_coeffs(seq, n, source)).collect()
}

fn rational_tol(source: &MatPoly) -> f64 {
    if source.degree() >= 3 {
        FREUD_TOL
    } else {
        IDENTITY_TOL
    }
}

/// `γₙ𝒜ₙ* = 𝒜ₙγₙ`, coefficient-wise.
pub fn check_ladder_symmetry(seq: &MopSequence, source: &MatPoly) -> Result<CheckResult> {
    let lc = all_coeffs(seq, source)?;
    let worst = lc
        .iter()
        .map(|l| {
            let g = seq.gamma(l.n as isize);
            zero_sum_poly(&[l.a_poly.adjoint_reflect().left_mul(&g), l.a_poly.right_mul(&g).neg()])
        })
        .fold(0.0, f64::max);
    Ok(CheckResult::new("ladder-symmetry", worst, 1e-9, lc.len()))
}

/// Both compatibility conditions, coefficient-wise in `z`.
pub fn check_string(seq: &MopSequence, source: &MatPoly) -> Result<Vec<CheckResult>> {
    let lc = all_coeffs(seq, source)?;
    let dim = seq.dim();
    let (mut first, mut second) = (0.0f64, 0.0f64);
    for n in 0..seq.n_max() {
        let zma = MatPoly::z_minus(seq.alpha(n));
        let (cur, next) = (&lc[n], &lc[n + 1]);
        let mut terms = vec![
            MatPoly::identity(dim),
            mul(&next.b_poly, &zma),
            mul(&zma, &cur.b_poly).neg(),
            next.a_poly.adjoint_reflect().right_mul(seq.beta(n + 1)).neg(),
        ];
        if n > 0 {
            terms.push(lc[n - 1].a_poly.adjoint_reflect().left_mul(seq.beta(n)));
        }
        first = first.max(zero_sum_poly(&terms));

        let g = seq.gamma(n as isize);
        second = second.max(zero_sum_poly(&[
            next.b_poly.clone(),
            cur.b_poly.adjoint_reflect().left_mul(seq.gamma_inv(n)).right_mul(&g),
            mul(&zma, &cur.a_poly.adjoint_reflect()).neg(),
        ]));
    }
    let tol = rational_tol(source);
    Ok(vec![
        CheckResult::new("string-first", first, tol, seq.n_max()),
        CheckResult::new("string-second", second, tol, seq.n_max()),
    ])
}

/// Lowering `P̂′ + P̂G = −ℬₙP̂ₙ + 𝒜ₙ*βₙP̂_{n−1}` and raising
/// `P̂′ + P̂G = (𝒜ₙ*(z − αₙ) − ℬₙ)P̂ₙ − 𝒜ₙ*P̂_{n+1}`, coefficient-wise.
pub fn check_ladders(seq: &MopSequence, source: &MatPoly) -> Result<Vec<CheckResult>> {
    let lc = all_coeffs(seq, source)?;
    let (mut low, mut raise) = (0.0f64, 0.0f64);
    for (n, l) in lc.iter().enumerate() {
        let p = seq.monic(n);
        let lhs = [p.derivative(), mul(p, source)];
        let a_star = l.a_poly.adjoint_reflect();
        let bp = mul(&l.b_poly, p);
        let mut terms = vec![lhs[0].clone(), lhs[1].clone(), bp.clone()];
        if n > 0 {
            terms.push(mul(&a_star.right_mul(seq.beta(n)), seq.monic(n - 1)).neg());
        }
        low = low.max(zero_sum_poly(&terms));
        if n < seq.n_max() {
            let zma = MatPoly::z_minus(seq.alpha(n));
            raise = raise.max(zero_sum_poly(&[
                lhs[0].clone(),
                lhs[1].clone(),
                mul(&mul(&a_star, &zma), p).neg(),
                bp,
                mul(&a_star, seq.monic(n + 1)),
            ]));
        }
    }
    let tol = rational_tol(source);
    Ok(vec![
        CheckResult::new("lowering", low, tol, seq.n_max() + 1),
        CheckResult::new("raising", raise, tol, seq.n_max()),
    ])
}

/// Point-wise residual of the second-order equation with rational `Mₙ`, `Nₙ`.
pub fn check_second_order(seq: &MopSequence, source: &MatPoly, samples: &SampleSet) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in 0..seq.n_max() {
        let ode = OdeCoeffs::with_source(seq, n, source)?;
        let a_star = ode.ladder().a_poly.adjoint_reflect();
        let points = samples.usable(|z| a_star.eval(z).smallest_singular_value() > SINGULAR_GUARD);
        for z in points {
            worst = worst.max(zero_sum(&ode.residual_terms(seq.monic(n), z)?));
            count += 1;
        }
    }
    if count == 0 && seq.n_max() > 0 {
        return Ok(CheckResult::skip("second-order", "A_n* singular at every sample"));
    }
    Ok(CheckResult::new("second-order", worst, rational_tol(source), count))
}

/// `Eₙ′ + EₙFₙ = F_{n+1}Eₙ` at the sample points.
pub fn check_lax(seq: &MopSequence, source: &MatPoly, samples: &SampleSet) -> Result<CheckResult> {
    let lc = all_coeffs(seq, source)?;
    let dim = seq.dim();
    let zero = CMatrix::zeros(dim);
    let de = CMatrix::block2(&CMatrix::identity(dim), &zero, &zero, &zero);
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in 1..seq.n_max() {
        for &z in &samples.points {
            let e = e_matrix(seq, n, z);
            let f = assemble_f(seq, n, z, &lc[n], &lc[n - 1]);
            let f_next = assemble_f(seq, n + 1, z, &lc[n + 1], &lc[n]);
            worst = worst.max(zero_sum(&[de.clone(), &e * &f, -&(&f_next * &e)]));
            count += 1;
        }
    }
    Ok(CheckResult::new("lax", worst, rational_tol(source), count))
}

/// `det Yⁿ = 1` and `Yⁿ(Yⁿ)⁻¹ = I` at the sample points.
pub fn check_rh(seq: &MopSequence, samples: &SampleSet) -> Result<Vec<CheckResult>> {
    let id = CMatrix::identity(2 * seq.dim());
    let (mut det, mut inv) = (0.0f64, 0.0f64);
    let mut count = 0;
    for n in 0..=seq.n_max() {
        for &z in &samples.points {
            let f = RhFrame::new(seq, n, z)?;
            det = det.max((f.y.determinant() - c64(1.0, 0.0)).norm());
            inv = inv.max(zero_sum(&[&f.y * &f.y_inv, -&id]));
            count += 1;
        }
    }
    Ok(vec![
        CheckResult::new("rh-determinant", det, IDENTITY_TOL, count),
        CheckResult::new("rh-inverse", inv, IDENTITY_TOL, count),
    ])
}

/// `dYⁿ/dz = 𝔉ₙYⁿ` at `z = 1 + i` with the integral coefficients.
pub fn check_y_frame(seq: &MopSequence) -> Result<CheckResult> {
    let z = c64(1.0, 1.0);
    let mut worst = 0.0f64;
    let top = seq.n_max().min(3);
    for n in 1..=top {
        let frame = RhFrame::new(seq, n, z)?;
        let f = y_frame_f(seq, n, z)?;
        worst = worst.max(zero_sum(&[frame.dy.clone(), -&(&f * &frame.y)]));
    }
    Ok(CheckResult::new("y-frame", worst, 1e-6, top))
}

fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> CMatrix {
    CMatrix::from_fn(dim, |_, _| c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

/// [`f_matrix`] against [`f_matrix_via_expansion`] for seeded sources of degree
/// 0, 1, 2 and for `G` itself, at the three fixed sample points.
pub fn check_expansion(seq: &MopSequence, samples: &SampleSet) -> Result<CheckResult> {
    let dim = seq.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let m: Vec<CMatrix> = (0..3).map(|_| random_matrix(&mut rng, dim)).collect();
    let sources = [
        c(&m[0]),
        MatPoly::from_coeffs(m[..2].to_vec()),
        MatPoly::from_coeffs(m.clone()),
        seq.spec().g_poly().clone(),
    ];
    let mut worst = 0.0f64;
    let mut count = 0;
    for src in &sources {
        for n in 1..=seq.n_max() {
            for &z in &samples.points[..3] {
                let direct = f_matrix(seq, n, z, src)?;
                let expanded = f_matrix_via_expansion(seq, n, z, src)?;
                worst = worst.max(zero_sum(&[direct, -&expanded]));
                count += 1;
            }
        }
    }
    Ok(CheckResult::new("expansion", worst, 1e-9, count))
}
