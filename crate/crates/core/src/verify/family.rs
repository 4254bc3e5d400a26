use super::poly::{c, comm, mul};
use super::{zero_sum, zero_sum_poly, CheckResult, SampleSet, FREUD_TOL, IDENTITY_TOL};
use crate::error::Result;
use crate::ladder::{ladder_coeffs, OdeCoeffs};
use crate::matpoly::{CMatrix, MatPoly};
use crate::mop::MopSequence;
use crate::weights::Family;

/// `αₙ` with `α_{−1} := 0`.
pub(super) fn alpha(seq: &MopSequence, n: isize) -> CMatrix {
    if n < 0 {
        CMatrix::zeros(seq.dim())
    } else {
        seq.alpha(n as usize).clone()
    }
}

/// `βₙ` with `β_{n≤0} := 0`.
pub(super) fn beta(seq: &MopSequence, n: isize) -> CMatrix {
    if n <= 0 {
        CMatrix::zeros(seq.dim())
    } else {
        seq.beta(n as usize).clone()
    }
}

pub(super) fn id(seq: &MopSequence) -> CMatrix {
    CMatrix::identity(seq.dim())
}

/// `γₙ⁻¹ M* γₙ`.
pub(super) fn conj_adj(seq: &MopSequence, n: usize, m: &CMatrix) -> CMatrix {
    &(seq.gamma_inv(n) * &m.adjoint()) * &seq.gamma(n as isize)
}

/// `γₙ M γₙ⁻¹`.
pub(super) fn conj(seq: &MopSequence, n: usize, m: &CMatrix) -> CMatrix {
    &(&seq.gamma(n as isize) * m) * seq.gamma_inv(n)
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// Closed-form ladder coefficients (and classical recurrence data for the
/// scalar Hermite weight).
pub fn check_closed_forms(seq: &MopSequence) -> Result<CheckResult> {
    const NAME: &str = "closed-forms";
    let g = seq.spec().g_poly();
    let dim = seq.dim();
    let n_max = seq.n_max();
    let mut worst = 0.0f64;
    let mut count = 0;
    let mut record = |r: f64| {
        worst = worst.max(r);
        count += 1;
    };
    let tol = match seq.spec().family() {
        Family::ScalarHermite => {
            for n in 0..=n_max {
                if n < n_max {
                    record(seq.alpha(n).max_abs());
                }
                record((seq.beta(n)[(0, 0)].re - n as f64 / 2.0).abs().max(seq.beta(n).max_imag()));
                let expected = (ln_factorial(n) + 0.5 * std::f64::consts::PI.ln() - n as f64 * 2f64.ln()).exp();
                record((seq.gamma_inv(n)[(0, 0)] - expected).norm() / expected);
                let l = ladder_coeffs(seq, n, g)?;
                record(zero_sum_poly(&[l.a_poly, c(&id(seq).scale_re(-2.0))]));
                record(zero_sum_poly(&[l.b_poly, g.clone()]));
            }
            1e-9
        }
        Family::HermiteA { .. } => {
            for n in 0..=n_max {
                let l = ladder_coeffs(seq, n, g)?;
                record(zero_sum_poly(&[l.a_poly, c(&id(seq).scale_re(-2.0))]));
                record(zero_sum_poly(&[l.b_poly, g.clone()]));
            }
            1e-10
        }
        Family::HermiteB { b } => {
            for n in 0..=n_max {
                let l = ladder_coeffs(seq, n, g)?;
                let expected = (&(&id(seq) - &b.adjoint()) - &conj(seq, n, b)).scale_re(2.0);
                record(zero_sum_poly(&[l.a_poly, c(&expected).neg()]));
                let bx = MatPoly::monomial(&id(seq) - &b.scale_re(2.0), 1);
                record(zero_sum_poly(&[l.b_poly, bx.neg()]));
            }
            IDENTITY_TOL
        }
        Family::FreudA { a } => {
            for n in 0..n_max {
                let ni = n as isize;
                let l = ladder_coeffs(seq, n, g)?;
                let an = alpha(seq, ni);
                let konst = &(&beta(seq, ni + 1) + &beta(seq, ni)) + &(&an * &an);
                let inner = MatPoly::from_coeffs(vec![konst, an.clone(), id(seq)]);
                record(zero_sum_poly(&[l.a_poly, inner.adjoint_reflect().scale(crate::matpoly::c64(-4.0, 0.0))]));
                let bn = beta(seq, ni);
                let konst = &(&(&bn * &alpha(seq, ni - 1)) + &(&an * &bn)).scale_re(4.0) - a;
                let expected = MatPoly::from_coeffs(vec![konst, bn.scale_re(4.0), CMatrix::zeros(dim), id(seq).scale_re(2.0)]);
                record(zero_sum_poly(&[l.b_poly, expected.neg()]));
            }
            FREUD_TOL
        }
        Family::FreudB { b } => {
            for n in 0..n_max {
                let ni = n as isize;
                let l = ladder_coeffs(seq, n, g)?;
                let konst = &(&beta(seq, ni).adjoint() + &beta(seq, ni + 1).adjoint()).scale_re(4.0)
                    - &(&b.adjoint() + &conj(seq, n, b)).scale_re(2.0);
                let expected = MatPoly::from_coeffs(vec![konst, CMatrix::zeros(dim), id(seq).scale_re(4.0)]);
                record(zero_sum_poly(&[l.a_poly, expected.neg()]));
                let lin = (&beta(seq, ni).scale_re(2.0) - b).scale_re(2.0);
                let expected = MatPoly::from_coeffs(vec![CMatrix::zeros(dim), lin, CMatrix::zeros(dim), id(seq).scale_re(2.0)]);
                record(zero_sum_poly(&[l.b_poly, expected.neg()]));
            }
            FREUD_TOL
        }
        _ => return Ok(CheckResult::skip(NAME, "no closed forms for this family")),
    };
    Ok(CheckResult::new(NAME, worst, tol, count))
}

/// Family-specific consequences: compatibility conditions, `β`-relations,
/// reduced ladder operators and second-order equations.
pub fn check_reductions(seq: &MopSequence, samples: &SampleSet) -> Result<CheckResult> {
    const NAME: &str = "reductions";
    let dim = seq.dim();
    let n_max = seq.n_max();
    let i = id(seq);
    let mut worst = 0.0f64;
    let mut count = 0;
    let mut record = |r: f64| {
        worst = worst.max(r);
        count += 1;
    };
    let tol = match seq.spec().family() {
        Family::ScalarHermite => {
            // Hermite equation y″ − 2xy′ + 2ny = 0
            for n in 0..=n_max {
                let p = seq.monic(n);
                record(zero_sum_poly(&[
                    p.derivative().derivative(),
                    p.derivative().shift(1).scale(crate::matpoly::c64(-2.0, 0.0)),
                    p.scale(crate::matpoly::c64(2.0 * n as f64, 0.0)),
                ]));
            }
            IDENTITY_TOL
        }
        Family::HermiteA { a } => {
            let g = seq.spec().g_poly();
            for n in 0..=n_max {
                let ni = n as isize;
                let p = seq.monic(n);
                let bn = beta(seq, ni);
                let prev = if n > 0 { seq.monic(n - 1).clone() } else { MatPoly::zero(dim) };
                // lowering reduced to the commutator form
                record(zero_sum_poly(&[p.derivative(), comm(p, a), mul(&c(&bn.scale_re(-2.0)), &prev)]));
                if n >= 1 {
                    let an1 = seq.a(ni, ni - 1);
                    record(zero_sum(&[
                        bn.clone(),
                        i.scale_re(-(n as f64) / 2.0),
                        (&an1 * a).scale_re(-0.5),
                        (a * &an1).scale_re(0.5),
                    ]));
                }
                if n == n_max {
                    continue;
                }
                let an = seq.alpha(n);
                record(zero_sum(&[
                    beta(seq, ni + 1).scale_re(2.0),
                    bn.scale_re(-2.0),
                    -&i,
                    -&(a * an),
                    an * a,
                ]));
                record(zero_sum(&[an.clone(), a.scale_re(-0.5), conj_adj(seq, n, a).scale_re(-0.5)]));
                // P̂″ + 2P̂′(A − x) + P̂(A² − 2xA) = (−2xA + A² − 4βₙ)P̂ + 2(A − αₙ)(P̂′ + P̂A − AP̂)
                let a2 = a * a;
                let d1 = p.derivative();
                let amx = MatPoly::from_coeffs(vec![a.clone(), i.scale_re(-1.0)]);
                let rhs_coef = MatPoly::from_coeffs(vec![&a2 - &bn.scale_re(4.0), a.scale_re(-2.0)]);
                let low = c(&(a - an).scale_re(2.0));
                let low_arg = d1.add(&comm(p, a))?;
                record(zero_sum_poly(&[
                    d1.derivative(),
                    mul(&d1, &amx).scale(crate::matpoly::c64(2.0, 0.0)),
                    mul(p, &MatPoly::from_coeffs(vec![a2.clone(), a.scale_re(-2.0)])),
                    mul(&rhs_coef, p).neg(),
                    mul(&low, &low_arg).neg(),
                ]));
                // Mₙ = 2(αₙ − A), Nₙ = −2(αₙ − A)G − G² + I + 4βₙ
                let ode = OdeCoeffs::new(seq, n)?;
                let m_expected = (an - a).scale_re(2.0);
                for z in samples.points.iter().copied() {
                    let gz = g.eval(z);
                    record(zero_sum(&[ode.m_at(z)?, -&m_expected]));
                    let n_expected =
                        &(&(&(-&(&m_expected * &gz)) - &(&gz * &gz)) + &i) + &bn.scale_re(4.0);
                    record(zero_sum(&[ode.n_at(z)?, -&n_expected]));
                }
            }
            IDENTITY_TOL
        }
        Family::HermiteB { b } => {
            let cn = |n: usize| &(&i - b) - &conj_adj(seq, n, b);
            for n in 0..=n_max {
                let ni = n as isize;
                let p = seq.monic(n);
                let bn = beta(seq, ni);
                let prev = if n > 0 { seq.monic(n - 1).clone() } else { MatPoly::zero(dim) };
                let xcomm = comm(p, b).shift(1).scale(crate::matpoly::c64(2.0, 0.0));
                record(zero_sum_poly(&[
                    p.derivative(),
                    xcomm.clone(),
                    mul(&c(&(&cn(n) * &bn).scale_re(-2.0)), &prev),
                ]));
                if n >= 1 {
                    record(seq.a(ni, ni - 1).max_abs());
                    let an2 = seq.a(ni, ni - 2);
                    record(zero_sum(&[
                        (&cn(n) * &bn).scale_re(2.0),
                        i.scale_re(-(n as f64)),
                        (&an2 * b).scale_re(-2.0),
                        (b * &an2).scale_re(2.0),
                    ]));
                    // second-order equation with Lₙ = CₙBCₙ⁻¹, Kₙ = CₙβₙC_{n−1}
                    let c_n = cn(n);
                    let l_n = &(&c_n * b) * &c_n.inverse()?;
                    let k_n = &(&c_n * &bn) * &cn(n - 1);
                    let shift = &conj_adj(seq, n, b) - &l_n;
                    let d1 = p.derivative();
                    let coeff = MatPoly::from_coeffs(vec![
                        i.scale_re(2.0),
                        CMatrix::zeros(dim),
                        &shift.scale_re(4.0) - &i.scale_re(4.0),
                    ]);
                    let b2 = b * b;
                    record(zero_sum_poly(&[
                        d1.derivative(),
                        d1.right_mul(&(&b.scale_re(2.0) - &i)).shift(1).scale(crate::matpoly::c64(2.0, 0.0)),
                        d1.left_mul(&shift).shift(1).scale(crate::matpoly::c64(2.0, 0.0)),
                        comm(p, &b2).shift(2).scale(crate::matpoly::c64(4.0, 0.0)),
                        p.left_mul(&k_n.scale_re(4.0)),
                        mul(&coeff, &comm(p, b)),
                    ]));
                }
                if n == n_max {
                    continue;
                }
                record(seq.alpha(n).max_abs());
                let mut terms = vec![(&cn(n + 1) * &beta(seq, ni + 1)).scale_re(2.0), -&i];
                if n >= 1 {
                    terms.push((&bn * &cn(n - 1)).scale_re(-2.0));
                }
                record(zero_sum(&terms));
                record(zero_sum_poly(&[
                    p.derivative(),
                    xcomm,
                    mul(&c(&cn(n).scale_re(-2.0)), &p.shift(1).sub(seq.monic(n + 1))?),
                ]));
            }
            IDENTITY_TOL
        }
        Family::FreudA { a } => {
            for n in 0..n_max {
                let ni = n as isize;
                let p = seq.monic(n);
                let (an, am) = (alpha(seq, ni), alpha(seq, ni - 1));
                let (bn, bp, bm) = (beta(seq, ni), beta(seq, ni + 1), beta(seq, ni - 1));
                if n >= 1 {
                    let an1 = seq.a(ni, ni - 1);
                    record(zero_sum(&[
                        i.scale_re(n as f64),
                        &an1 * a,
                        -&(a * &an1),
                        (&bn * &bm).scale_re(-4.0),
                        (&(&bn * &am) * &am).scale_re(-4.0),
                        (&(&an * &bn) * &am).scale_re(-4.0),
                        (&bp * &bn).scale_re(-4.0),
                        (&bn * &bn).scale_re(-4.0),
                        (&(&an * &an) * &bn).scale_re(-4.0),
                    ]));
                }
                // lowering reduced form
                let prev = if n > 0 { seq.monic(n - 1).clone() } else { MatPoly::zero(dim) };
                let bcoef = MatPoly::from_coeffs(vec![(&(&bn * &am) + &(&an * &bn)).scale_re(4.0), bn.scale_re(4.0)]);
                let acoef = MatPoly::from_coeffs(vec![
                    (&(&bp + &bn) + &(&an * &an)).scale_re(-4.0),
                    an.scale_re(-4.0),
                    i.scale_re(-4.0),
                ]);
                record(zero_sum_poly(&[
                    p.derivative(),
                    comm(p, a),
                    mul(&bcoef, p),
                    mul(&acoef.right_mul(&bn), &prev),
                ]));
                if n + 2 > n_max {
                    continue;
                }
                let (ap1, bp2) = (alpha(seq, ni + 1), beta(seq, ni + 2));
                record(zero_sum(&[
                    i.clone(),
                    a * &an,
                    -&(&an * a),
                    (&(&(&bp * &an) + &(&ap1 * &bp)) * &an).scale_re(-4.0),
                    (&an * &(&(&bn * &am) + &(&an * &bn))).scale_re(4.0),
                    (&(&(&bp2 + &bp) + &(&ap1 * &ap1)) * &bp).scale_re(-4.0),
                    (&bn * &(&(&bn + &bm) + &(&am * &am))).scale_re(4.0),
                ]));
                let s = &bp + &bn;
                record(zero_sum(&[
                    (&(&s + &(&an * &an)) * &an).scale_re(4.0),
                    (&an * &s).scale_re(4.0),
                    (&ap1 * &bp).scale_re(4.0),
                    (&bn * &am).scale_re(4.0),
                    -a,
                    -&conj_adj(seq, n, a),
                ]));
            }
            FREUD_TOL
        }
        Family::FreudB { b } => {
            for n in 0..n_max {
                let ni = n as isize;
                let p = seq.monic(n);
                let (bn, bp, bm) = (beta(seq, ni), beta(seq, ni + 1), beta(seq, ni - 1));
                let sym = b + &conj_adj(seq, n, b);
                record(seq.alpha(n).max_abs());
                let prev = if n > 0 { seq.monic(n - 1).clone() } else { MatPoly::zero(dim) };
                let xcomm = comm(p, b).shift(1).scale(crate::matpoly::c64(2.0, 0.0));
                let acoef = MatPoly::from_coeffs(vec![
                    &(&bp + &bn).scale_re(4.0) - &sym.scale_re(2.0),
                    CMatrix::zeros(dim),
                    i.scale_re(4.0),
                ]);
                record(zero_sum_poly(&[
                    p.derivative(),
                    xcomm.clone(),
                    p.left_mul(&bn.scale_re(4.0)).shift(1),
                    mul(&acoef.right_mul(&bn), &prev).neg(),
                ]));
                let rcoef = MatPoly::from_coeffs(vec![
                    CMatrix::zeros(dim),
                    &(&bp.scale_re(4.0) - &b.scale_re(2.0)) - &conj_adj(seq, n, b).scale_re(2.0),
                    CMatrix::zeros(dim),
                    i.scale_re(4.0),
                ]);
                record(zero_sum_poly(&[
                    p.derivative(),
                    xcomm,
                    mul(&rcoef, p).neg(),
                    mul(&acoef, seq.monic(n + 1)),
                ]));
                if n + 2 > n_max {
                    continue;
                }
                let bp2 = beta(seq, ni + 2);
                let g_next = &(seq.gamma_inv(n + 1) * &b.adjoint()) * &seq.gamma(ni);
                let g_prev = &(seq.gamma_inv(n) * &b.adjoint()) * &seq.gamma(ni - 1);
                record(zero_sum(&[
                    i.clone(),
                    (&(&bp + &bp2) * &bp).scale_re(-4.0),
                    (&bn * &(&bn + &bm)).scale_re(4.0),
                    (b * &bp).scale_re(2.0),
                    (&bn * b).scale_re(-2.0),
                    g_next.scale_re(2.0),
                    g_prev.scale_re(-2.0),
                ]));
            }
            FREUD_TOL
        }
        _ => return Ok(CheckResult::skip(NAME, "no family-specific reductions for this family")),
    };
    Ok(CheckResult::new(NAME, worst, tol, count))
}

/// `nI + 2(a_{n,n−2}B − Ba_{n,n−2}) = 4(βₙβ_{n−1} + βₙ² + β_{n+1}βₙ) − 2(B + γₙ⁻¹B*γₙ)βₙ`
/// for the quartic `2Bx` family; with `N = 1`, `B = 0` this is `n = 4βₙ(β_{n+1} + βₙ + β_{n−1})`.
pub fn check_freud_string(seq: &MopSequence) -> Result<CheckResult> {
    const NAME: &str = "freud-string";
    let Family::FreudB { b } = seq.spec().family() else {
        return Ok(CheckResult::skip(NAME, "only defined for the quartic 2Bx family"));
    };
    let i = id(seq);
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in 1..seq.n_max() {
        let ni = n as isize;
        let (bn, bp, bm) = (beta(seq, ni), beta(seq, ni + 1), beta(seq, ni - 1));
        let an2 = seq.a(ni, ni - 2);
        worst = worst.max(zero_sum(&[
            i.scale_re(n as f64),
            (&an2 * b).scale_re(2.0),
            (b * &an2).scale_re(-2.0),
            (&bn * &bm).scale_re(-4.0),
            (&bn * &bn).scale_re(-4.0),
            (&bp * &bn).scale_re(-4.0),
            (&(b + &conj_adj(seq, n, b)) * &bn).scale_re(2.0),
        ]));
        count += 1;
    }
    Ok(CheckResult::new(NAME, worst, FREUD_TOL, count))
}
