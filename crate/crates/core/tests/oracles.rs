//! Values checked against independent closed forms and quadratures.

use std::num::NonZeroUsize;

use gauss_quad::GaussHermite;
use moprl::matpoly::{c64, CMatrix};
use moprl::moments::compute_moments;
use moprl::mop::MopSequence;
use moprl::weights::{shift, WeightSpec};

const SQRT_PI: f64 = 1.772_453_850_905_516;
const GAMMA_QUARTER: f64 = 3.625_609_908_221_908;
const GAMMA_THREE_QUARTERS: f64 = 1.225_416_702_465_177_6;

/// `∫x^k e^{−x²} dx`
fn gauss_moment(k: usize) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    // Γ(m + 1/2) = (m − 1/2)Γ(m − 1/2)
    (0..k / 2).fold(SQRT_PI, |acc, j| acc * (j as f64 + 0.5))
}

/// `∫x^k e^{−x⁴} dx = Γ((k + 1)/4) / 2` for even k
fn quartic_moment(k: usize) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    let s = (k + 1) as f64 / 4.0;
    let (mut x, mut g) = if k.is_multiple_of(4) { (0.25, GAMMA_QUARTER) } else { (0.75, GAMMA_THREE_QUARTERS) };
    while x + 0.5 < s {
        g *= x;
        x += 1.0;
    }
    g / 2.0
}

fn assert_close(got: &CMatrix, want: &CMatrix, tol: f64, what: &str) {
    let d = (got - want).max_abs();
    let scale = want.max_abs().max(1.0);
    assert!(d <= tol * scale, "{what}: off by {d:.3e}\n got {got}\nwant {want}");
}

#[test]
fn hermite_b_moments_match_gaussian_closed_forms() {
    // e^{Lx²} = I + Lx², so W = e^{−x²}[[1 + x⁴, x²], [x², 1]]
    let table = compute_moments(&WeightSpec::hermite_b(shift(2)), 10, 1e-12).unwrap();
    for k in 0..=10 {
        let g = gauss_moment;
        let want = CMatrix::from_real_rows(&[&[g(k) + g(k + 4), g(k + 2)], &[g(k + 2), g(k)]]);
        assert_close(table.get(k).unwrap(), &want, 1e-11, &format!("mu_{k}"));
    }
}

#[test]
fn freud_a_moments_match_quartic_closed_forms() {
    // W = e^{−x⁴}[[1 + x², x], [x, 1]]
    let table = compute_moments(&WeightSpec::freud_a(shift(2)), 8, 1e-12).unwrap();
    for k in 0..=8 {
        let q = quartic_moment;
        let want = CMatrix::from_real_rows(&[&[q(k) + q(k + 2), q(k + 1)], &[q(k + 1), q(k)]]);
        assert_close(table.get(k).unwrap(), &want, 1e-11, &format!("mu_{k}"));
    }
}

#[test]
fn scalar_hermite_polynomials_and_second_kind() {
    let seq = MopSequence::build(&WeightSpec::scalar_hermite(), 4, 1e-12).unwrap();
    let coeffs = |n: usize| -> Vec<f64> { seq.monic(n).coeffs().iter().map(|m| m[(0, 0)].re).collect() };
    let close = |a: &[f64], b: &[f64]| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-10);
    // monic Hermite polynomials H_n / 2ⁿ
    assert!(close(&coeffs(2), &[-0.5, 0.0, 1.0]));
    assert!(close(&coeffs(3), &[0.0, -1.5, 0.0, 1.0]));
    assert!(close(&coeffs(4), &[0.75, 0.0, -3.0, 0.0, 1.0]));
    // ∫(P̂(t) − P̂(x))/(t − x) e^{−t²} dt
    let q = |n: usize| -> Vec<f64> { seq.second_kind(n).coeffs().iter().map(|m| m[(0, 0)].re).collect() };
    assert!(close(&q(1), &[SQRT_PI]));
    assert!(close(&q(2), &[0.0, SQRT_PI]));
    assert!(close(&q(3), &[-SQRT_PI, 0.0, SQRT_PI]));
}

/// `∫F(x)e^{−x²}dx` entrywise, for polynomial `F`.
fn gauss_hermite(rule: &GaussHermite, dim: usize, f: impl Fn(f64) -> CMatrix) -> CMatrix {
    CMatrix::from_fn(dim, |i, j| {
        c64(rule.integrate(|x| f(x)[(i, j)].re), rule.integrate(|x| f(x)[(i, j)].im))
    })
}

#[test]
fn hermite_a_orthogonality_under_gauss_hermite() {
    let spec = WeightSpec::hermite_a(shift(3));
    let seq = MopSequence::build(&spec, 5, 1e-12).unwrap();
    let rule = GaussHermite::new(NonZeroUsize::new(30).unwrap());
    // W(x)e^{x²} = (I + Ax + A²x²/2)(I + Ax + A²x²/2)*
    let poly_weight = |x: f64| &spec.weight_eval(x) * &CMatrix::identity(3).scale_re((x * x).exp());
    for n in 0..=5 {
        for m in 0..=n {
            let gram = gauss_hermite(&rule, 3, |x| {
                &(&seq.monic(n).eval_re(x) * &poly_weight(x)) * &seq.monic(m).eval_re(x).adjoint()
            });
            let want = if m == n { seq.gamma_inv(n).clone() } else { CMatrix::zeros(3) };
            assert_close(&gram, &want, 1e-9, &format!("<P_{n}, P_{m}>"));
        }
    }
}

#[test]
fn hermite_a_gamma_zero_in_three_dimensions() {
    // e^{Lx} = [[1, x, x²/2], [0, 1, x], [0, 0, 1]]; odd entries of e^{Lx}e^{L*x} integrate to zero
    let seq = MopSequence::build(&WeightSpec::hermite_a(shift(3)), 1, 1e-12).unwrap();
    let g = gauss_moment;
    let mu0 = CMatrix::from_real_rows(&[
        &[g(0) + g(2) + g(4) / 4.0, 0.0, g(2) / 2.0],
        &[0.0, g(0) + g(2), 0.0],
        &[g(2) / 2.0, 0.0, g(0)],
    ]);
    assert_close(seq.gamma_inv(0), &mu0, 1e-10, "gamma_0^-1");
}
