//! Property tests for the algebraic invariants.

use std::sync::OnceLock;

use moprl::ladder::ladder_coeffs;
use moprl::matpoly::{c64, CMatrix, MatPoly};
use moprl::mop::MopSequence;
use moprl::verify::{verify, Suite};
use moprl::weights::{shift, WeightSpec};
use num_complex::Complex64;
use proptest::prelude::*;

const DIM: usize = 2;

fn entry() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| c64(re, im))
}

fn matrix() -> impl Strategy<Value = CMatrix> {
    prop::collection::vec(entry(), DIM * DIM).prop_map(|v| CMatrix::from_fn(DIM, |i, j| v[i * DIM + j]))
}

fn poly(max_deg: usize) -> impl Strategy<Value = MatPoly> {
    prop::collection::vec(matrix(), 1..=max_deg + 1).prop_map(MatPoly::from_coeffs)
}

fn point() -> impl Strategy<Value = Complex64> {
    (-1.5f64..1.5, -1.5f64..1.5).prop_map(|(re, im)| c64(re, im))
}

fn poly_diff(a: &MatPoly, b: &MatPoly) -> f64 {
    a.sub(b).unwrap().max_coeff_norm() / a.max_coeff_norm().max(b.max_coeff_norm()).max(1.0)
}

fn hermite_a() -> &'static MopSequence {
    static SEQ: OnceLock<MopSequence> = OnceLock::new();
    SEQ.get_or_init(|| MopSequence::build(&WeightSpec::hermite_a(shift(DIM)), 4, 1e-12).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative(p in poly(3), q in poly(3), r in poly(3)) {
        let left = p.mul(&q).unwrap().mul(&r).unwrap();
        let right = p.mul(&q.mul(&r).unwrap()).unwrap();
        prop_assert!(poly_diff(&left, &right) < 1e-12);
    }

    #[test]
    fn evaluation_is_multiplicative(p in poly(3), q in poly(3), z in point()) {
        let prod = p.mul(&q).unwrap().eval(z);
        let direct = &p.eval(z) * &q.eval(z);
        prop_assert!((&prod - &direct).max_abs() <= 1e-11 * direct.max_abs().max(1.0));
    }

    #[test]
    fn derivative_obeys_product_rule(p in poly(3), q in poly(3)) {
        let lhs = p.mul(&q).unwrap().derivative();
        let rhs = p.derivative().mul(&q).unwrap().add(&p.mul(&q.derivative()).unwrap()).unwrap();
        prop_assert!(poly_diff(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn adjoint_reflect_reverses_products(p in poly(2), q in poly(2), z in point()) {
        let lhs = p.mul(&q).unwrap().adjoint_reflect();
        let rhs = q.adjoint_reflect().mul(&p.adjoint_reflect()).unwrap();
        prop_assert!(poly_diff(&lhs, &rhs) < 1e-12);
        // P*(z) = P(z̄)*
        let lhs = p.adjoint_reflect().eval(z);
        let rhs = p.eval(z.conj()).adjoint();
        prop_assert!((&lhs - &rhs).max_abs() < 1e-12 * rhs.max_abs().max(1.0));
    }

    #[test]
    fn inverse_and_square_root(m in matrix()) {
        prop_assume!(m.smallest_singular_value() > 1e-3);
        let inv = m.inverse().unwrap();
        prop_assert!((&(&m * &inv) - &CMatrix::identity(DIM)).max_abs() < 1e-9);
        let psd = &(&m * &m.adjoint()) + &CMatrix::identity(DIM);
        let root = psd.hermitian_sqrt().unwrap();
        prop_assert!(root.is_hermitian_tol(1e-12));
        prop_assert!((&(&root * &root) - &psd).max_abs() < 1e-10 * psd.max_abs());
    }

    #[test]
    /// Real-linear only: `𝒜ₙ` pairs each `Δ` with its adjoint.
    fn ladder_coefficients_are_linear_in_the_source(s1 in poly(2), s2 in poly(2), r in -2.0f64..2.0) {
        let seq = hermite_a();
        let c = c64(r, 0.0);
        let combo = s1.add(&s2.scale(c)).unwrap();
        for n in 0..=seq.n_max() {
            let l1 = ladder_coeffs(seq, n, &s1).unwrap();
            let l2 = ladder_coeffs(seq, n, &s2).unwrap();
            let lc = ladder_coeffs(seq, n, &combo).unwrap();
            let want_a = l1.a_poly.add(&l2.a_poly.scale(c)).unwrap();
            let want_b = l1.b_poly.add(&l2.b_poly.scale(c)).unwrap();
            prop_assert!(poly_diff(&lc.a_poly, &want_a) < 1e-9);
            prop_assert!(poly_diff(&lc.b_poly, &want_b) < 1e-9);
        }
    }

    #[test]
    fn three_term_recurrence_holds_pointwise(z in point()) {
        let seq = hermite_a();
        for n in 1..seq.n_max() {
            let lhs = seq.monic(n).eval(z).scale(z);
            let rhs = &(&seq.monic(n + 1).eval(z) + &(seq.alpha(n) * &seq.monic(n).eval(z)))
                + &(seq.beta(n) * &seq.monic(n - 1).eval(z));
            prop_assert!((&lhs - &rhs).max_abs() < 1e-9 * lhs.max_abs().max(1.0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn weights_are_hermitian_positive_definite(nu in 0.2f64..1.5, x in -3.0f64..3.0, family in 0usize..4) {
        let a = shift(DIM).scale_re(nu);
        let spec = match family {
            0 => WeightSpec::hermite_a(a),
            1 => WeightSpec::hermite_b(a.scale_re(0.4)),
            2 => WeightSpec::freud_a(a),
            _ => WeightSpec::freud_b(a),
        };
        let w = spec.weight_eval(x);
        prop_assert!(w.is_hermitian_tol(1e-14 * w.max_abs()));
        prop_assert!(w.is_positive_definite());
    }

    #[test]
    fn suite_passes_for_scaled_shifts(nu in 0.3f64..1.5, seed in any::<u64>()) {
        let spec = WeightSpec::hermite_a(shift(DIM).scale_re(nu));
        let seq = MopSequence::build(&spec, 3, 1e-12).unwrap();
        let report = verify(&seq, &Suite::All, seed);
        let failures: Vec<_> = report.failures().iter().map(|c| (c.name.clone(), c.residual)).collect();
        prop_assert!(report.all_pass(), "nu = {nu}: {failures:?}");
    }
}
