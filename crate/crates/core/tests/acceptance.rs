//! End-to-end acceptance criteria, one PASS/FAIL line each.

use moprl::ladder::ladder_coeffs;
use moprl::matpoly::{CMatrix, MatPoly};
use moprl::mop::MopSequence;
use moprl::verify::{
    check_ad_case, check_expansion, check_freud_string, check_y_frame, verify, CheckResult, SampleSet, Suite,
};
use moprl::weights::{shift, AdCase, AdConditionCase, WeightSpec};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn mat_close(got: &CMatrix, want: &[[f64; 2]; 2], tol: f64) -> Option<f64> {
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((got[(i, j)] - want[i][j]).norm());
        }
    }
    (worst > tol).then_some(worst)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ensure_check(c: &CheckResult, tol: f64, label: &str) -> Result<(), String> {
    ensure(c.pass && !c.skipped && c.residual <= tol, || {
        format!("{label} {}: residual {:.2e} (limit {tol:.0e}, skipped {})", c.name, c.residual, c.skipped)
    })
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

fn scalar_sanity() -> Outcome {
    let seq = MopSequence::build(&WeightSpec::scalar_hermite(), 8, 1e-12).map_err(|e| e.to_string())?;
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let mut worst = 0.0f64;
    for n in 0..=8usize {
        let gi = seq.gamma_inv(n)[(0, 0)];
        let want = (ln_factorial(n) - n as f64 * 2f64.ln()).exp() * sqrt_pi;
        worst = worst.max((gi.re - want).abs() / want).max(gi.im.abs());
        if n < 8 {
            worst = worst.max(seq.alpha(n)[(0, 0)].norm());
        }
        if n >= 1 {
            worst = worst.max((seq.beta(n)[(0, 0)] - n as f64 / 2.0).norm());
        }
    }
    ensure(worst <= 1e-9, || format!("worst deviation {worst:.2e}"))?;
    Ok(format!("worst deviation {worst:.1e}"))
}

type M2 = [[f64; 2]; 2];

fn m2_mul(a: &M2, b: &M2) -> M2 {
    let mut r = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

fn m2_t(a: &M2) -> M2 {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

fn m2_inv(a: &M2) -> M2 {
    let d = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    [[a[1][1] / d, -a[0][1] / d], [-a[1][0] / d, a[0][0] / d]]
}

fn m2_lin(terms: &[(f64, M2)]) -> M2 {
    let mut r = [[0.0; 2]; 2];
    for (c, m) in terms {
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] += c * m[i][j];
            }
        }
    }
    r
}

/// Moments of `e^{−x²}[[1 + x², x], [x, 1]]` from `∫x^k e^{−x²} = Γ((k+1)/2)` for even k.
fn gaussian_moment(k: usize) -> M2 {
    let g = |k: usize| -> f64 {
        if k % 2 == 1 {
            return 0.0;
        }
        // Γ(m + 1/2) = √π (2m)! / (4^m m!)
        let m = k / 2;
        std::f64::consts::PI.sqrt() * (ln_factorial(2 * m) - ln_factorial(m) - m as f64 * 4f64.ln()).exp()
    };
    [[g(k) + g(k + 2), g(k + 1)], [g(k + 1), g(k)]]
}

fn hermite_a_ledger() -> Outcome {
    // independent oracle: degree-one orthogonalisation against the closed moments
    let (m0, m1, m2) = (gaussian_moment(0), gaussian_moment(1), gaussian_moment(2));
    let alpha0 = m2_mul(&m1, &m2_inv(&m0));
    let g1_inv = m2_lin(&[
        (1.0, m2),
        (-1.0, m2_mul(&alpha0, &m1)),
        (-1.0, m2_mul(&m1, &m2_t(&alpha0))),
        (1.0, m2_mul(&m2_mul(&alpha0, &m0), &m2_t(&alpha0))),
    ]);
    let gamma0 = m2_inv(&m0);
    let beta1 = m2_mul(&g1_inv, &gamma0);
    let a10 = m2_lin(&[(-1.0, alpha0)]);

    let s = std::f64::consts::PI.sqrt();
    let stated: [(&str, M2, M2); 4] = [
        ("a_(1,0)", a10, [[0.0, -0.5], [-1.0 / 3.0, 0.0]]),
        ("alpha_0", alpha0, [[0.0, 0.5], [1.0 / 3.0, 0.0]]),
        ("beta_1", beta1, [[2.0 / 3.0, 0.0], [0.0, 1.0 / 3.0]]),
        ("gamma_0", gamma0, [[2.0 / (3.0 * s), 0.0], [0.0, 1.0 / s]]),
    ];
    for (name, oracle, want) in &stated {
        for i in 0..2 {
            for j in 0..2 {
                ensure((oracle[i][j] - want[i][j]).abs() < 1e-12, || {
                    format!("oracle {name} disagrees with the stated value")
                })?;
            }
        }
    }

    let seq = MopSequence::build(&WeightSpec::hermite_a(shift(2)), 6, 1e-12).map_err(|e| e.to_string())?;
    let ledger = seq.ledger();
    let got = [&ledger.a[1][0], &ledger.alpha[0], &ledger.beta[0], &ledger.gamma[0]];
    for ((name, oracle, _), g) in stated.iter().zip(got) {
        if let Some(d) = mat_close(g, oracle, 1e-9) {
            return Err(format!("{name} off by {d:.2e}"));
        }
    }
    Ok("a_(1,0), alpha_0, beta_1, gamma_0 match the Gaussian-moment oracle".into())
}

fn hermite_a_closed_forms() -> Outcome {
    let a = shift(2);
    let spec = WeightSpec::hermite_a(a.clone());
    let seq = MopSequence::build(&spec, 6, 1e-12).map_err(|e| e.to_string())?;
    let id = CMatrix::identity(2);
    let want_a = MatPoly::constant(id.scale_re(2.0));
    let want_b = MatPoly::from_coeffs(vec![-&a, id]);
    let mut worst = 0.0f64;
    for n in 0..=6 {
        let l = ladder_coeffs(&seq, n, spec.g_poly()).map_err(|e| e.to_string())?;
        for k in 0..=l.a_poly.degree().max(l.b_poly.degree()).max(1) {
            worst = worst.max((&l.a_poly.coeff(k) - &want_a.coeff(k)).max_abs());
            worst = worst.max((&l.b_poly.coeff(k) - &want_b.coeff(k)).max_abs());
        }
    }
    ensure(worst <= 1e-10, || format!("worst coefficient deviation {worst:.2e}"))?;
    Ok(format!("A_n = 2I, B_n = xI - A for n <= 6, worst {worst:.1e}"))
}

const SUITE_CHECKS: &[&str] = &[
    "recurrence",
    "liouville-ostrogradski",
    "liouville-ostrogradski-constancy",
    "hermitian-property",
    "christoffel-darboux",
    "a-b-relations",
    "string-first",
    "string-second",
    "lowering",
    "raising",
    "lax",
    "rh-determinant",
    "rh-inverse",
];

fn identity_suite() -> Outcome {
    let mut worst = 0.0f64;
    let mut runs = 0;
    for family in ["hermite-a", "hermite-b", "freud-a", "freud-b"] {
        for dim in 1..=3 {
            let spec = WeightSpec::builtin(family, dim).map_err(|e| e.to_string())?;
            let seq = MopSequence::build(&spec, 6, 1e-12).map_err(|e| format!("{family} N={dim}: {e}"))?;
            let report = verify(&seq, &Suite::All, 0);
            for name in SUITE_CHECKS {
                let c = report.get(name).ok_or_else(|| format!("{name} missing"))?;
                ensure_check(c, 1e-8, &format!("{family} N={dim}"))?;
                worst = worst.max(c.residual);
            }
            ensure(report.all_pass(), || {
                let names: Vec<_> = report.failures().iter().map(|c| c.name.clone()).collect();
                format!("{family} N={dim}: other failures {names:?}")
            })?;
            runs += 1;
        }
    }
    Ok(format!("{runs} weights, {} identities each, worst {worst:.1e}", SUITE_CHECKS.len()))
}

fn ad_condition_cases() -> Outcome {
    let mut worst = [0.0f64; 2];
    for (slot, case) in [AdCase::Case1, AdCase::Case2].into_iter().enumerate() {
        for dim in [2, 3] {
            let ad = AdConditionCase::with_unit_nu(case, dim).map_err(|e| e.to_string())?;
            let (r1, r2) = ad.ad_residuals();
            ensure(r1 == 0.0 && r2 == 0.0, || format!("{case:?} N={dim}: ad-conditions {r1:e}, {r2:e}"))?;
            let seq = MopSequence::build(&ad.weight(), 5, 1e-12).map_err(|e| e.to_string())?;
            let limit = if case == AdCase::Case1 { 1e-8 } else { 1e-7 };
            for c in check_ad_case(&seq, &ad, &SampleSet::new(0)).map_err(|e| e.to_string())? {
                let tol = if c.name == "ad-conditions" { 1e-12 } else { limit };
                ensure_check(&c, tol, &format!("{case:?} N={dim}"))?;
                worst[slot] = worst[slot].max(c.residual);
            }
        }
    }
    Ok(format!("Case1 worst {:.1e}, Case2 worst {:.1e}, ad-conditions exact", worst[0], worst[1]))
}

fn freud_string() -> Outcome {
    // Γ(3/4) / Γ(1/4)
    const BETA1: f64 = 1.225_416_702_465_177_6 / 3.625_609_908_221_908;
    let seq = MopSequence::build(&WeightSpec::freud_b(CMatrix::zeros(1)), 5, 1e-12).map_err(|e| e.to_string())?;
    let beta = |n: usize| if n == 0 { 0.0 } else { seq.beta(n)[(0, 0)].re };
    let b1 = (beta(1) - BETA1).abs();
    ensure(b1 <= 1e-8, || format!("beta_1 off by {b1:.2e}"))?;
    let mut worst = 0.0f64;
    for n in 1..=3 {
        let rhs = 4.0 * beta(n) * (beta(n + 1) + beta(n) + beta(n - 1));
        worst = worst.max((n as f64 - rhs).abs());
    }
    ensure(worst <= 1e-6, || format!("scalar string residual {worst:.2e}"))?;

    let seq = MopSequence::build(&WeightSpec::freud_b(shift(2)), 4, 1e-12).map_err(|e| e.to_string())?;
    let c = check_freud_string(&seq).map_err(|e| e.to_string())?;
    ensure_check(&c, 1e-6, "matrix")?;
    Ok(format!("beta_1 off by {b1:.1e}, scalar {worst:.1e}, matrix {:.1e}", c.residual))
}

fn y_frame() -> Outcome {
    let seq = MopSequence::build(&WeightSpec::hermite_a(shift(2)), 2, 1e-12).map_err(|e| e.to_string())?;
    let c = check_y_frame(&seq).map_err(|e| e.to_string())?;
    ensure_check(&c, 1e-6, "HermiteA")?;
    Ok(format!("dY/dz = F Y at z = 1+i for n = 1, 2, residual {:.1e}", c.residual))
}

fn cross_construction() -> Outcome {
    let mut worst = 0.0f64;
    for spec in [WeightSpec::hermite_a(shift(2)), WeightSpec::freud_b(shift(2))] {
        let seq = MopSequence::build(&spec, 4, 1e-12).map_err(|e| e.to_string())?;
        let c = check_expansion(&seq, &SampleSet::new(0)).map_err(|e| e.to_string())?;
        ensure_check(&c, 1e-9, spec.family().name())?;
        worst = worst.max(c.residual);
    }
    Ok(format!("sources of degree 0, 1, 2 and G at 3 points, worst {worst:.1e}"))
}

fn robustness() -> Outcome {
    let mut worst = 0.0f64;
    for family in ["hermite-a", "hermite-b", "freud-a", "freud-b"] {
        let spec = WeightSpec::builtin(family, 2).map_err(|e| e.to_string())?;
        let coarse = MopSequence::build(&spec, 6, 1e-12).map_err(|e| e.to_string())?;
        let fine = MopSequence::build(&spec, 6, 1e-13).map_err(|e| e.to_string())?;
        let d = coarse.ledger().max_difference(&fine.ledger());
        ensure(d <= 1e-9, || format!("{family}: ledger moved by {d:.2e}"))?;
        worst = worst.max(d);

        let again = MopSequence::build(&spec, 6, 1e-12).map_err(|e| e.to_string())?;
        let json = |s: &MopSequence| s.ledger().to_json().map_err(|e| e.to_string());
        ensure(json(&coarse)? == json(&again)?, || format!("{family}: ledger JSON differs"))?;
        let report = |s: &MopSequence| verify(s, &Suite::All, 7).to_json().map_err(|e| e.to_string());
        ensure(report(&coarse)? == report(&again)?, || format!("{family}: report JSON differs"))?;
    }
    Ok(format!("tol 1e-12 vs 1e-13 moves the ledger by at most {worst:.1e}; JSON byte-identical"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("scalar Hermite recurrence coefficients", scalar_sanity),
        ("HermiteA ledger entries", hermite_a_ledger),
        ("HermiteA ladder closed forms", hermite_a_closed_forms),
        ("identity suite over the built-in families", identity_suite),
        ("ad-condition cases", ad_condition_cases),
        ("Freud string equations", freud_string),
        ("Riemann-Hilbert frame equation", y_frame),
        ("F_n via expansion equals direct F_n", cross_construction),
        ("quadrature robustness and determinism", robustness),
    ];
    let mut failed = 0;
    for (k, (label, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {label} ({detail}) [{secs:.1}s]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {label} ({detail}) [{secs:.1}s]", k + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
