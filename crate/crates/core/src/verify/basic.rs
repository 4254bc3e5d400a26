use num_complex::Complex64;

use super::{zero_sum, zero_sum_poly, CheckResult, IDENTITY_TOL};
use crate::error::Result;
use crate::matpoly::{c64, two_pi_i, CMatrix};
use crate::mop::{CauchyIntegrand, MopSequence};

const LOF_POINTS: [(f64, f64); 3] = [(0.3, 0.0), (1.7, 0.5), (-2.1, 0.0)];
const REAL_POINTS: [f64; 3] = [0.3, -2.1, 1.1];
const CD_PAIRS: [(f64, f64); 3] = [(0.3, -0.7), (1.1, 0.4), (-1.3, 0.9)];

fn lof_points() -> impl Iterator<Item = Complex64> {
    LOF_POINTS.iter().map(|&(re, im)| c64(re, im))
}

/// `xP̂ₙ = P̂_{n+1} + αₙP̂ₙ + βₙP̂_{n−1}`, coefficient-wise.
pub fn check_recurrence(seq: &MopSequence) -> CheckResult {
    let mut worst = 0.0f64;
    for n in 0..seq.n_max() {
        let p = seq.monic(n);
        let mut terms = vec![p.shift(1), seq.monic(n + 1).neg(), p.left_mul(seq.alpha(n)).neg()];
        if n > 0 {
            terms.push(seq.monic(n - 1).left_mul(seq.beta(n)).neg());
        }
        worst = worst.max(zero_sum_poly(&terms));
    }
    CheckResult::new("recurrence", worst, 1e-10, seq.n_max())
}

/// `Σⱼ a_{n,i} μ_{i+j} = 0` for `j < n`, relative to the size of the products.
pub fn check_orthogonality(seq: &MopSequence) -> CheckResult {
    let mu = &seq.moments().moments;
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in 1..=seq.n_max() {
        for j in 0..n {
            let terms: Vec<CMatrix> = (0..=n).map(|i| &seq.a(n as isize, i as isize) * &mu[i + j]).collect();
            worst = worst.max(zero_sum(&terms));
            count += 1;
        }
    }
    CheckResult::new("orthogonality", worst, (50.0 * seq.tol()).max(1e-10), count)
}

/// `Qₙ(z)P*_{n−1}(z) − Pₙ(z)Q*_{n−1}(z) = Aₙ⁻¹`, plus pairwise `z`-independence of the left side.
pub fn check_lof(seq: &MopSequence) -> Vec<CheckResult> {
    let mut worst = 0.0f64;
    let mut spread = 0.0f64;
    let mut count = 0;
    for n in 1..=seq.n_max() {
        let (p, q) = (seq.orthonormal(n), seq.orthonormal_second_kind(n));
        let (pm, qm) = (seq.orthonormal(n - 1).adjoint_reflect(), seq.orthonormal_second_kind(n - 1).adjoint_reflect());
        let a_inv = match seq.a_matrix(n).and_then(|a| a.inverse()) {
            Ok(m) => m,
            Err(e) => return vec![CheckResult::failed("liouville-ostrogradski", &e)],
        };
        let lhs: Vec<(CMatrix, CMatrix)> = lof_points()
            .map(|z| (&q.eval(z) * &pm.eval(z), &p.eval(z) * &qm.eval(z)))
            .collect();
        for (l1, l2) in &lhs {
            worst = worst.max(zero_sum(&[l1.clone(), -l2, -&a_inv]));
            count += 1;
        }
        for i in 0..lhs.len() {
            for k in i + 1..lhs.len() {
                let vi = &lhs[i].0 - &lhs[i].1;
                let vk = &lhs[k].0 - &lhs[k].1;
                spread = spread.max(zero_sum(&[vi, -&vk]));
            }
        }
    }
    vec![
        CheckResult::new("liouville-ostrogradski", worst, IDENTITY_TOL, count),
        CheckResult::new("liouville-ostrogradski-constancy", spread, 1e-9, count),
    ]
}

/// `Qₙ(z)Pₙ*(z) = Pₙ(z)Qₙ*(z)`, and Hermitian `P*_{n−1}AₙPₙ`, `Q*_{n−1}AₙQₙ` on ℝ.
pub fn check_hp(seq: &MopSequence) -> CheckResult {
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in 0..=seq.n_max() {
        let (p, q) = (seq.orthonormal(n), seq.orthonormal_second_kind(n));
        let (ps, qs) = (p.adjoint_reflect(), q.adjoint_reflect());
        for z in lof_points() {
            worst = worst.max(zero_sum(&[&q.eval(z) * &ps.eval(z), -&(&p.eval(z) * &qs.eval(z))]));
            count += 1;
        }
        if n == 0 {
            continue;
        }
        let Ok(a) = seq.a_matrix(n) else {
            return CheckResult::new("hermitian-property", f64::INFINITY, IDENTITY_TOL, count);
        };
        let (pm, qm) = (seq.orthonormal(n - 1), seq.orthonormal_second_kind(n - 1));
        for x in REAL_POINTS {
            for (lo, hi) in [(&pm, &p), (&qm, &q)] {
                let h = &(&lo.eval_re(x).adjoint() * &a) * &hi.eval_re(x);
                worst = worst.max(zero_sum(&[h.clone(), -&h.adjoint()]));
                count += 1;
            }
        }
    }
    CheckResult::new("hermitian-property", worst, IDENTITY_TOL, count)
}

/// `2πi𝒞(PₙW)(z) = Qₙ(z) + 2πiPₙ(z)𝒞(W)(z)` at `z = 1 + i`.
pub fn check_cauchy_second_kind(seq: &MopSequence) -> Result<CheckResult> {
    let z = c64(1.0, 1.0);
    let mut which = vec![CauchyIntegrand::Weight];
    which.extend((0..=seq.n_max()).map(CauchyIntegrand::MonicTimesWeight));
    let c = seq.cauchy_many(z, &which)?;
    let tpi = two_pi_i();
    let cw = &c[0].value;
    let mut worst = 0.0f64;
    for n in 0..=seq.n_max() {
        let lhs = (seq.kappa(n) * &c[n + 1].value).scale(tpi);
        let q = seq.orthonormal_second_kind(n).eval(z);
        let pc = (&seq.orthonormal(n).eval(z) * cw).scale(tpi);
        worst = worst.max(zero_sum(&[lhs, -&q, -&pc]));
    }
    Ok(CheckResult::new("second-kind-cauchy", worst, IDENTITY_TOL, seq.n_max() + 1))
}

/// Kernel sum against the closed Christoffel–Darboux form.
pub fn check_cd(seq: &MopSequence) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in 1..=seq.n_max() {
        for (x, y) in CD_PAIRS {
            let sum = seq.cd_kernel_sum(n, x, y);
            let closed = seq.cd_kernel_closed(n, x, y)?;
            worst = worst.max(zero_sum(&[sum, -&closed]));
            count += 1;
        }
    }
    Ok(CheckResult::new("christoffel-darboux", worst, IDENTITY_TOL, count))
}

/// Both `a`/`b` relations for `m = 1, 2`.
pub fn check_anbn(seq: &MopSequence) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in 1..=seq.n_max() as isize {
        for m in 1..=2isize {
            for prev in [n - 1, n] {
                let mut terms = Vec::new();
                for j in 0..=m {
                    terms.push(&seq.a(n, n - m + j) * &seq.b(prev, n + j - 1)?.adjoint());
                    terms.push(-&(&seq.b(n, n + m - j - 1)? * &seq.a(prev, n - j).adjoint()));
                }
                worst = worst.max(zero_sum(&terms));
                count += 1;
            }
        }
    }
    Ok(CheckResult::new("a-b-relations", worst, 1e-9, count))
}

/// `b_{n−k,n}` from the inverse triangle against the moment contraction.
pub fn check_omega_inverse(seq: &MopSequence) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in 0..=seq.n_max() {
        for (k, b) in seq.omega_inverse_b(n).into_iter().enumerate() {
            let direct = seq.b((n - k) as isize, n as isize)?;
            worst = worst.max(zero_sum(&[b, -&direct]));
            count += 1;
        }
    }
    Ok(CheckResult::new("omega-inverse", worst, IDENTITY_TOL, count))
}

/// Imaginary parts of `a_{n,j}` and `b_{n,k}` when the weight parameters are real.
pub fn check_realness(seq: &MopSequence) -> Result<CheckResult> {
    if !seq.spec().has_real_parameters() {
        return Ok(CheckResult::skip("realness", "weight has complex parameters"));
    }
    let mut worst = 0.0f64;
    let mut count = 0;
    let n_max = seq.n_max() as isize;
    for n in 0..=n_max {
        let mut mats: Vec<CMatrix> = (0..n).map(|j| seq.a(n, j)).collect();
        for k in n..=seq.moments().max_order as isize - n {
            mats.push(seq.b(n, k)?);
        }
        for m in mats {
            worst = worst.max(m.max_imag() / m.max_abs().max(1.0));
            count += 1;
        }
    }
    Ok(CheckResult::new("realness", worst, 1e-10, count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::WeightSpec;

    #[test]
    fn hermite_a_basic_checks_pass() {
        let q = MopSequence::build(&WeightSpec::hermite_a(CMatrix::unit(2, 0, 1)), 5, 1e-12).unwrap();
        let mut all = vec![check_recurrence(&q), check_orthogonality(&q), check_hp(&q)];
        all.extend(check_lof(&q));
        all.push(check_cauchy_second_kind(&q).unwrap());
        all.push(check_cd(&q).unwrap());
        all.push(check_anbn(&q).unwrap());
        all.push(check_omega_inverse(&q).unwrap());
        all.push(check_realness(&q).unwrap());
        for c in &all {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn corrupted_recurrence_fails() {
        let q = MopSequence::build(&WeightSpec::scalar_hermite(), 4, 1e-12).unwrap();
        // a sequence for a different weight has different α, β
        let other = MopSequence::build(&WeightSpec::freud_b(CMatrix::zeros(1)), 4, 1e-12).unwrap();
        let mut worst = 0.0f64;
        for n in 1..4 {
            let terms = vec![
                q.monic(n).shift(1),
                q.monic(n + 1).neg(),
                q.monic(n).left_mul(other.alpha(n)).neg(),
                q.monic(n - 1).left_mul(other.beta(n)).neg(),
            ];
            worst = worst.max(zero_sum_poly(&terms));
        }
        assert!(worst > 1e-3);
    }
}
