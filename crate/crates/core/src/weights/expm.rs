use num_complex::Complex64;

use crate::matpoly::CMatrix;

/// `s ↦ exp(s·X)` for a fixed matrix `X`.
///
/// Nilpotent `X` (detected by `X^N = 0` exactly) uses the finite series;
/// anything else goes through Taylor scaling-and-squaring.
#[derive(Clone, Debug)]
pub struct MatrixExp {
    base: CMatrix,
    nilpotent_powers: Option<Vec<CMatrix>>,
}

const TAYLOR_TOL: f64 = 1e-16;

impl MatrixExp {
    pub fn new(base: CMatrix) -> Self {
        let n = base.dim();
        let mut powers = vec![CMatrix::identity(n)];
        for _ in 1..=n {
            let next = powers.last().unwrap() * &base;
            powers.push(next);
        }
        let nilpotent_powers = if powers[n].is_zero() {
            powers.truncate(n);
            Some(powers)
        } else {
            None
        };
        Self {
            base,
            nilpotent_powers,
        }
    }

    pub fn base(&self) -> &CMatrix {
        &self.base
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotent_powers.is_some()
    }

    pub fn eval(&self, s: Complex64) -> CMatrix {
        match &self.nilpotent_powers {
            Some(powers) => {
                let mut acc = CMatrix::zeros(self.base.dim());
                let mut coef = Complex64::new(1.0, 0.0);
                for (k, p) in powers.iter().enumerate() {
                    if k > 0 {
                        coef = coef * s / k as f64;
                    }
                    acc += &p.scale(coef);
                }
                acc
            }
            None => expm_scaling_squaring(&self.base.scale(s)),
        }
    }
}

/// General matrix exponential: scale to norm ≤ 1/2, Taylor series, square back.
pub fn expm_scaling_squaring(x: &CMatrix) -> CMatrix {
    let n = x.dim();
    let norm = x.frobenius_norm();
    let mut squarings = 0u32;
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as u32;
    }
    let scaled = x.scale_re(0.5f64.powi(squarings as i32));
    let mut term = CMatrix::identity(n);
    let mut acc = CMatrix::identity(n);
    for k in 1..60 {
        term = (&term * &scaled).scale_re(1.0 / k as f64);
        acc += &term;
        if term.max_abs() <= TAYLOR_TOL * acc.max_abs() {
            break;
        }
    }
    for _ in 0..squarings {
        acc = &acc * &acc;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn nilpotent_series_is_exact() {
        let a = CMatrix::unit(2, 0, 1);
        let e = MatrixExp::new(a.clone());
        assert!(e.is_nilpotent());
        let z = c(0.7, -1.3);
        let expected = &CMatrix::identity(2) + &a.scale(z);
        assert_eq!(e.eval(z), expected);
    }

    #[test]
    fn diagonal_matches_scalar_exponentials() {
        let e = MatrixExp::new(CMatrix::diag_real(&[1.0, -2.0]));
        assert!(!e.is_nilpotent());
        let v = e.eval(c(1.5, 0.0));
        assert!((v[(0, 0)].re - 1.5f64.exp()).abs() < 1e-14 * 1.5f64.exp());
        assert!((v[(1, 1)].re - (-3.0f64).exp()).abs() < 1e-14);
        assert!(v[(0, 1)].norm() == 0.0);
    }

    #[test]
    fn rotation_generator() {
        let g = CMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        let t = 2.3;
        let r = expm_scaling_squaring(&g.scale_re(t));
        let expected = CMatrix::from_real_rows(&[&[t.cos(), -t.sin()], &[t.sin(), t.cos()]]);
        assert!((&r - &expected).max_abs() < 1e-14);
    }

    #[test]
    fn general_path_agrees_with_series_for_nilpotent_input() {
        let a = CMatrix::from_real_rows(&[&[0.0, 1.0, 2.0], &[0.0, 0.0, 3.0], &[0.0, 0.0, 0.0]]);
        let z = c(2.0, 0.5);
        let exact = MatrixExp::new(a.clone()).eval(z);
        let general = expm_scaling_squaring(&a.scale(z));
        assert!((&exact - &general).max_abs() < 1e-13 * exact.max_abs());
    }
}
