use num_complex::Complex64;

use super::matrix::CMatrix;
use crate::error::{MoprlError, Result};

/// Polynomial in a scalar complex variable with `N × N` matrix coefficients,
/// stored in ascending powers.
///
/// Trailing coefficients that are exactly zero are trimmed; the degree is
/// therefore structural. The zero polynomial has a single zero coefficient
/// and degree 0.
#[derive(Clone, Debug, PartialEq)]
pub struct MatPoly {
    dim: usize,
    coeffs: Vec<CMatrix>,
}

impl MatPoly {
    pub fn new(dim: usize, coeffs: Vec<CMatrix>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| c.dim() != dim) {
            return Err(MoprlError::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        let mut p = Self { dim, coeffs };
        p.normalize();
        Ok(p)
    }

    /// Like [`MatPoly::new`] but takes the dimension from the first coefficient.
    pub fn from_coeffs(coeffs: Vec<CMatrix>) -> Self {
        let dim = coeffs.first().expect("at least one coefficient").dim();
        Self::new(dim, coeffs).expect("coefficients share a dimension")
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            coeffs: vec![CMatrix::zeros(dim)],
        }
    }

    pub fn constant(m: CMatrix) -> Self {
        Self::from_coeffs(vec![m])
    }

    pub fn identity(dim: usize) -> Self {
        Self::constant(CMatrix::identity(dim))
    }

    /// `M z^k`.
    pub fn monomial(m: CMatrix, k: usize) -> Self {
        let dim = m.dim();
        let mut coeffs = vec![CMatrix::zeros(dim); k];
        coeffs.push(m);
        Self::from_coeffs(coeffs)
    }

    /// `zI − A`.
    pub fn z_minus(a: &CMatrix) -> Self {
        Self::from_coeffs(vec![-a, CMatrix::identity(a.dim())])
    }

    fn normalize(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(CMatrix::is_zero) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(CMatrix::zeros(self.dim));
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[CMatrix] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// Coefficient of `z^k`; zero beyond the degree.
    pub fn coeff(&self, k: usize) -> CMatrix {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| CMatrix::zeros(self.dim))
    }

    pub fn leading(&self) -> &CMatrix {
        self.coeffs.last().expect("never empty")
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> CMatrix {
        let mut acc = self.leading().clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = &acc.scale(z) + c;
        }
        acc
    }

    pub fn eval_re(&self, x: f64) -> CMatrix {
        self.eval(Complex64::new(x, 0.0))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(self.dim);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale_re(k as f64))
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Noncommutative product `p(z) q(z)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut coeffs = vec![CMatrix::zeros(self.dim); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Self::new(self.dim, coeffs)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Self::new(self.dim, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| &self.coeff(k) - &other.coeff(k)).collect();
        Self::new(self.dim, coeffs)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|m| m.scale(c)).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    /// `M · p(z)`.
    pub fn left_mul(&self, m: &CMatrix) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| m * c).collect())
    }

    /// `p(z) · M`.
    pub fn right_mul(&self, m: &CMatrix) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * m).collect())
    }

    /// `z^k p(z)`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![CMatrix::zeros(self.dim); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(coeffs)
    }

    /// `P*(z) := (P(z̄))*`, i.e. the coefficient-wise adjoint.
    pub fn adjoint_reflect(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(CMatrix::adjoint).collect())
    }

    /// Largest coefficient norm (Frobenius), used for coefficient-wise residuals.
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(CMatrix::frobenius_norm).fold(0.0, f64::max)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(MoprlError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nil() -> CMatrix {
        CMatrix::unit(2, 0, 1)
    }

    #[test]
    fn constant_evaluates_to_itself() {
        let p = MatPoly::identity(2);
        assert_eq!(p.eval(Complex64::new(3.0, 4.0)), CMatrix::identity(2));
        assert_eq!(p.degree(), 0);
    }

    #[test]
    fn z_minus_a_at_two() {
        let p = MatPoly::z_minus(&nil());
        let v = p.eval_re(2.0);
        assert_eq!(v, CMatrix::from_real_rows(&[&[2.0, -1.0], &[0.0, 2.0]]));
        assert_eq!(p.derivative(), MatPoly::identity(2));
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let d = MatPoly::constant(nil()).derivative();
        assert!(d.is_zero());
        assert_eq!(d.degree(), 0);
    }

    #[test]
    fn product_keeps_order() {
        let a = nil();
        let b = nil().transpose();
        let p = MatPoly::from_coeffs(vec![a.clone(), CMatrix::identity(2)]);
        let q = MatPoly::from_coeffs(vec![b.clone(), CMatrix::identity(2)]);
        let pq = p.mul(&q).unwrap();
        assert_eq!(pq.coeff(2), CMatrix::identity(2));
        assert_eq!(pq.coeff(1), &a + &b);
        assert_eq!(pq.coeff(0), &a * &b);
        let qp = q.mul(&p).unwrap();
        assert_ne!(qp.coeff(0), pq.coeff(0));
    }

    #[test]
    fn adjoint_reflect_of_imaginary_monomial() {
        let m = CMatrix::unit(2, 0, 1).scale(Complex64::new(0.0, 1.0));
        let p = MatPoly::monomial(m, 1);
        let r = p.adjoint_reflect();
        let expected = CMatrix::unit(2, 1, 0).scale(Complex64::new(0.0, -1.0));
        assert_eq!(r.coeff(1), expected);
    }

    #[test]
    fn trailing_zeros_trimmed_exactly() {
        let p = MatPoly::new(2, vec![CMatrix::identity(2), CMatrix::zeros(2), CMatrix::zeros(2)]).unwrap();
        assert_eq!(p.degree(), 0);
        let tiny = CMatrix::identity(2).scale_re(1e-300);
        let q = MatPoly::new(2, vec![CMatrix::identity(2), tiny]).unwrap();
        assert_eq!(q.degree(), 1);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let p = MatPoly::identity(2);
        let q = MatPoly::identity(3);
        assert!(matches!(p.mul(&q), Err(MoprlError::DimensionMismatch { .. })));
        assert!(MatPoly::new(2, vec![CMatrix::identity(3)]).is_err());
    }
}
