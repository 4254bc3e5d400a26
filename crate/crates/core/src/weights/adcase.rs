use num_complex::Complex64;

use super::{MatrixExp, WeightSpec};
use crate::error::{MoprlError, Result};
use crate::matpoly::{c64, CMatrix, MatPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdCase {
    /// `A = L`
    Case1,
    /// `A = L(I + L)⁻¹`
    Case2,
}

/// Hermite-type weight `e^{−x²} e^{Ax} e^{A*x}` whose `A` satisfies a
/// nilpotent commutator condition against `χ = iJ`, so that
/// `H(x) = e^{Ax} χ e^{−Ax}` is a degree-one polynomial.
///
/// `L = Σ ν_k E_{k,k+1}` and `J = diag(N−1, …, 1, 0)`.
#[derive(Clone, Debug)]
pub struct AdConditionCase {
    pub case: AdCase,
    pub l: CMatrix,
    pub j: CMatrix,
    pub a: CMatrix,
}

impl AdConditionCase {
    /// `nu` holds the `N − 1` superdiagonal entries of `L`; all must be nonzero.
    pub fn new(case: AdCase, nu: &[Complex64]) -> Result<Self> {
        if nu.is_empty() {
            return Err(MoprlError::InvalidArgument("need N >= 2, i.e. at least one nu".into()));
        }
        if nu.iter().any(|v| *v == Complex64::new(0.0, 0.0) || !v.is_finite()) {
            return Err(MoprlError::InvalidArgument("nu entries must be finite and nonzero".into()));
        }
        let n = nu.len() + 1;
        let mut l = CMatrix::zeros(n);
        for (k, v) in nu.iter().enumerate() {
            l[(k, k + 1)] = *v;
        }
        let j = CMatrix::diag_real(&(0..n).map(|k| (n - 1 - k) as f64).collect::<Vec<_>>());
        let a = match case {
            AdCase::Case1 => l.clone(),
            AdCase::Case2 => {
                // L(I+L)⁻¹ = Σ_{j≥1} (−1)^{j−1} L^j, finite because L is nilpotent
                let mut acc = CMatrix::zeros(n);
                let mut power = l.clone();
                let mut sign = 1.0;
                for _ in 1..n {
                    acc += &power.scale_re(sign);
                    power = &power * &l;
                    sign = -sign;
                }
                acc
            }
        };
        Ok(Self { case, l, j, a })
    }

    /// Recognizes `A = L` or `A = L(I + L)⁻¹` for some `L` of the above shape.
    pub fn detect(a: &CMatrix) -> Option<Self> {
        let n = a.dim();
        if n < 2 {
            return None;
        }
        let superdiag = |m: &CMatrix| -> Option<Vec<Complex64>> {
            for i in 0..n {
                for j in 0..n {
                    if j != i + 1 && m[(i, j)] != Complex64::new(0.0, 0.0) {
                        return None;
                    }
                }
            }
            Some((0..n - 1).map(|k| m[(k, k + 1)]).collect())
        };
        if let Some(nu) = superdiag(a) {
            return Self::new(AdCase::Case1, &nu).ok();
        }
        // L = (I − A)⁻¹A = Σ_{j≥1} Aʲ when A is strictly upper triangular
        if (0..n).any(|i| (0..=i).any(|j| a[(i, j)] != Complex64::new(0.0, 0.0))) {
            return None;
        }
        let mut l = CMatrix::zeros(n);
        let mut power = a.clone();
        for _ in 1..n {
            l += &power;
            power = &power * a;
        }
        let nu = superdiag(&l.clean(1e-14))?;
        let case = Self::new(AdCase::Case2, &nu).ok()?;
        ((&case.a - a).max_abs() <= 1e-14 * a.max_abs().max(1.0)).then_some(case)
    }

    pub fn with_unit_nu(case: AdCase, dim: usize) -> Result<Self> {
        Self::new(case, &vec![c64(1.0, 0.0); dim.saturating_sub(1)])
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// `χ = iJ`.
    pub fn chi(&self) -> CMatrix {
        self.j.scale(c64(0.0, 1.0))
    }

    /// Right-hand side of the first commutator condition, `−A` or `−A + A²`.
    pub fn ad_target(&self) -> CMatrix {
        match self.case {
            AdCase::Case1 => -&self.a,
            AdCase::Case2 => &(&self.a * &self.a) - &self.a,
        }
    }

    /// `ad_A(J) = AJ − JA`. With `χ = iJ` this is `−i·ad_A(χ)`.
    pub fn ad_j(&self) -> CMatrix {
        CMatrix::commutator(&self.a, &self.j)
    }

    /// Max-entry residuals of `ad_A(J) = target` and `ad²_A(J) = 0`.
    pub fn ad_residuals(&self) -> (f64, f64) {
        let ad = self.ad_j();
        let r1 = (&ad - &self.ad_target()).max_abs();
        let r2 = CMatrix::commutator(&self.a, &ad).max_abs();
        (r1, r2)
    }

    /// `H(x) = i(J + ad_A(J) x)`, i.e. `i(J − Ax)` or `i(J − (A − A²)x)`.
    pub fn h_poly(&self) -> MatPoly {
        let i = c64(0.0, 1.0);
        MatPoly::from_coeffs(vec![self.j.scale(i), self.ad_target().scale(i)])
    }

    /// `e^{Ax} χ e^{−Ax}` from the matrix exponential, for cross-checking [`h_poly`](Self::h_poly).
    pub fn h_by_conjugation(&self, x: f64) -> CMatrix {
        let e = MatrixExp::new(self.a.clone());
        let s = c64(x, 0.0);
        &(&e.eval(s) * &self.chi()) * &e.eval(-s)
    }

    pub fn weight(&self) -> WeightSpec {
        WeightSpec::hermite_a(self.a.clone())
    }
}
