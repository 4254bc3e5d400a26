use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{MoprlError, Result};

/// Relative tolerance used by the Hermitian / unitary predicates.
pub const PREDICATE_TOL: f64 = 1e-12;

/// Dense square complex matrix, stored row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.data[i * dim + j] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from real rows. Panics if the rows are not square.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must form a square matrix");
        Self::from_fn(dim, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(MoprlError::InvalidArgument("empty matrix".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(MoprlError::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        let data: Vec<Complex64> = rows.into_iter().flatten().collect();
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(MoprlError::InvalidArgument("non-finite matrix entry".into()));
        }
        Ok(Self { dim, data })
    }

    pub fn diag_real(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// `E_{ij}` unit matrix (zero-based indices).
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m[(i, j)] = Complex64::new(1.0, 0.0);
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn re(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| Complex64::new(z.re, 0.0)).collect(),
        }
    }

    pub fn max_imag(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.im.abs()))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// `(A + A*)/2`.
    /// Zeroes entries whose modulus is at most `eps`.
    pub fn clean(&self, eps: f64) -> Self {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            if v.norm() <= eps {
                *v = Complex64::new(0.0, 0.0);
            }
        }
        out
    }

    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_re(0.5)
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_hermitian_tol(PREDICATE_TOL)
    }

    /// `‖A − A*‖_max ≤ tol · max|a_ij|`.
    pub fn is_hermitian_tol(&self, tol: f64) -> bool {
        (self - &self.adjoint()).max_abs() <= tol * self.max_abs()
    }

    pub fn is_unitary(&self) -> bool {
        let prod = &self.adjoint() * self;
        (&prod - &Self::identity(self.dim)).max_abs() <= PREDICATE_TOL * self.max_abs().max(1.0)
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_hermitian_eigenvalue(&self) -> f64 {
        let eig = self.hermitian_part().to_nalgebra().symmetric_eigen();
        eig.eigenvalues.iter().fold(f64::INFINITY, |m, &v| m.min(v))
    }

    pub fn is_positive_definite(&self) -> bool {
        self.is_hermitian() && self.min_hermitian_eigenvalue() > 0.0
    }

    pub fn commutator(a: &Self, b: &Self) -> Self {
        &(a * b) - &(b * a)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.dim);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.data)
    }

    pub fn from_nalgebra(m: &DMatrix<Complex64>) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "matrix must be square");
        Self::from_fn(m.nrows(), |i, j| m[(i, j)])
    }

    pub fn singular_values(&self) -> Vec<f64> {
        self.to_nalgebra()
            .svd(false, false)
            .singular_values
            .iter()
            .copied()
            .collect()
    }

    /// 2-norm condition number; `inf` for exactly singular matrices.
    pub fn condition_number(&self) -> f64 {
        condition_from_singular_values(&self.singular_values())
    }

    pub fn smallest_singular_value(&self) -> f64 {
        self.singular_values().into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn inverse(&self) -> Result<Self> {
        let cond = self.condition_number();
        if !cond.is_finite() || cond > 1e14 {
            return Err(MoprlError::IllConditioned { cond });
        }
        self.to_nalgebra()
            .lu()
            .try_inverse()
            .map(|m| Self::from_nalgebra(&m))
            .ok_or(MoprlError::IllConditioned { cond })
    }

    pub fn determinant(&self) -> Complex64 {
        self.to_nalgebra().determinant()
    }

    /// Principal square root of a Hermitian positive semidefinite matrix,
    /// itself Hermitian positive semidefinite.
    pub fn hermitian_sqrt(&self) -> Result<Self> {
        let eig = self.hermitian_part().to_nalgebra().symmetric_eigen();
        if eig.eigenvalues.iter().any(|&v| v < -PREDICATE_TOL * self.max_abs()) {
            return Err(MoprlError::InvalidArgument(
                "square root of a matrix that is not positive semidefinite".into(),
            ));
        }
        let roots = eig.eigenvalues.map(|v| Complex64::new(v.max(0.0).sqrt(), 0.0));
        let q = &eig.eigenvectors;
        let root = q * DMatrix::from_diagonal(&roots) * q.adjoint();
        Ok(Self::from_nalgebra(&root).hermitian_part())
    }

    /// Assembles `[[a, b], [c, d]]` into a `2N × 2N` matrix.
    pub fn block2(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let n = a.dim;
        for m in [b, c, d] {
            assert_eq!(m.dim, n, "block dimensions must agree");
        }
        Self::from_fn(2 * n, |i, j| {
            let blk = match (i < n, j < n) {
                (true, true) => a,
                (true, false) => b,
                (false, true) => c,
                (false, false) => d,
            };
            blk[(i % n, j % n)]
        })
    }

    /// Extracts the `(bi, bj)` block of size `bdim`.
    pub fn block(&self, bdim: usize, bi: usize, bj: usize) -> Self {
        Self::from_fn(bdim, |i, j| self[(bi * bdim + i, bj * bdim + j)])
    }

    pub(crate) fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(MoprlError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }
}

pub(crate) fn condition_from_singular_values(sv: &[f64]) -> f64 {
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{})", self.dim, self.dim)?;
        for row in self.data.chunks(self.dim) {
            let cells: Vec<String> = row
                .iter()
                .map(|z| format!("{:+.6e}{:+.6e}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `[a, b; c, d]`, with real entries printed without an imaginary part. The
/// formatter precision applies to each component (default 6).
impl fmt::Display for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = f.precision().unwrap_or(6);
        let real = self.data.iter().all(|z| z.im == 0.0);
        let cell = |z: &Complex64| {
            if real {
                format!("{:.p$}", z.re)
            } else {
                format!("{:.p$}{:+.p$}i", z.re, z.im)
            }
        };
        let rows: Vec<String> = self
            .data
            .chunks(self.dim)
            .map(|row| row.iter().map(cell).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl<'a> Add<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in addition");
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in subtraction");
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: CMatrix) -> CMatrix {
        &self + &rhs
    }
}

impl Sub for CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: CMatrix) -> CMatrix {
        &self - &rhs
    }
}

impl Mul for CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: CMatrix) -> CMatrix {
        &self * &rhs
    }
}

impl AddAssign<&CMatrix> for CMatrix {
    fn add_assign(&mut self, rhs: &CMatrix) {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in addition");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl SubAssign<&CMatrix> for CMatrix {
    fn sub_assign(&mut self, rhs: &CMatrix) {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in subtraction");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale_re(-1.0)
    }
}

impl Neg for CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale_re(-1.0)
    }
}
