//! Monic and orthonormal matrix orthogonal polynomials built from a moment table.
//!
//! Every degree is solved independently from its own block-Hankel system, so
//! the three-term recurrence is a genuine cross-check rather than an input.

mod ledger;
mod rhp;

pub use ledger::Ledger;
pub use rhp::{cauchy_transform, CauchyIntegrand, CauchyValue, RhFrame};

use rayon::prelude::*;

use crate::error::{MoprlError, Result};
use crate::matpoly::{CMatrix, MatPoly};
use crate::moments::{block_hankel, compute_moments, MomentTable, Quadrature};
use crate::weights::WeightSpec;

/// The full ledger of a MOPRL sequence up to degree `n_max`.
#[derive(Clone, Debug)]
pub struct MopSequence {
    spec: WeightSpec,
    n_max: usize,
    tol: f64,
    moments: MomentTable,
    quad: Quadrature,
    monic: Vec<MatPoly>,
    gamma: Vec<CMatrix>,
    gamma_inv: Vec<CMatrix>,
    kappa: Vec<CMatrix>,
    alpha: Vec<CMatrix>,
    /// `beta[0]` is the zero matrix by convention.
    beta: Vec<CMatrix>,
    /// `b[n][k]` for `n + k ≤ max_order`, exactly zero for `k < n`.
    b: Vec<Vec<CMatrix>>,
    second_kind: Vec<MatPoly>,
    conditions: Vec<f64>,
}

/// Moment order needed for degree-`n_max` ladder work with `deg G = m` and for
/// the full `b_{n,k}` table, `k ≤ 2 n_max − 1`.
pub fn required_moment_order(n_max: usize, m: usize) -> usize {
    (2 * n_max + m.max(2) + 2).max(3 * n_max)
}

impl MopSequence {
    pub fn build(spec: &WeightSpec, n_max: usize, tol: f64) -> Result<Self> {
        let order = required_moment_order(n_max, spec.g_poly().degree());
        let moments = compute_moments(spec, order, tol)?;
        Self::from_moments(spec, moments, n_max)
    }

    /// Builds from a precomputed table, which must hold at least `μ_{2 n_max}`.
    pub fn from_moments(spec: &WeightSpec, moments: MomentTable, n_max: usize) -> Result<Self> {
        moments.require(2 * n_max)?;
        if moments.dim != spec.dim() {
            return Err(MoprlError::DimensionMismatch {
                expected: spec.dim(),
                found: moments.dim,
            });
        }
        let dim = spec.dim();
        let tol = moments.tol;
        let quad = match spec.envelope() {
            crate::weights::Envelope::Support { .. } => Quadrature::for_weight(spec, 0, tol)?,
            _ => Quadrature::new(vec![-moments.truncation_radius, moments.truncation_radius])?,
        };

        let solved: Vec<Result<(Vec<CMatrix>, f64)>> = (0..=n_max)
            .into_par_iter()
            .map(|n| solve_degree(&moments, n))
            .collect();
        let mut a = Vec::with_capacity(n_max + 1);
        let mut conditions = Vec::with_capacity(n_max + 1);
        for r in solved {
            let (row, cond) = r?;
            a.push(row);
            conditions.push(cond);
        }

        let monic: Vec<MatPoly> = a
            .into_iter()
            .map(|mut coeffs: Vec<CMatrix>| {
                coeffs.push(CMatrix::identity(dim));
                MatPoly::from_coeffs(coeffs)
            })
            .collect();

        let mut gamma_inv = Vec::with_capacity(n_max + 1);
        let mut gamma = Vec::with_capacity(n_max + 1);
        let mut kappa = Vec::with_capacity(n_max + 1);
        for p in &monic {
            let gi = contraction(&moments, p);
            let g = gi.inverse()?.hermitian_part();
            kappa.push(g.hermitian_sqrt()?);
            gamma.push(g);
            gamma_inv.push(gi);
        }

        let coeff = |n: usize, j: isize| -> CMatrix {
            if j < 0 {
                CMatrix::zeros(dim)
            } else {
                monic[n].coeff(j as usize)
            }
        };
        let alpha = (0..n_max)
            .map(|n| &coeff(n, n as isize - 1) - &coeff(n + 1, n as isize))
            .collect();
        let mut beta = vec![CMatrix::zeros(dim)];
        for n in 1..=n_max {
            beta.push(&gamma_inv[n] * &gamma[n - 1]);
        }

        let b = (0..=n_max)
            .map(|n| {
                (0..=moments.max_order.saturating_sub(n))
                    .map(|k| b_contraction(&moments, &monic[n], n, k))
                    .collect()
            })
            .collect();

        let mut seq = Self {
            spec: spec.clone(),
            n_max,
            tol,
            moments,
            quad,
            monic,
            gamma,
            gamma_inv,
            kappa,
            alpha,
            beta,
            b,
            second_kind: Vec::new(),
            conditions,
        };
        seq.second_kind = seq.second_kind_by_recurrence();
        Ok(seq)
    }

    pub fn spec(&self) -> &WeightSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn moments(&self) -> &MomentTable {
        &self.moments
    }

    pub fn quadrature(&self) -> &Quadrature {
        &self.quad
    }

    /// Condition estimate of the Hankel system solved for degree `n`.
    pub fn condition(&self, n: usize) -> f64 {
        self.conditions[n]
    }

    pub fn conditions(&self) -> &[f64] {
        &self.conditions
    }

    /// `a_{n,j}` with `a_{n,n} = I` and zero outside `0 ≤ j ≤ n`; zero for `n < 0`.
    pub fn a(&self, n: isize, j: isize) -> CMatrix {
        if n < 0 || j < 0 || j > n {
            return CMatrix::zeros(self.dim());
        }
        self.monic[n as usize].coeff(j as usize)
    }

    pub fn monic(&self, n: usize) -> &MatPoly {
        &self.monic[n]
    }

    /// `γₙ`; zero for `n < 0`.
    pub fn gamma(&self, n: isize) -> CMatrix {
        if n < 0 {
            return CMatrix::zeros(self.dim());
        }
        self.gamma[n as usize].clone()
    }

    pub fn gamma_inv(&self, n: usize) -> &CMatrix {
        &self.gamma_inv[n]
    }

    /// `κₙ`, the Hermitian positive square root of `γₙ`.
    pub fn kappa(&self, n: usize) -> &CMatrix {
        &self.kappa[n]
    }

    /// `αₙ` for `n < n_max`.
    pub fn alpha(&self, n: usize) -> &CMatrix {
        &self.alpha[n]
    }

    /// `βₙ = γₙ⁻¹γ_{n−1}`, with `β₀ = 0`.
    pub fn beta(&self, n: usize) -> &CMatrix {
        &self.beta[n]
    }

    /// `b_{n,k} = ∫ xᵏ P̂ₙ(x) W(x) dx` from the stored table; zero for `k < n` or `n < 0`.
    pub fn b(&self, n: isize, k: isize) -> Result<CMatrix> {
        if n < 0 || k < n {
            return Ok(CMatrix::zeros(self.dim()));
        }
        let row = self.b.get(n as usize).ok_or(MoprlError::InvalidArgument(format!(
            "degree {n} exceeds n_max = {}",
            self.n_max
        )))?;
        row.get(k as usize).cloned().ok_or(MoprlError::InsufficientMoments {
            needed: (n + k) as usize,
            available: self.moments.max_order,
        })
    }

    /// `b_{n,k}` recomputed as the contraction `Σⱼ a_{n,j} μ_{j+k}`.
    pub fn b_direct(&self, n: usize, k: usize) -> Result<CMatrix> {
        if k < n {
            return Ok(CMatrix::zeros(self.dim()));
        }
        self.moments.require(n + k)?;
        Ok(b_contraction(&self.moments, &self.monic[n], n, k))
    }

    /// `b_{n−k,n}` for `k = 0..=n` from the last block row of `Ω⁻¹`,
    /// where `Ω` is the unit lower-triangular matrix of monic coefficients.
    pub fn omega_inverse_b(&self, n: usize) -> Vec<CMatrix> {
        let dim = self.dim();
        // r Ω = e_n, solved right to left
        let mut r = vec![CMatrix::zeros(dim); n + 1];
        r[n] = CMatrix::identity(dim);
        for j in (0..n).rev() {
            let mut acc = CMatrix::zeros(dim);
            for (i, ri) in r.iter().enumerate().skip(j + 1) {
                acc += &(ri * &self.a(i as isize, j as isize));
            }
            r[j] = -&acc;
        }
        (0..=n)
            .map(|k| &self.gamma_inv[n - k] * &r[n - k].adjoint())
            .collect()
    }

    /// `Q̂ₙ` for `n ≤ n_max`.
    pub fn second_kind(&self, n: usize) -> &MatPoly {
        &self.second_kind[n]
    }

    fn second_kind_by_recurrence(&self) -> Vec<MatPoly> {
        let dim = self.dim();
        let mut q = vec![MatPoly::zero(dim)];
        if self.n_max >= 1 {
            q.push(MatPoly::constant(self.moments.moments[0].clone()));
        }
        for n in 1..self.n_max {
            let next = q[n]
                .shift(1)
                .sub(&q[n].left_mul(&self.alpha[n]))
                .and_then(|p| p.sub(&q[n - 1].left_mul(&self.beta[n])))
                .expect("dimensions agree");
            q.push(next);
        }
        q
    }

    /// `Q̂ₙ(x) = Σⱼ a_{n,j} Σ_{i<j} μᵢ x^{j−1−i}`, the closed form of the difference quotient.
    pub fn second_kind_direct(&self, n: usize) -> MatPoly {
        let dim = self.dim();
        if n == 0 {
            return MatPoly::zero(dim);
        }
        let coeffs = (0..n)
            .map(|p| {
                let mut acc = CMatrix::zeros(dim);
                for j in (p + 1)..=n {
                    acc += &(&self.a(n as isize, j as isize) * &self.moments.moments[j - 1 - p]);
                }
                acc
            })
            .collect();
        MatPoly::new(dim, coeffs).expect("dimensions agree")
    }

    /// `Pₙ = κₙ P̂ₙ`.
    pub fn orthonormal(&self, n: usize) -> MatPoly {
        self.monic[n].left_mul(&self.kappa[n])
    }

    /// `Qₙ = κₙ Q̂ₙ`.
    pub fn orthonormal_second_kind(&self, n: usize) -> MatPoly {
        self.second_kind[n].left_mul(&self.kappa[n])
    }

    /// `Aₙ = κ_{n−1} κₙ⁻¹`, `1 ≤ n ≤ n_max`.
    pub fn a_matrix(&self, n: usize) -> Result<CMatrix> {
        if n == 0 || n > self.n_max {
            return Err(MoprlError::InvalidArgument(format!("A_n needs 1 <= n <= {}", self.n_max)));
        }
        Ok(&self.kappa[n - 1] * &self.kappa[n].inverse()?)
    }

    /// `Kₙ(x, y) = Σ_{j<n} Pⱼ*(y) Pⱼ(x)`.
    pub fn cd_kernel_sum(&self, n: usize, x: f64, y: f64) -> CMatrix {
        let mut acc = CMatrix::zeros(self.dim());
        for j in 0..n {
            let p = self.orthonormal(j);
            acc += &(&p.eval_re(y).adjoint() * &p.eval_re(x));
        }
        acc
    }

    /// Christoffel–Darboux closed form of [`cd_kernel_sum`](Self::cd_kernel_sum).
    pub fn cd_kernel_closed(&self, n: usize, x: f64, y: f64) -> Result<CMatrix> {
        if (x - y).abs() <= 1e-8 {
            return Err(MoprlError::InvalidArgument(format!(
                "confluent points x = {x}, y = {y} in the Christoffel-Darboux quotient"
            )));
        }
        let an = self.a_matrix(n)?;
        let pn = self.orthonormal(n);
        let pm = self.orthonormal(n - 1);
        let num = &(&(&pm.eval_re(y).adjoint() * &an) * &pn.eval_re(x))
            - &(&(&pn.eval_re(y).adjoint() * &an.adjoint()) * &pm.eval_re(x));
        Ok(num.scale_re(1.0 / (x - y)))
    }

    pub fn ledger(&self) -> Ledger {
        Ledger::from_sequence(self)
    }
}

/// Solves `[a_{n,0} … a_{n,n−1}] H_{n−1} = −[μₙ … μ_{2n−1}]`.
fn solve_degree(moments: &MomentTable, n: usize) -> Result<(Vec<CMatrix>, f64)> {
    if n == 0 {
        return Ok((Vec::new(), 1.0));
    }
    let h = block_hankel(moments, n - 1)?;
    let rhs: Vec<CMatrix> = (0..n).map(|k| -&moments.moments[n + k]).collect();
    let sol = h.solve_row(&rhs)?;
    Ok((sol.blocks, sol.condition))
}

/// `Σ_{j,k} a_{n,j} μ_{j+k} a_{n,k}*`, Hermitized.
fn contraction(moments: &MomentTable, p: &MatPoly) -> CMatrix {
    let coeffs = p.coeffs();
    let mut acc = CMatrix::zeros(p.dim());
    for (j, aj) in coeffs.iter().enumerate() {
        let mut row = CMatrix::zeros(p.dim());
        for (k, ak) in coeffs.iter().enumerate() {
            row += &(&moments.moments[j + k] * &ak.adjoint());
        }
        acc += &(aj * &row);
    }
    acc.hermitian_part()
}

fn b_contraction(moments: &MomentTable, p: &MatPoly, n: usize, k: usize) -> CMatrix {
    if k < n {
        return CMatrix::zeros(p.dim());
    }
    let mut acc = CMatrix::zeros(p.dim());
    for (j, aj) in p.coeffs().iter().enumerate() {
        acc += &(aj * &moments.moments[j + k]);
    }
    acc
}
