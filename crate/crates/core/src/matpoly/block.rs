use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::{condition_from_singular_values, CMatrix};
use crate::error::{MoprlError, Result};

/// Condition estimate above which [`BlockMatrix::solve`] refuses to solve.
pub const REFUSE_CONDITION: f64 = 1e13;
/// Condition estimate above which solutions are flagged as suspect.
pub const WARN_CONDITION: f64 = 1e10;
/// Constant in the documented residual bound
/// `‖M x − b‖ ≤ C · cond(M) · ε · ‖b‖`.
pub const RESIDUAL_CONSTANT: f64 = 64.0;

/// Square grid of `N × N` blocks.
#[derive(Clone, Debug)]
pub struct BlockMatrix {
    block_dim: usize,
    nblocks: usize,
    blocks: Vec<CMatrix>,
}

/// Solution of a block system plus its conditioning diagnostics.
#[derive(Clone, Debug)]
pub struct BlockSolution {
    pub blocks: Vec<CMatrix>,
    pub condition: f64,
}

impl BlockSolution {
    pub fn is_suspect(&self) -> bool {
        self.condition > WARN_CONDITION
    }
}

impl BlockMatrix {
    pub fn from_fn(block_dim: usize, nblocks: usize, mut f: impl FnMut(usize, usize) -> CMatrix) -> Self {
        let mut blocks = Vec::with_capacity(nblocks * nblocks);
        for i in 0..nblocks {
            for j in 0..nblocks {
                let b = f(i, j);
                assert_eq!(b.dim(), block_dim, "block ({i},{j}) has the wrong size");
                blocks.push(b);
            }
        }
        Self {
            block_dim,
            nblocks,
            blocks,
        }
    }

    pub fn identity(block_dim: usize, nblocks: usize) -> Self {
        Self::from_fn(block_dim, nblocks, |i, j| {
            if i == j {
                CMatrix::identity(block_dim)
            } else {
                CMatrix::zeros(block_dim)
            }
        })
    }

    pub fn block_dim(&self) -> usize {
        self.block_dim
    }

    pub fn nblocks(&self) -> usize {
        self.nblocks
    }

    pub fn block(&self, i: usize, j: usize) -> &CMatrix {
        &self.blocks[i * self.nblocks + j]
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.block_dim;
        let size = n * self.nblocks;
        DMatrix::from_fn(size, size, |r, c| self.block(r / n, c / n)[(r % n, c % n)])
    }

    pub fn condition_number(&self) -> f64 {
        let sv = self.to_dense().svd(false, false).singular_values;
        condition_from_singular_values(sv.as_slice())
    }

    fn check_rhs(&self, rhs: &[CMatrix]) -> Result<()> {
        if rhs.len() != self.nblocks {
            return Err(MoprlError::DimensionMismatch {
                expected: self.nblocks,
                found: rhs.len(),
            });
        }
        if let Some(bad) = rhs.iter().find(|b| b.dim() != self.block_dim) {
            return Err(MoprlError::DimensionMismatch {
                expected: self.block_dim,
                found: bad.dim(),
            });
        }
        Ok(())
    }

    fn factor(&self, dense: &DMatrix<Complex64>) -> Result<f64> {
        let cond = condition_from_singular_values(dense.clone().svd(false, false).singular_values.as_slice());
        if !cond.is_finite() || cond > REFUSE_CONDITION {
            return Err(MoprlError::IllConditioned { cond });
        }
        Ok(cond)
    }

    /// Solves `M X = R` for a block column `X`.
    pub fn solve(&self, rhs: &[CMatrix]) -> Result<BlockSolution> {
        self.check_rhs(rhs)?;
        let n = self.block_dim;
        let dense = self.to_dense();
        let cond = self.factor(&dense)?;
        let b = DMatrix::from_fn(n * self.nblocks, n, |r, c| rhs[r / n][(r % n, c)]);
        let x = dense
            .lu()
            .solve(&b)
            .ok_or(MoprlError::IllConditioned { cond })?;
        let blocks = (0..self.nblocks)
            .map(|k| CMatrix::from_fn(n, |i, j| x[(k * n + i, j)]))
            .collect();
        Ok(BlockSolution {
            blocks,
            condition: cond,
        })
    }

    /// Solves `X M = R` for a block row `X`.
    pub fn solve_row(&self, rhs: &[CMatrix]) -> Result<BlockSolution> {
        self.check_rhs(rhs)?;
        let n = self.block_dim;
        let dense_t = self.to_dense().transpose();
        let cond = self.factor(&dense_t)?;
        // (X M)^T = M^T X^T
        let b = DMatrix::from_fn(n * self.nblocks, n, |r, c| rhs[r / n][(c, r % n)]);
        let y = dense_t
            .lu()
            .solve(&b)
            .ok_or(MoprlError::IllConditioned { cond })?;
        let blocks = (0..self.nblocks)
            .map(|k| CMatrix::from_fn(n, |i, j| y[(k * n + j, i)]))
            .collect();
        Ok(BlockSolution {
            blocks,
            condition: cond,
        })
    }

    /// `M X` for a block column `X`.
    pub fn apply(&self, x: &[CMatrix]) -> Vec<CMatrix> {
        (0..self.nblocks)
            .map(|i| {
                let mut acc = CMatrix::zeros(self.block_dim);
                for (j, xj) in x.iter().enumerate() {
                    acc += &(self.block(i, j) * xj);
                }
                acc
            })
            .collect()
    }

    /// `X M` for a block row `X`.
    pub fn apply_row(&self, x: &[CMatrix]) -> Vec<CMatrix> {
        (0..self.nblocks)
            .map(|j| {
                let mut acc = CMatrix::zeros(self.block_dim);
                for (i, xi) in x.iter().enumerate() {
                    acc += &(xi * self.block(i, j));
                }
                acc
            })
            .collect()
    }
}

/// Frobenius norm of a block vector.
pub fn block_norm(blocks: &[CMatrix]) -> f64 {
    blocks
        .iter()
        .map(|b| b.frobenius_norm().powi(2))
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_returns_rhs() {
        let m = BlockMatrix::identity(2, 3);
        let rhs = vec![
            CMatrix::unit(2, 0, 1),
            CMatrix::identity(2),
            CMatrix::diag_real(&[2.0, 3.0]),
        ];
        let sol = m.solve(&rhs).unwrap();
        assert_eq!(sol.blocks, rhs);
        assert!((sol.condition - 1.0).abs() < 1e-14);
    }

    #[test]
    fn row_solve_matches_column_solve_on_transpose() {
        let m = BlockMatrix::from_fn(1, 2, |i, j| CMatrix::from_real_rows(&[&[[1.0, 2.0, 3.0, 5.0][i * 2 + j]]]));
        let rhs = vec![CMatrix::identity(1), CMatrix::diag_real(&[4.0])];
        let x = m.solve_row(&rhs).unwrap().blocks;
        let back = m.apply_row(&x);
        for (a, b) in back.iter().zip(&rhs) {
            assert!((a - b).max_abs() < 1e-14);
        }
    }

    #[test]
    fn singular_system_reports_condition() {
        let m = BlockMatrix::from_fn(1, 2, |_, _| CMatrix::identity(1));
        let err = m.solve(&[CMatrix::identity(1), CMatrix::identity(1)]).unwrap_err();
        assert!(matches!(err, MoprlError::IllConditioned { .. }));
    }

    #[test]
    fn wrong_rhs_length() {
        let m = BlockMatrix::identity(2, 2);
        assert!(m.solve(&[CMatrix::identity(2)]).is_err());
    }
}
