use num_complex::Complex64;

use super::matrix::CMatrix;

/// Entry-wise Neumaier-compensated accumulator for matrix sums.
#[derive(Clone, Debug)]
pub struct MatrixAccumulator {
    dim: usize,
    sum: Vec<Complex64>,
    comp: Vec<Complex64>,
}

fn two_sum(s: f64, x: f64, c: &mut f64) -> f64 {
    let t = s + x;
    if s.abs() >= x.abs() {
        *c += (s - t) + x;
    } else {
        *c += (x - t) + s;
    }
    t
}

impl MatrixAccumulator {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            sum: vec![Complex64::new(0.0, 0.0); dim * dim],
            comp: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn add(&mut self, m: &CMatrix) {
        self.add_scaled(m, 1.0);
    }

    /// Adds `w · m`.
    pub fn add_scaled(&mut self, m: &CMatrix, w: f64) {
        assert_eq!(m.dim(), self.dim, "accumulator dimension mismatch");
        for ((s, c), x) in self.sum.iter_mut().zip(self.comp.iter_mut()).zip(m.as_slice()) {
            s.re = two_sum(s.re, w * x.re, &mut c.re);
            s.im = two_sum(s.im, w * x.im, &mut c.im);
        }
    }

    pub fn merge(&mut self, other: &Self) {
        self.add(&other.value());
    }

    pub fn value(&self) -> CMatrix {
        let n = self.dim;
        CMatrix::from_fn(n, |i, j| self.sum[i * n + j] + self.comp[i * n + j])
    }
}
