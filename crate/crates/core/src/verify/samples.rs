use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matpoly::c64;

const FIXED: [(f64, f64); 3] = [(0.3, 0.7), (-1.2, 0.4), (2.1, -1.5)];
const NUDGE: Complex64 = Complex64::new(0.137, 0.291);

/// Off-axis evaluation points: three fixed ones and two drawn from the seed.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    pub points: Vec<Complex64>,
}

impl SampleSet {
    pub fn new(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points: Vec<Complex64> = FIXED.iter().map(|&(re, im)| c64(re, im)).collect();
        for _ in 0..2 {
            let re = rng.random_range(-2.0..2.0);
            let im: f64 = rng.random_range(0.3..1.5);
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            points.push(c64(re, sign * im));
        }
        Self { points }
    }

    /// Each point, nudged up to eight times until `usable` accepts it; points
    /// that never become usable are dropped.
    pub fn usable(&self, usable: impl Fn(Complex64) -> bool) -> Vec<Complex64> {
        self.points
            .iter()
            .filter_map(|&z| (0..=8).map(|k| z + NUDGE * k as f64).find(|&w| usable(w)))
            .collect()
    }
}
