//! The Riemann–Hilbert solution `Yⁿ(z)` assembled from polynomials and Cauchy
//! transforms: unit determinant, explicit inverse, and second-kind functions.

use moprl::matpoly::{c64, two_pi_i, CMatrix};
use moprl::mop::{cauchy_transform, CauchyIntegrand, MopSequence, RhFrame};
use moprl::weights::{shift, WeightSpec};

fn main() -> moprl::Result<()> {
    let seq = MopSequence::build(&WeightSpec::hermite_b(shift(2)), 4, 1e-12)?;
    let z = c64(0.3, 0.7);

    for n in 0..=seq.n_max() {
        let frame = RhFrame::new(&seq, n, z)?;
        let det = frame.y.determinant();
        let inv_err = (&(&frame.y * &frame.y_inv) - &CMatrix::identity(4)).max_abs();
        println!("n = {n}: det Y = {:.12}, |Y Y^-1 - I| = {inv_err:.1e}", det);
    }

    // 2πi 𝒞(PₙW) = Qₙ + 2πi Pₙ 𝒞(W)
    let n = 2;
    let tpi = two_pi_i();
    let cw = cauchy_transform(&seq, CauchyIntegrand::Weight, z)?.value;
    let cpw = cauchy_transform(&seq, CauchyIntegrand::MonicTimesWeight(n), z)?.value;
    let lhs = (seq.kappa(n) * &cpw).scale(tpi);
    let rhs = &seq.orthonormal_second_kind(n).eval(z) + &(&seq.orthonormal(n).eval(z) * &cw).scale(tpi);
    println!("second-kind identity at n = {n}: {:.1e}", (&lhs - &rhs).max_abs());
    Ok(())
}
