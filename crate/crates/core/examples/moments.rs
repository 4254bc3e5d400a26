//! Matrix moments by adaptive quadrature, checked against the closed forms
//! for `W(x) = e^{−x²}(I + Lx)(I + Lx)*` with `L` the 2×2 shift.

use moprl::moments::{block_hankel, compute_moments};
use moprl::matpoly::CMatrix;
use moprl::weights::{shift, WeightSpec};

/// `∫ x^k e^{−x²} dx`.
fn gauss(k: usize) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    let mut v = std::f64::consts::PI.sqrt();
    for j in (1..k).step_by(2) {
        v *= j as f64 / 2.0;
    }
    v
}

fn main() -> moprl::Result<()> {
    let spec = WeightSpec::hermite_a(shift(2));
    let table = compute_moments(&spec, 8, 1e-12)?;
    println!(
        "{} moments on [-{r:.1}, {r:.1}] with {} nodes",
        table.max_order + 1,
        table.node_count,
        r = table.truncation_radius
    );

    for k in 0..=table.max_order {
        // W = [[1 + x², x], [x, 1]] e^{−x²}
        let exact = CMatrix::from_real_rows(&[
            &[gauss(k) + gauss(k + 2), gauss(k + 1)],
            &[gauss(k + 1), gauss(k)],
        ]);
        let mu = table.get(k)?;
        println!("mu_{k} = {mu:.6}   error {:.1e}", (mu - &exact).max_abs());
    }

    for n in 0..4 {
        let h = block_hankel(&table, n)?;
        println!("block Hankel H_{n}: {}x{} blocks, condition {:.3e}", h.nblocks(), h.nblocks(), h.condition_number());
    }
    Ok(())
}
