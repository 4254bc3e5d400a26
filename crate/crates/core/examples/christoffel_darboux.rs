//! The Christoffel–Darboux kernel as a sum over orthonormal polynomials and in
//! closed form.

use moprl::mop::MopSequence;
use moprl::weights::{shift, WeightSpec};

fn main() -> moprl::Result<()> {
    let seq = MopSequence::build(&WeightSpec::freud_a(shift(2)), 5, 1e-12)?;
    for (x, y) in [(0.3, -0.7), (1.1, 0.4), (-1.3, 0.9)] {
        for n in [1, 3, 5] {
            let sum = seq.cd_kernel_sum(n, x, y);
            let closed = seq.cd_kernel_closed(n, x, y)?;
            println!("K_{n}({x}, {y}) = {sum:.6}   |sum - closed| = {:.1e}", (&sum - &closed).max_abs());
        }
    }
    Ok(())
}
