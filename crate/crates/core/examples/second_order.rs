//! The second-order differential equation satisfied by `P̂ₙ`, with its
//! rational coefficients `Mₙ`, `Nₙ` evaluated point-wise.

use moprl::ladder::OdeCoeffs;
use moprl::matpoly::c64;
use moprl::mop::MopSequence;
use moprl::weights::{shift, WeightSpec};

fn main() -> moprl::Result<()> {
    for spec in [WeightSpec::hermite_a(shift(2)), WeightSpec::freud_a(shift(2))] {
        let seq = MopSequence::build(&spec, 5, 1e-12)?;
        println!("{}", spec.description());
        for n in 1..4 {
            let ode = OdeCoeffs::new(&seq, n)?;
            for z in [c64(0.3, 0.7), c64(2.1, -1.5)] {
                let r = ode.residual(seq.monic(n), z)?;
                println!(
                    "  n = {n}, z = {z}: M = {:.4}, residual {:.1e}",
                    ode.m_at(z)?,
                    r.max_abs()
                );
            }
        }
    }
    Ok(())
}
