//! A weight `e^{−x²}U(x)U*(x)` with a degree-two unimodular `U`, whose source
//! `G = U′U⁻¹ − x` is only of degree one because `A₂A₁ = 0`.

use moprl::ladder::ladder_coeffs;
use moprl::mop::MopSequence;
use moprl::verify::{verify, Suite};
use moprl::weights::{Family, WeightSpec};

fn main() -> moprl::Result<()> {
    let spec = WeightSpec::builtin("poly-u", 4)?;
    if let Family::PolyU { a1, a2 } = spec.family() {
        println!("A1 = {a1}\nA2 = {a2}\n[A1, A2] = {}", moprl::matpoly::CMatrix::commutator(a1, a2));
    }
    println!("deg G = {}", spec.g_poly().degree());

    let seq = MopSequence::build(&spec, 4, 1e-12)?;
    let l = ladder_coeffs(&seq, 2, spec.g_poly())?;
    println!("deg A_2 = {}, deg B_2 = {}", l.a_poly.degree(), l.b_poly.degree());

    let report = verify(&seq, &Suite::All, 0);
    let failed: Vec<_> = report.failures().iter().map(|c| c.name.clone()).collect();
    println!("{} checks, failures: {:?}", report.checks.len(), failed);
    Ok(())
}
