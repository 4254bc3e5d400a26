//! Monic matrix orthogonal polynomials and their recurrence coefficients
//! `xP̂ₙ = P̂_{n+1} + αₙP̂ₙ + βₙP̂_{n−1}`, with the JSON ledger export.

use moprl::mop::MopSequence;
use moprl::weights::{shift, WeightSpec};

fn main() -> moprl::Result<()> {
    let spec = WeightSpec::hermite_a(shift(2));
    let seq = MopSequence::build(&spec, 5, 1e-12)?;

    println!("gamma_0 * sqrt(pi) = {:.9}", seq.gamma(0).scale_re(std::f64::consts::PI.sqrt()));
    println!("a_(1,0) = {:.9}", seq.a(1, 0));
    for n in 0..seq.n_max() {
        println!("alpha_{n} = {:.6}", seq.alpha(n));
    }
    for n in 1..=seq.n_max() {
        println!("beta_{n}  = {:.6}", seq.beta(n));
    }

    let p3 = seq.monic(3);
    println!("P_3 has degree {} and leading coefficient {}", p3.degree(), p3.leading());
    println!("P_3(0.5) = {:.6}", p3.eval_re(0.5));
    println!("Hankel condition numbers: {:?}", seq.conditions().iter().map(|c| format!("{c:.2e}")).collect::<Vec<_>>());

    let json = seq.ledger().to_json()?;
    println!("ledger JSON: {} bytes", json.len());
    Ok(())
}
