//! The quartic weight `e^{−x⁴}`: recurrence coefficients obey the string
//! equation `n = 4βₙ(β_{n+1} + βₙ + β_{n−1})`, and its matrix analogue for
//! `e^{−x⁴}e^{Bx²}e^{B*x²}`.

use moprl::matpoly::CMatrix;
use moprl::mop::MopSequence;
use moprl::verify::check_freud_string;
use moprl::weights::{shift, WeightSpec};

/// Lanczos approximation, enough digits for the comparison below.
fn gamma(x: f64) -> f64 {
    const G: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    let x = x - 1.0;
    let t = x + 7.5;
    let s: f64 = G[0] + (1..9).map(|i| G[i] / (x + i as f64)).sum::<f64>();
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * s
}

fn main() -> moprl::Result<()> {
    let seq = MopSequence::build(&WeightSpec::freud_b(CMatrix::zeros(1)), 6, 1e-12)?;
    let beta = |n: usize| if n == 0 { 0.0 } else { seq.beta(n)[(0, 0)].re };
    println!("beta_1 = {:.12}, Gamma(3/4)/Gamma(1/4) = {:.12}", beta(1), gamma(0.75) / gamma(0.25));
    for n in 1..seq.n_max() {
        let rhs = 4.0 * beta(n) * (beta(n + 1) + beta(n) + beta(n - 1));
        println!("n = {n}: 4 b_n (b_n+1 + b_n + b_n-1) = {rhs:.10}");
    }

    let seq = MopSequence::build(&WeightSpec::freud_b(shift(2)), 5, 1e-12)?;
    let c = check_freud_string(&seq)?;
    println!("matrix string equation, B = L: residual {:.1e} over {} degrees", c.residual, c.samples);
    Ok(())
}
