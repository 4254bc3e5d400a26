//! Weights `e^{−x²}e^{Ax}e^{A*x}` where `A` satisfies commutator conditions
//! against `J`, so that `H(x) = e^{Ax}(iJ)e^{−Ax}` is a degree-one polynomial
//! and gives first-order relations for `P̂ₙ`.

use moprl::ladder::ladder_coeffs_h;
use moprl::matpoly::c64;
use moprl::mop::MopSequence;
use moprl::verify::{check_ad_case, SampleSet};
use moprl::weights::{AdCase, AdConditionCase};

fn main() -> moprl::Result<()> {
    for case in [AdCase::Case1, AdCase::Case2] {
        let ad = AdConditionCase::new(case, &[c64(1.0, 0.0), c64(0.5, 0.0)])?;
        println!("{case:?}: A = {:.4}", ad.a);
        println!("  J = {}", ad.j);
        let (r1, r2) = ad.ad_residuals();
        println!("  commutator conditions: {r1:.1e}, {r2:.1e}");
        let h = ad.h_poly();
        println!("  H(x) = {} + {} x", h.coeff(0), h.coeff(1));
        println!("  |H(0.8) - e^(0.8A) iJ e^(-0.8A)| = {:.1e}", (&h.eval_re(0.8) - &ad.h_by_conjugation(0.8)).max_abs());

        let seq = MopSequence::build(&ad.weight(), 5, 1e-12)?;
        let l = ladder_coeffs_h(&seq, 2, &ad)?;
        println!("  A_2(H) = {:.6}", l.a_poly.coeff(0).clean(1e-12));

        for c in check_ad_case(&seq, &ad, &SampleSet::new(0))? {
            println!("  {:<16} residual {:.1e} (tol {:.0e}) {}", c.name, c.residual, c.tol, if c.pass { "ok" } else { "FAIL" });
        }
    }
    Ok(())
}
