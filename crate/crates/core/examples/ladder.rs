//! Polynomial ladder coefficients `𝒜ₙ`, `ℬₙ`, the matrices `Fₙ`, and the Lax
//! pair `Eₙ′ + EₙFₙ = F_{n+1}Eₙ`.

use moprl::ladder::{e_matrix, f_matrix, f_matrix_via_expansion, ladder_coeffs};
use moprl::matpoly::{c64, CMatrix};
use moprl::mop::MopSequence;
use moprl::weights::{shift, WeightSpec};

fn main() -> moprl::Result<()> {
    for spec in [WeightSpec::hermite_a(shift(2)), WeightSpec::freud_b(shift(2))] {
        let seq = MopSequence::build(&spec, 5, 1e-12)?;
        let g = spec.g_poly();
        println!("{}", spec.description());
        for n in 0..=2 {
            let l = ladder_coeffs(&seq, n, g)?;
            println!("  n = {n}");
            for (k, c) in l.a_poly.coeffs().iter().enumerate() {
                println!("    A_{n} [z^{k}] = {:.6}", c.clean(1e-12));
            }
            for (k, c) in l.b_poly.coeffs().iter().enumerate() {
                println!("    B_{n} [z^{k}] = {:.6}", c.clean(1e-12));
            }
        }

        let z = c64(-1.2, 0.4);
        let n = 2;
        let f = f_matrix(&seq, n, z, g)?;
        let f_exp = f_matrix_via_expansion(&seq, n, z, g)?;
        println!("  |F_{n} - F_{n} (expansion)| = {:.1e}", (&f - &f_exp).max_abs());

        let zero = CMatrix::zeros(2);
        let de = CMatrix::block2(&CMatrix::identity(2), &zero, &zero, &zero);
        let e = e_matrix(&seq, n, z);
        let lax = &(&de + &(&e * &f)) - &(&f_matrix(&seq, n + 1, z, g)? * &e);
        println!("  Lax pair residual at n = {n}: {:.1e}", lax.max_abs());
    }
    Ok(())
}
