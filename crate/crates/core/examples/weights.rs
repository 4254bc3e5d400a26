//! Built-in weight families: `W = TT*`, the source `G` with `T′ = GT`, and a
//! finite-difference look at that relation.

use moprl::matpoly::{c64, CMatrix};
use moprl::weights::{commutativity_probe, shift, WeightSpec};

fn main() -> moprl::Result<()> {
    let l = shift(2);
    let specs = [
        WeightSpec::scalar_hermite(),
        WeightSpec::hermite_a(l.clone()),
        WeightSpec::hermite_b(l.clone()),
        WeightSpec::freud_a(l.clone()),
        WeightSpec::freud_b(l),
        WeightSpec::builtin("poly-u", 4)?,
    ];

    for spec in &specs {
        println!("{} ({})", spec.family().name(), spec.description());
        for (k, c) in spec.g_poly().coeffs().iter().enumerate() {
            if !c.is_zero() {
                println!("  G_{k} = {c:.3}");
            }
        }

        let z = c64(0.4, 0.3);
        let h = 1e-5;
        let fd = (&spec.t_eval(z + h)? - &spec.t_eval(z - h)?).scale_re(0.5 / h);
        let exact = &spec.g_poly().eval(z) * &spec.t_eval(z)?;
        println!("  |T'(z) - G(z)T(z)| = {:.1e}", (&fd - &exact).max_abs());

        let w = spec.weight_eval(0.7);
        println!("  W(0.7) = {w:.5}, hermitian: {}", w.is_hermitian());

        let probe = commutativity_probe(spec, &[-1.0, -0.2, 0.5, 1.3])?;
        println!("  W(x)W(y) - W(y)W(x): {:.1e}", probe.max_residual);
    }

    // a custom 2x2 weight from JSON
    let json = r#"{"family":"hermite-a","A":{"dim":2,"entries":[[[0,0],[2,0]],[[0,0],[0,0]]]}}"#;
    let spec = WeightSpec::from_json(json)?;
    println!("from JSON: {}, W(0) = {}", spec.description(), spec.weight_eval(0.0));
    assert_eq!(spec.weight_eval(0.0), CMatrix::identity(2));
    Ok(())
}
