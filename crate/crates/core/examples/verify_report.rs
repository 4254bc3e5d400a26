//! Runs the identity suite on a weight and prints the report; pass a check
//! list such as `lax,recurrence` to run a subset.

use moprl::mop::MopSequence;
use moprl::verify::{verify, Suite};
use moprl::weights::WeightSpec;

fn main() -> moprl::Result<()> {
    let suite = Suite::parse(&std::env::args().nth(1).unwrap_or_else(|| "all".into()))?;
    let spec = WeightSpec::builtin("hermite-b", 3)?;
    let seq = MopSequence::build(&spec, 6, 1e-12)?;
    let report = verify(&seq, &suite, 42);

    println!("{} (N = {}, n <= {})", report.weight, report.dim, report.n_range[1]);
    for c in &report.checks {
        let status = match (c.skipped, c.pass) {
            (true, _) => "skip",
            (false, true) => "ok",
            (false, false) => "FAIL",
        };
        println!("{status:>5}  {:<34} {:>9.1e} / {:.0e}  {}", c.name, c.residual, c.tol, c.anchor);
    }
    println!("all pass: {}", report.all_pass());
    Ok(())
}
