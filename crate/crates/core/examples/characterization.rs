//! An inequality between two means holding for all pairs forces f to be
//! operator monotone. Non-monotone f is caught on random pairs, or on a
//! pair built from a monotonicity counterexample by an inverse solver.

use meanlab::lab::{test_characterization, Hypothesis};
use meanlab::ScalarFunction;

fn main() -> meanlab::Result<()> {
    let hyps = [
        Hypothesis::GeomVsPower(0.5),
        Hypothesis::PowerVsArith(0.5),
        Hypothesis::ArithVsPower(2.0),
        Hypothesis::NaivePowerVsArith(0.5),
    ];
    for f in [ScalarFunction::Sqrt, ScalarFunction::Power(2.0)] {
        for h in hyps {
            let r = test_characterization(&f, h, 3, 300, 0)?;
            let origin = r.inequality.witness.as_ref().map(|w| format!("{:?}", w.origin));
            println!(
                "{:<8} {:<26} inequality {:?} {} / monotone {:?}, consistent {}",
                f.to_string(),
                h.to_string(),
                r.inequality.status,
                origin.unwrap_or_default(),
                r.monotonicity.status,
                r.consistent
            );
        }
    }
    Ok(())
}
