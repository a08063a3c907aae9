//! With naive power means the inequality f((A+B)/2) ≤ f(((A^q+B^q)/2)^{1/q})
//! does not characterize monotonicity: t^r satisfies it for 1 < r ≤ min(2, q)
//! although t^r is not operator monotone.

use meanlab::lab::prop31_counterexample;

fn main() -> meanlab::Result<()> {
    for (q, r) in [(2.0, 2.0), (3.0, 1.5), (1.5, 1.2)] {
        let rep = prop31_counterexample(q, r, 3, 400, 0)?;
        let links: Vec<_> = rep.links.iter().map(|v| v.holds()).collect();
        println!(
            "q = {q}, r = {r}: links {links:?}, combined holds {}, t^r monotone violated {}, demonstrated {}",
            rep.combined.holds(),
            rep.monotonicity.is_violated(),
            rep.demonstrated
        );
    }
    Ok(())
}
