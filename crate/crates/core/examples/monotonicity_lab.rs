//! Seeded search for violations of operator monotonicity and of the
//! classical mean inequalities.

use meanlab::lab::{check_mean_inequalities, test_monotonicity};
use meanlab::ScalarFunction;

fn main() -> meanlab::Result<()> {
    for f in ["sqrt", "log1p", "power:0.3", "power:2", "power:3", "power:-1"] {
        let f: ScalarFunction = f.parse()?;
        let v = test_monotonicity(&f, 2, 2000, 0)?;
        match &v.witness {
            None => println!("{:<10} no violation in {} samples", f.to_string(), v.samples_run),
            Some(w) => println!(
                "{:<10} violated at sample {} ({:?}), min eigenvalue {:.4}",
                f.to_string(),
                w.sample_index,
                w.origin,
                w.min_eigenvalue
            ),
        }
    }
    let v = check_mean_inequalities(0.5, 2.0, 4, 500, 3)?;
    println!("mean chain p = 1/2, q = 2: {:?}", v.status);
    Ok(())
}
