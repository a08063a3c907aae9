//! Kubo-Ando power means against naive power means, and the divergence
//! between the two square-root means.

use meanlab::linalg::random_spd;
use meanlab::means::{divergence_phi, matrix_mean};
use meanlab::MeanSpec;

fn main() -> meanlab::Result<()> {
    let a = random_spd(3, 7, 0.5, 4.0)?;
    let b = random_spd(3, 8, 0.5, 4.0)?;

    let specs = [
        MeanSpec::MinMean,
        MeanSpec::Geometric,
        MeanSpec::KuboAndoPower(0.5),
        MeanSpec::Arithmetic,
        MeanSpec::KuboAndoPower(2.0),
        MeanSpec::NaivePower(0.5),
        MeanSpec::NaivePower(2.0),
    ];
    for spec in specs {
        let m = matrix_mean(spec, &a, &b)?;
        println!("{spec:<12} trace {:.6}", m.trace());
    }
    println!("divergence at p = 1/2: {:.3e}", divergence_phi(0.5, &a, &b)?);
    Ok(())
}
