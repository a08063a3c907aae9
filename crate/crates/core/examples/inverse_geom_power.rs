//! Given X <= Y, build A, B with A♯B = X and P_μ(p, A, B) = Y.

use meanlab::inverse::solve_geom_power;
use meanlab::linalg::random_spd;
use meanlab::means::matrix_mean;
use meanlab::MeanSpec;

fn main() -> meanlab::Result<()> {
    let x = random_spd(3, 1, 0.5, 2.0)?;
    let y = &x + &random_spd(3, 2, 0.1, 1.0)?;
    let s = solve_geom_power(0.5, &x, &y)?;
    println!("condition: {}", s.condition);
    println!("A = {:?}\nB = {:?}", s.a.rows(), s.b.rows());
    let g = matrix_mean(MeanSpec::Geometric, &s.a, &s.b)?;
    let p = matrix_mean(MeanSpec::KuboAndoPower(0.5), &s.a, &s.b)?;
    println!("|A♯B - X| = {:.2e}, |P - Y| = {:.2e}", g.max_diff(&x), p.max_diff(&y));
    Ok(())
}
