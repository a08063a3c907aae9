//! Local arithmetic / power-mean solver: with X <= Y < γX, build A, B with
//! (A+B)/2 = X and P_μ(r, A, B) = Y.

use meanlab::inverse::solve_arith_power_local;
use meanlab::means::matrix_mean;
use meanlab::scalar::gamma_of;
use meanlab::{MeanSpec, SymMatrix};

fn main() -> meanlab::Result<()> {
    let r = 2.0;
    let x = SymMatrix::from_rows(&[vec![2.0, 0.5], vec![0.5, 1.0]])?;
    let gamma = gamma_of(r)?;
    let y = x.scale(1.0 + 0.8 * (gamma - 1.0));
    let s = solve_arith_power_local(r, &x, &y)?;
    println!("γ = {gamma:.6}, residuals {:.2e} / {:.2e}", s.residual_x, s.residual_y);
    let m = matrix_mean(MeanSpec::KuboAndoPower(r), &s.a, &s.b)?;
    println!("P_mu(2, A, B) = {:?}", m.rows());

    match solve_arith_power_local(r, &x, &x.scale(2.0)) {
        Ok(_) => println!("unexpected: Y = 2X solved locally"),
        Err(e) => println!("Y = 2X is outside the local band: {e}"),
    }
    Ok(())
}
