//! Square-root and quadratic inverse problems: (A+B)/2 = X together with
//! ((A^½+B^½)/2)² = Y or (A²+B²)/2 = Y².

use meanlab::inverse::{solve_arith_quadratic, solve_sqrt_arith};
use meanlab::SymMatrix;

fn main() -> meanlab::Result<()> {
    let x = SymMatrix::from_rows(&[vec![1.0, 0.2], vec![0.2, 0.8]])?;

    let lower = x.scale(0.7);
    let s = solve_sqrt_arith(&lower, &x)?;
    println!("sqrt/arith: A = {:?}", s.a.rows());
    println!("  residuals {:.2e} / {:.2e}", s.residual_x, s.residual_y);

    let upper = x.scale(1.3);
    let s = solve_arith_quadratic(&x, &upper)?;
    println!("arith/quadratic: B = {:?}", s.b.rows());
    println!("  residuals {:.2e} / {:.2e}, warning: {:?}", s.residual_x, s.residual_y, s.warning);
    Ok(())
}
