//! Numerical attempt at the inverse problem for two naive power means:
//! find A, B with ((A^p+B^p)/2)^{1/p} = X and ((A^q+B^q)/2)^{1/q} = Y.

use meanlab::inverse::explore_open_problem;
use meanlab::means::matrix_mean;
use meanlab::{MeanSpec, SymMatrix};

fn main() -> meanlab::Result<()> {
    let x = SymMatrix::from_rows(&[vec![2.0, 0.3], vec![0.3, 1.0]])?;
    // a gap that does not commute with X
    let d = SymMatrix::from_rows(&[vec![0.1, -0.05], vec![-0.05, 0.3]])?;
    for s in [0.2, 1.0, 3.0] {
        let y = &x + &d.scale(s);
        let out = explore_open_problem(0.5, 2.0, &x, &y, 50)?;
        println!(
            "gap x{s}: {:?} after {} iterations, residuals {:.2e} / {:.2e}",
            out.status, out.iterations, out.residual_x, out.residual_y
        );
        let m = matrix_mean(MeanSpec::NaivePower(2.0), &out.a, &out.b)?;
        println!("  |M_2(A, B) - Y| = {:.2e}", m.max_diff(&y));
    }
    Ok(())
}
