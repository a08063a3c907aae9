//! Eigendecomposition, spectral functions and the Loewner order.

use meanlab::linalg::{apply_fun, eig_sym, loewner_leq};
use meanlab::{ScalarFunction, SymMatrix};

fn main() -> meanlab::Result<()> {
    let a = SymMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]])?;
    let b = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 1.0]])?;

    let e = eig_sym(&b)?;
    println!("eigenvalues of B: {:?}", e.values);

    let root = apply_fun(&b, &ScalarFunction::Sqrt)?;
    println!("B^(1/2) = {:?}", root.rows());
    println!("(B^(1/2))^2 - B = {:.2e}", root.square().max_diff(&b));

    println!("A <= B: {}", loewner_leq(&a, &b, 1e-9)?.holds);
    for f in [ScalarFunction::Sqrt, ScalarFunction::Power(2.0)] {
        let c = loewner_leq(&apply_fun(&a, &f)?, &apply_fun(&b, &f)?, 1e-9)?;
        println!("f = {f}: f(A) <= f(B) is {} (min eigenvalue {:.6})", c.holds, c.min_eigenvalue);
    }
    Ok(())
}
