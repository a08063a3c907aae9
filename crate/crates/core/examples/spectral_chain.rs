//! Chains Z₁ = X ≤ … ≤ Z_M = Y with Zₖ₊₁ ≤ γ₀Zₖ, each link solved by a
//! local inverse solver. This removes the ratio restriction.

use meanlab::inverse::{chain_decompose, chain_solve_global, chain_solve_sqrt};
use meanlab::linalg::random_spd;

fn main() -> meanlab::Result<()> {
    let x = random_spd(3, 11, 0.5, 2.0)?;
    let y = &x.scale(4.0) + &random_spd(3, 12, 1.0, 30.0)?;

    let bare = chain_decompose(&x, &y, 1.5)?;
    println!("γ₀ = 1.5: {} elements, levels {:?}", bare.len(), bare.levels);

    let w = chain_solve_global(2.0, &x, &y, None)?;
    println!(
        "arith/P_mu(2): {} elements at γ₀ = {:.4}, all solved {}, max residual {:.2e}",
        w.len(),
        w.gamma0,
        w.all_links_solved(),
        w.max_residual()
    );

    let w = chain_solve_sqrt(&x, &y)?;
    println!("sqrt/arith: {} elements, all solved {}", w.len(), w.all_links_solved());
    Ok(())
}
