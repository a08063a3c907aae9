//! Inverting the scalar maps h_p and φ_r on their two branches, and the
//! geometric chain that bridges a large ratio in bounded steps.

use meanlab::scalar::{gamma_of, h_map, invert_h, invert_phi, phi_map, scalar_chain};

fn main() -> meanlab::Result<()> {
    let root = invert_h(0.5, 3.0)?;
    println!("h_1/2(a) = 3: a = {}, mirror {}, check {}", root.value, root.mirror, h_map(0.5, root.value));

    let r = 3.0;
    let g = gamma_of(r)?;
    let x = 1.0 + 0.9 * (g - 1.0);
    let root = invert_phi(r, x)?;
    println!("phi_3(a) = {x}: a = {}, mirror {}, check {}", root.value, root.mirror, phi_map(r, root.value));

    let chain = scalar_chain(1.0, 50.0, (1.0 + g) / 2.0)?;
    println!("1 -> 50 in {} steps: {:?}", chain.len() - 1, chain);
    Ok(())
}
