//! Gibbs state from spectral decomposition against the closed-form matrix.

use qubit_entangle::thermal::closed_form_terms;
use qubit_entangle::{
    build_degenerate_hamiltonian, closed_form_density, gibbs_state, Couplings, Temperature,
};

fn main() -> qubit_entangle::Result<()> {
    let c = Couplings::new(2.0, 5.0, 1.0)?;
    let t = Temperature::new(0.7)?;
    let spectral = gibbs_state(&build_degenerate_hamiltonian(&c), t)?;
    let closed = closed_form_density(&c, t)?;
    let m = spectral.matrix();
    for i in 0..4 {
        println!(
            "{:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            m[(i, 0)],
            m[(i, 1)],
            m[(i, 2)],
            m[(i, 3)]
        );
    }
    let terms = closed_form_terms(&c, t);
    println!(
        "x_A = {:.6}, x_B = {:.6}, Z = {:.6}",
        terms.x_a, terms.x_b, terms.z
    );
    println!("purity = {:.6}", spectral.purity());
    println!(
        "max |spectral - closed| = {:.2e}",
        m.max_abs_diff(closed.matrix())
    );
    Ok(())
}
