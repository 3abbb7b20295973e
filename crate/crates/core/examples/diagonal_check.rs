//! Where along E_J1 the concurrence peaks for a few fixed E_J2 at low T.

use qubit_entangle::sweep::AxisValues;
use qubit_entangle::{argmax_diagonal_check, Temperature};

fn main() -> qubit_entangle::Result<()> {
    let grid = AxisValues::linear(0.5, 30.0, 591);
    let report = argmax_diagonal_check(Temperature::new(0.01)?, &[2.0, 5.0, 10.0, 17.2], &grid)?;
    for e in &report.entries {
        println!(
            "E_J2={:<5} argmax E_J1={:<6} C_max={:.4} C(E_J1=E_J2)={:.4} within one step: {}",
            e.e_j2, e.argmax_e_j1, e.max_c, e.c_on_diagonal, e.within_one_step
        );
    }
    Ok(())
}
