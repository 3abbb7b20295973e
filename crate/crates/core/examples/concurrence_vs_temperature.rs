//! Thermal concurrence of an identical pair as the temperature rises.

use qubit_entangle::{ground_state_concurrence, thermal_concurrence, Couplings, Temperature};

fn main() -> qubit_entangle::Result<()> {
    let c = Couplings::identical(3.625, 1.0)?;
    println!("t -> 0   C = {:.6}", ground_state_concurrence(&c)?.value());
    for t in [0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let v = thermal_concurrence(&c, Temperature::new(t)?)?.value();
        println!("t = {t:<5} C = {v:.6}");
    }
    Ok(())
}
