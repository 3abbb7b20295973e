//! Ground-state concurrence at the two measured parameter sets.

use qubit_entangle::compare_experiments;

fn main() -> qubit_entangle::Result<()> {
    for p in compare_experiments()? {
        println!(
            "{:<22} E_J1={:<6} E_J2={:<6} measured={:<5} reported={:<8} computed={:.6} {}",
            p.label,
            p.e_j1,
            p.e_j2,
            p.reported_measured_c,
            p.reported_theory_c,
            p.computed_c,
            if p.passes() { "ok" } else { "MISMATCH" }
        );
    }
    Ok(())
}
