//! Closed-form eigenpairs next to a Jacobi diagonalization of the same
//! Hamiltonian.

use qubit_entangle::model::Coefficient;
use qubit_entangle::{analytic_eigensystem, build_degenerate_hamiltonian, jacobi_eigen, Couplings};

fn main() -> qubit_entangle::Result<()> {
    let c = Couplings::new(13.6, 17.2, 1.0)?;
    let h = build_degenerate_hamiltonian(&c);
    let sys = analytic_eigensystem(&c);
    println!("A = {:.6}, B = {:.6}", sys.a_big, sys.b_big);
    for i in 0..4 {
        let coeff = match sys.coeffs[i] {
            Coefficient::Value(v) => format!("{v:.6}"),
            Coefficient::DegenerateLimit => "limit".to_string(),
        };
        let s = sys.states[i];
        let hv = h.mul_vec(&s);
        let residual = (0..4)
            .map(|k| (hv[k] - sys.energies[i] * s[k]).abs())
            .fold(0.0, f64::max);
        println!(
            "psi{} E={:+.6} coeff={coeff} state=[{:+.5}, {:+.5}, {:+.5}, {:+.5}] residual={residual:.1e}",
            i + 1,
            sys.energies[i],
            s[0],
            s[1],
            s[2],
            s[3]
        );
    }
    let eig = jacobi_eigen(&h)?;
    println!("jacobi eigenvalues: {:?}", eig.values);
    Ok(())
}
