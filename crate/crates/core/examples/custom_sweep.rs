//! A two-axis grid evaluated in parallel and written as CSV to stdout.

use qubit_entangle::sweep::{AxisValues, Param};
use qubit_entangle::{run_sweep, GridSpec};

fn main() -> qubit_entangle::Result<()> {
    let spec = GridSpec::new()
        .axis(Param::T, AxisValues::list([0.1, 1.0]))
        .axis(Param::EJ1, AxisValues::linear(0.0, 10.0, 11))
        .fix(Param::EJ2, 4.0)
        .fix(Param::EM, 1.0);
    let ds = run_sweep(&spec)?;
    print!("{}", ds.to_csv()?);
    Ok(())
}
