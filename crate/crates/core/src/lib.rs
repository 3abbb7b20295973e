//! Thermal and ground-state entanglement of two capacitively coupled
//! superconducting charge qubits.
//!
//! The crate is layered bottom-up:
//!
//! - [`linalg`]: 4x4 real symmetric kernel (Jacobi eigensolver, PSD square root)
//! - [`model`]: Hamiltonians and closed-form spectra
//! - [`thermal`]: Gibbs states, spectral and closed-form
//! - [`entanglement`]: Wootters concurrence
//! - [`sweep`]: grids, figure datasets, experiment comparison
//! - [`cli`]: the `qubit-ent` command line
//!
//! ```
//! use qubit_entangle::{ground_state_concurrence, Couplings};
//!
//! let c = ground_state_concurrence(&Couplings::identical(3.625, 1.0).unwrap()).unwrap();
//! assert!((c.value() - 0.26593).abs() < 1e-4);
//! ```

pub mod cli;
pub mod entanglement;
pub mod error;
pub mod format;
pub mod linalg;
pub mod model;
pub mod sweep;
pub mod thermal;

pub use entanglement::{
    ground_state_concurrence, pure_state_concurrence, thermal_concurrence, wootters_concurrence,
    Concurrence,
};
pub use error::{Error, Result};
pub use linalg::{jacobi_eigen, mat_mul, psd_sqrt, EigenSystem, RealMatrix};
pub use model::{
    analytic_eigensystem, build_degenerate_hamiltonian, build_full_hamiltonian, ground_state,
    identical_eigensystem, Couplings, QubitParams,
};
pub use sweep::{
    argmax_diagonal_check, compare_experiments, figure_dataset, run_sweep, FigureDataset, FigureId,
    GridSpec,
};
pub use thermal::{
    closed_form_density, closed_form_terms, gibbs_state, zero_temperature_state, Temperature,
    ThermalState,
};
