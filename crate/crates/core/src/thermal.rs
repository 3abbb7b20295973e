//! Thermal equilibrium states ρ = exp(−H/kT)/Z.
//!
//! [`gibbs_state`] diagonalizes H and is the reference route.
//! [`closed_form_density`] assembles ρ from the six m-terms and is checked
//! against it element-wise.

use crate::error::{Error, Result};
use crate::linalg::{jacobi_eigen, RealMatrix, PSD_CLIP_TOL};
use crate::model::{ground_state, Couplings};

const TRACE_TOL: f64 = 1e-12;
const SYMMETRY_TOL: f64 = 1e-12;
/// cosh/sinh arguments above this are evaluated relative to e^x.
const OVERFLOW_GUARD: f64 = 700.0;

/// Temperature in units of E_m/k.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Temperature(f64);

impl Temperature {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Self(value))
        } else {
            Err(Error::NonPositiveTemperature(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A validated two-qubit density matrix: real symmetric, unit trace, PSD.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalState {
    matrix: RealMatrix,
}

impl ThermalState {
    pub fn new(matrix: RealMatrix) -> Result<Self> {
        if matrix.dim() != 4 {
            return Err(Error::InvalidState(format!(
                "expected a 4x4 matrix, got {0}x{0}",
                matrix.dim()
            )));
        }
        let tr = matrix.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} != 1")));
        }
        let asym = matrix.max_asymmetry();
        if asym > SYMMETRY_TOL {
            return Err(Error::InvalidState(format!("asymmetry {asym:e}")));
        }
        let eig = jacobi_eigen(&matrix)?;
        if eig.values[0] < -PSD_CLIP_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {:e}",
                eig.values[0]
            )));
        }
        Ok(Self { matrix })
    }

    /// Pure state |v⟩⟨v|.
    pub fn pure(v: &[f64; 4]) -> Result<Self> {
        Self::new(RealMatrix::outer(v))
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> RealMatrix {
        self.matrix
    }

    /// Tr ρ²
    pub fn purity(&self) -> f64 {
        self.matrix.as_slice().iter().map(|x| x * x).sum()
    }
}

/// Gibbs state of a real symmetric Hamiltonian.
///
/// Boltzmann weights are computed relative to the lowest level, so tiny
/// temperatures do not overflow.
pub fn gibbs_state(h: &RealMatrix, t: Temperature) -> Result<ThermalState> {
    let eig = jacobi_eigen(h)?;
    let e_min = eig.values[0];
    let weights: Vec<f64> = eig
        .values
        .iter()
        .map(|e| (-(e - e_min) / t.value()).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    let mut rho = RealMatrix::zeros(h.dim());
    for (k, w) in weights.iter().enumerate() {
        if *w == 0.0 {
            continue;
        }
        rho.add_scaled(w / z, &RealMatrix::outer(&eig.vector(k)));
    }
    ThermalState::new(rho.symmetrized())
}

/// The m₁…m₆ terms of the closed-form ρ(T).
///
/// When max(x_A, x_B) exceeds 700 every cosh/sinh is stored multiplied by
/// e^{−log_scale}; the density matrix only uses ratios so this is exact.
/// With `log_scale == 0` the values are the plain terms (m₁ ≥ 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormTerms {
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
    pub m5: f64,
    pub m6: f64,
    pub x_a: f64,
    pub x_b: f64,
    /// Partition function 4·m₁ (scaled like the m-terms).
    pub z: f64,
    pub log_scale: f64,
}

pub fn closed_form_terms(c: &Couplings, t: Temperature) -> ClosedFormTerms {
    let ra = c.sqrt_a();
    let rb = c.sqrt_b();
    let x_a = ra / (2.0 * t.value());
    let x_b = rb / (2.0 * t.value());
    let shift = x_a.max(x_b);
    let log_scale = if shift > OVERFLOW_GUARD { shift } else { 0.0 };

    let (ch_a, sh_a, ch_b, sh_b) = if log_scale == 0.0 {
        (x_a.cosh(), x_a.sinh(), x_b.cosh(), x_b.sinh())
    } else {
        let ch = |x: f64| 0.5 * ((x - log_scale).exp() + (-x - log_scale).exp());
        let sh = |x: f64| 0.5 * ((x - log_scale).exp() - (-x - log_scale).exp());
        (ch(x_a), sh(x_a), ch(x_b), sh(x_b))
    };

    let em = c.e_m();
    let m1 = 0.5 * (ch_a + ch_b);
    ClosedFormTerms {
        m1,
        m2: em * (sh_a / ra + sh_b / rb),
        m3: (c.e_j1() + c.e_j2()) / (2.0 * rb) * sh_b,
        m4: (c.e_j1() - c.e_j2()) / (2.0 * ra) * sh_a,
        m5: 0.5 * (ch_b - ch_a),
        m6: em * (sh_a / ra - sh_b / rb),
        x_a,
        x_b,
        z: 4.0 * m1,
        log_scale,
    }
}

/// ρ(T) assembled from the closed-form terms.
pub fn closed_form_density(c: &Couplings, t: Temperature) -> Result<ThermalState> {
    let m = closed_form_terms(c, t);
    let diag_out = m.m1 - m.m2;
    let diag_in = m.m1 + m.m2;
    let flip_minus = m.m3 - m.m4;
    let flip_plus = m.m3 + m.m4;
    let corner = m.m5 + m.m6;
    let inner = m.m5 - m.m6;
    let rho = RealMatrix::from_rows([
        [diag_out, flip_minus, flip_plus, corner],
        [flip_minus, diag_in, inner, flip_plus],
        [flip_plus, inner, diag_in, flip_minus],
        [corner, flip_plus, flip_minus, diag_out],
    ])
    .scaled(1.0 / m.z);
    ThermalState::new(rho)
}

/// The T → 0⁺ limit of the Gibbs family at the degeneracy point.
///
/// A unique ground state gives its projector; a degenerate ground level
/// gives the uniform mixture over it.
pub fn zero_temperature_state(c: &Couplings) -> ThermalState {
    let g = ground_state(c);
    mixture(g.states.iter().map(|s| s.as_slice()), g.states.len())
        .expect("ground projectors form a valid state")
}

/// T → 0⁺ limit for an arbitrary real symmetric Hamiltonian, found
/// numerically. Levels within `1e-9·max(1, ‖H‖)` of the minimum count as
/// degenerate.
pub fn zero_temperature_state_of(h: &RealMatrix) -> Result<ThermalState> {
    let eig = jacobi_eigen(h)?;
    let tol = 1e-9 * h.max_abs().max(1.0);
    let e_min = eig.values[0];
    let ground: Vec<Vec<f64>> = (0..eig.values.len())
        .filter(|&k| eig.values[k] - e_min <= tol)
        .map(|k| eig.vector(k))
        .collect();
    mixture(ground.iter().map(Vec::as_slice), ground.len())
}

fn mixture<'a>(states: impl Iterator<Item = &'a [f64]>, count: usize) -> Result<ThermalState> {
    let mut rho = RealMatrix::zeros(4);
    let w = 1.0 / count as f64;
    for s in states {
        rho.add_scaled(w, &RealMatrix::outer(s));
    }
    ThermalState::new(rho.symmetrized())
}
