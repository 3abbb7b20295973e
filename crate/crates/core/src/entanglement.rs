//! Wootters concurrence of two-qubit states.
//!
//! Every state produced by this crate is real, so ρ* = ρ and σy⊗σy is a
//! real matrix F. The λᵢ are the square roots of the eigenvalues of
//! √ρ F ρ F √ρ = R², with R = √ρ F √ρ symmetric; they are taken as |eig(R)|.

use crate::error::{Error, Result};
use crate::linalg::{jacobi_eigen, mat_mul, psd_sqrt, RealMatrix};
use crate::model::{build_degenerate_hamiltonian, Amplitudes, Couplings};
use crate::thermal::{gibbs_state, zero_temperature_state, Temperature, ThermalState};

const BOUNDARY_TOL: f64 = 1e-12;
const NORM_TOL: f64 = 1e-10;

/// A concurrence value in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Concurrence(f64);

impl Concurrence {
    /// Values within 1e-12 outside [0, 1] are clipped; anything further out
    /// is an error.
    pub fn new(value: f64) -> Result<Self> {
        if !(-BOUNDARY_TOL..=1.0 + BOUNDARY_TOL).contains(&value) {
            return Err(Error::Inconsistent(format!(
                "concurrence {value} outside [0, 1]"
            )));
        }
        Ok(Self(value.clamp(0.0, 1.0)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// σy ⊗ σy in the computational basis.
pub fn spin_flip_matrix() -> RealMatrix {
    RealMatrix::from_rows([
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ])
}

/// The λᵢ of the Wootters construction, in descending order.
pub fn wootters_lambdas(rho: &ThermalState) -> Result<[f64; 4]> {
    let root = psd_sqrt(rho.matrix())?;
    let flip = spin_flip_matrix();
    let r = mat_mul(&mat_mul(&root, &flip)?, &root)?.symmetrized();
    let eig = jacobi_eigen(&r)?;
    let mut lambdas = [0.0; 4];
    for (l, v) in lambdas.iter_mut().zip(&eig.values) {
        *l = v.abs();
    }
    // stable sort: exact ties stay in computed order
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok(lambdas)
}

/// C = max(λ₁ − λ₂ − λ₃ − λ₄, 0).
pub fn wootters_concurrence(rho: &ThermalState) -> Result<Concurrence> {
    let l = wootters_lambdas(rho)?;
    Concurrence::new((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// Entry point for density matrices given as real and imaginary parts.
///
/// Only real states are supported; a nonzero imaginary part is rejected.
pub fn wootters_concurrence_complex(re: &RealMatrix, im: &RealMatrix) -> Result<Concurrence> {
    let max_imag = im.max_abs();
    if max_imag > BOUNDARY_TOL {
        return Err(Error::ComplexUnsupported { max_imag });
    }
    wootters_concurrence(&ThermalState::new(re.clone())?)
}

/// C = 2|α δ − β γ| for |φ⟩ = α|00⟩ + β|01⟩ + γ|10⟩ + δ|11⟩.
pub fn pure_state_concurrence(amps: &Amplitudes) -> Result<Concurrence> {
    let norm = amps.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    let [a, b, g, d] = *amps;
    Concurrence::new(2.0 * (a * d - b * g).abs())
}

/// Concurrence of the T → 0⁺ state at the degeneracy point.
pub fn ground_state_concurrence(c: &Couplings) -> Result<Concurrence> {
    wootters_concurrence(&zero_temperature_state(c))
}

/// Concurrence of the Gibbs state at the degeneracy point.
pub fn thermal_concurrence(c: &Couplings, t: Temperature) -> Result<Concurrence> {
    let rho = gibbs_state(&build_degenerate_hamiltonian(c), t)?;
    wootters_concurrence(&rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{identical_eigensystem, PHI_MINUS, SINGLET};

    fn c(e_j1: f64, e_j2: f64, e_m: f64) -> Couplings {
        Couplings::new(e_j1, e_j2, e_m).unwrap()
    }

    fn werner(p: f64) -> ThermalState {
        let mut m = RealMatrix::identity(4).scaled(0.25 * (1.0 - p));
        m.add_scaled(p, &RealMatrix::outer(&SINGLET));
        ThermalState::new(m).unwrap()
    }

    #[test]
    fn singlet_is_maximally_entangled() {
        let rho = ThermalState::pure(&SINGLET).unwrap();
        assert!((wootters_concurrence(&rho).unwrap().value() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn maximally_mixed_is_separable() {
        let rho = ThermalState::new(RealMatrix::identity(4).scaled(0.25)).unwrap();
        assert_eq!(wootters_concurrence(&rho).unwrap().value(), 0.0);
        let l = wootters_lambdas(&rho).unwrap();
        for x in l {
            assert!((x - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn werner_states() {
        // C = max(0, (3p − 1)/2)
        for &p in &[0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0] {
            let want = ((3.0 * p - 1.0) / 2.0f64).max(0.0);
            let got = wootters_concurrence(&werner(p)).unwrap().value();
            assert!((got - want).abs() < 1e-12, "p={p}: {got} vs {want}");
        }
        assert!((wootters_concurrence(&werner(0.5)).unwrap().value() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn pure_state_examples() {
        assert_eq!(
            pure_state_concurrence(&[1.0, 0.0, 0.0, 0.0])
                .unwrap()
                .value(),
            0.0
        );
        assert!((pure_state_concurrence(&PHI_MINUS).unwrap().value() - 1.0).abs() < 1e-15);

        let psi4 = identical_eigensystem(0.5, 1.0).unwrap().states[3];
        let want = 1.0 / 1.25f64.sqrt();
        let direct = pure_state_concurrence(&psi4).unwrap().value();
        let via_rho = wootters_concurrence(&ThermalState::pure(&psi4).unwrap())
            .unwrap()
            .value();
        assert!((direct - want).abs() < 1e-14);
        assert!((via_rho - want).abs() < 1e-10);
        assert!((direct - 0.894_427).abs() < 1e-6);
    }

    #[test]
    fn pure_state_rejects_unnormalized() {
        assert!(matches!(
            pure_state_concurrence(&[1.0, 1.0, 0.0, 0.0]),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn complex_input_rejected() {
        let re = RealMatrix::identity(4).scaled(0.25);
        let mut im = RealMatrix::zeros(4);
        im[(0, 1)] = 0.1;
        im[(1, 0)] = -0.1;
        assert!(matches!(
            wootters_concurrence_complex(&re, &im),
            Err(Error::ComplexUnsupported { .. })
        ));
        assert_eq!(
            wootters_concurrence_complex(&re, &RealMatrix::zeros(4))
                .unwrap()
                .value(),
            0.0
        );
    }

    #[test]
    fn experiment_points() {
        let a = ground_state_concurrence(&c(3.625, 3.625, 1.0))
            .unwrap()
            .value();
        assert!((a - 0.26593).abs() < 1e-4);
        // identical qubits: E_m / √(E_m² + E_J²)
        assert!((a - 1.0 / (1.0f64 + 3.625 * 3.625).sqrt()).abs() < 1e-12);

        let b = ground_state_concurrence(&c(13.6, 17.2, 1.0))
            .unwrap()
            .value();
        let a4 = (952.64f64.sqrt() - 2.0) / 30.8;
        let oracle = (1.0 - a4 * a4).abs() / (1.0 + a4 * a4);
        assert!((b - oracle).abs() < 1e-12);
        assert!((b - 0.0648).abs() < 1e-4);
        assert!((b - 0.064).abs() < 1e-3);

        assert_eq!(
            ground_state_concurrence(&c(0.0, 0.0, 1.0)).unwrap().value(),
            0.0
        );
    }

    #[test]
    fn thermal_examples() {
        let low = thermal_concurrence(&c(3.625, 3.625, 1.0), Temperature::new(0.001).unwrap())
            .unwrap()
            .value();
        assert!((low - 0.26593).abs() < 1e-4);

        for tv in [0.01, 1.0, 100.0] {
            let t = Temperature::new(tv).unwrap();
            assert_eq!(
                thermal_concurrence(&c(0.0, 0.0, 3.0), t).unwrap().value(),
                0.0
            );
        }
        let hot = thermal_concurrence(&c(5.0, -2.0, 1.0), Temperature::new(1e6).unwrap())
            .unwrap()
            .value();
        assert!(hot < 1e-9);
    }

    #[test]
    fn concurrence_bounds() {
        assert_eq!(Concurrence::new(-1e-13).unwrap().value(), 0.0);
        assert_eq!(Concurrence::new(1.0 + 1e-13).unwrap().value(), 1.0);
        assert!(Concurrence::new(1.01).is_err());
    }
}
