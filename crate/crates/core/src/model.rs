//! Two-qubit Hamiltonians and their closed-form spectra.
//!
//! Basis order is |00⟩, |01⟩, |10⟩, |11⟩ with σz|0⟩ = +|0⟩ and qubit 1 as
//! the left tensor factor. Energies are in units of the coupling E_m with
//! k = 1, but any E_m > 0 is accepted.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::linalg::RealMatrix;

/// An amplitude vector in the computational basis.
pub type Amplitudes = [f64; 4];

/// Josephson energies and mutual coupling at the charge degeneracy point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Couplings {
    e_j1: f64,
    e_j2: f64,
    e_m: f64,
}

impl Couplings {
    pub fn new(e_j1: f64, e_j2: f64, e_m: f64) -> Result<Self> {
        finite("e_j1", e_j1)?;
        finite("e_j2", e_j2)?;
        finite("e_m", e_m)?;
        if e_m <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "e_m",
                value: e_m,
                reason: "coupling energy must be > 0",
            });
        }
        Ok(Self { e_j1, e_j2, e_m })
    }

    /// Two identical qubits, E_J1 = E_J2 = `e_j`.
    pub fn identical(e_j: f64, e_m: f64) -> Result<Self> {
        Self::new(e_j, e_j, e_m)
    }

    pub fn e_j1(&self) -> f64 {
        self.e_j1
    }

    pub fn e_j2(&self) -> f64 {
        self.e_j2
    }

    pub fn e_m(&self) -> f64 {
        self.e_m
    }

    /// A = (E_J1 − E_J2)² + 4E_m²
    pub fn a_big(&self) -> f64 {
        let d = self.e_j1 - self.e_j2;
        d * d + 4.0 * self.e_m * self.e_m
    }

    /// B = (E_J1 + E_J2)² + 4E_m²
    pub fn b_big(&self) -> f64 {
        let s = self.e_j1 + self.e_j2;
        s * s + 4.0 * self.e_m * self.e_m
    }

    /// √A computed without forming the square.
    pub fn sqrt_a(&self) -> f64 {
        (self.e_j1 - self.e_j2).hypot(2.0 * self.e_m)
    }

    pub fn sqrt_b(&self) -> f64 {
        (self.e_j1 + self.e_j2).hypot(2.0 * self.e_m)
    }

    /// Threshold below which E_J1 ∓ E_J2 counts as zero.
    pub fn degeneracy_eps(&self) -> f64 {
        1e-9 * (self.e_j1.abs() + self.e_j2.abs()).max(1.0)
    }

    /// Same physics with every energy multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::new(s * self.e_j1, s * self.e_j2, s * self.e_m)
    }
}

fn finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        })
    }
}

/// Full device point: couplings plus charging energies and gate charges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitParams {
    pub couplings: Couplings,
    pub e_c1: f64,
    pub e_c2: f64,
    pub n_g1: f64,
    pub n_g2: f64,
}

impl QubitParams {
    /// Both gate charges at 1/2; charging energies then drop out.
    pub fn at_degeneracy(couplings: Couplings) -> Self {
        Self {
            couplings,
            e_c1: 1.0,
            e_c2: 1.0,
            n_g1: 0.5,
            n_g2: 0.5,
        }
    }

    pub fn with_charging(mut self, e_c1: f64, e_c2: f64) -> Self {
        self.e_c1 = e_c1;
        self.e_c2 = e_c2;
        self
    }

    pub fn with_gate_charges(mut self, n_g1: f64, n_g2: f64) -> Self {
        self.n_g1 = n_g1;
        self.n_g2 = n_g2;
        self
    }

    pub fn validate(&self) -> Result<()> {
        finite("e_c1", self.e_c1)?;
        finite("e_c2", self.e_c2)?;
        finite("n_g1", self.n_g1)?;
        finite("n_g2", self.n_g2)
    }

    pub fn is_degeneracy_point(&self) -> bool {
        self.n_g1 == 0.5 && self.n_g2 == 0.5
    }
}

/// H = −½(h1 σz1 + h2 σz2 + E_J1 σx1 + E_J2 σx2 − 2E_m σzz)
fn assemble(h1: f64, h2: f64, c: &Couplings) -> RealMatrix {
    const Z1: [f64; 4] = [1.0, 1.0, -1.0, -1.0];
    const Z2: [f64; 4] = [1.0, -1.0, 1.0, -1.0];
    let mut h = RealMatrix::zeros(4);
    for i in 0..4 {
        let zz = Z1[i] * Z2[i];
        h[(i, i)] = -0.5 * (h1 * Z1[i] + h2 * Z2[i] - 2.0 * c.e_m * zz);
    }
    // σx on qubit 2 flips the low bit, σx on qubit 1 the high bit.
    let x2 = -0.5 * c.e_j2;
    let x1 = -0.5 * c.e_j1;
    for (i, j) in [(0, 1), (2, 3)] {
        h[(i, j)] = x2;
        h[(j, i)] = x2;
    }
    for (i, j) in [(0, 2), (1, 3)] {
        h[(i, j)] = x1;
        h[(j, i)] = x1;
    }
    h
}

/// Hamiltonian with arbitrary gate charges.
pub fn build_full_hamiltonian(p: &QubitParams) -> Result<RealMatrix> {
    p.validate()?;
    let c = &p.couplings;
    let h1 = 4.0 * p.e_c1 * (0.5 - p.n_g1) + 2.0 * c.e_m * (0.5 - p.n_g2);
    let h2 = 4.0 * p.e_c2 * (0.5 - p.n_g2) + 2.0 * c.e_m * (0.5 - p.n_g1);
    Ok(assemble(h1, h2, c))
}

/// Hamiltonian at n_g1 = n_g2 = 1/2.
pub fn build_degenerate_hamiltonian(c: &Couplings) -> RealMatrix {
    assemble(0.0, 0.0, c)
}

/// A closed-form coefficient, or a marker that the formula is singular
/// there and the state was taken in its limiting form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coefficient {
    Value(f64),
    DegenerateLimit,
}

impl Coefficient {
    pub fn value(self) -> Option<f64> {
        match self {
            Coefficient::Value(v) => Some(v),
            Coefficient::DegenerateLimit => None,
        }
    }
}

/// Closed-form eigenpairs of the degeneracy-point Hamiltonian.
///
/// Index `i` holds Ψ_{i+1}. Energies are (−√A/2, +√A/2, +√B/2, −√B/2).
/// Ψ₁, Ψ₂ live in span{|00⟩−|11⟩, |01⟩−|10⟩} with coefficients a₁, a₂;
/// Ψ₃, Ψ₄ live in span{|00⟩+|11⟩, |01⟩+|10⟩}, Ψ₃ using −a₄ and Ψ₄ using
/// +a₃ (this pairing is what makes Ψ₄ the −√B/2 state).
#[derive(Debug, Clone)]
pub struct AnalyticEigensystem {
    pub a_big: f64,
    pub b_big: f64,
    pub energies: [f64; 4],
    /// a₁, a₂, a₃, a₄
    pub coeffs: [Coefficient; 4],
    pub states: [Amplitudes; 4],
    /// N₁…N₄ of the un-normalized forms; `None` in a degenerate limit.
    pub norms: [Option<f64>; 4],
}

pub fn analytic_eigensystem(c: &Couplings) -> AnalyticEigensystem {
    let d = c.e_j1 - c.e_j2;
    let s = c.e_j1 + c.e_j2;
    let em2 = 2.0 * c.e_m;
    let ra = c.sqrt_a();
    let rb = c.sqrt_b();
    let eps = c.degeneracy_eps();

    // Rationalized forms: (√A−2E_m)/d = d/(√A+2E_m), and Ψ₁/Ψ₄ are scaled
    // through by d and s so that d = 0 or s = 0 gives the Bell limits.
    let psi1 = normalized([d, -(ra + em2), ra + em2, -d]);
    let a2 = d / (ra + em2);
    let psi2 = normalized([1.0, a2, -a2, -1.0]);
    let a4 = s / (rb + em2);
    let psi3 = normalized([1.0, -a4, -a4, 1.0]);
    let psi4 = normalized([s, rb + em2, rb + em2, s]);

    let norm_of = |a: f64| (2.0 + 2.0 * a * a).sqrt();
    let (a1c, a2c) = if d.abs() <= eps {
        (Coefficient::DegenerateLimit, Coefficient::DegenerateLimit)
    } else {
        (Coefficient::Value((ra + em2) / d), Coefficient::Value(a2))
    };
    let (a3c, a4c) = if s.abs() <= eps {
        (Coefficient::DegenerateLimit, Coefficient::DegenerateLimit)
    } else {
        (Coefficient::Value((rb + em2) / s), Coefficient::Value(a4))
    };
    let coeffs = [a1c, a2c, a3c, a4c];
    // Ψ₃ carries a₄, Ψ₄ carries a₃.
    let norms = [
        a1c.value().map(norm_of),
        a2c.value().map(norm_of),
        a4c.value().map(norm_of),
        a3c.value().map(norm_of),
    ];

    AnalyticEigensystem {
        a_big: c.a_big(),
        b_big: c.b_big(),
        energies: [-0.5 * ra, 0.5 * ra, 0.5 * rb, -0.5 * rb],
        coeffs,
        states: [psi1, psi2, psi3, psi4],
        norms,
    }
}

/// Closed-form eigenpairs for identical qubits, E_J1 = E_J2 = E_J.
///
/// Energies are (−E_m, +E_m, +√D, −√D) for ψ₁…ψ₄ with D = E_m² + E_J².
#[derive(Debug, Clone)]
pub struct IdenticalEigensystem {
    pub d_big: f64,
    /// ξ₊ = (E_m + √D)/E_J; `None` at E_J = 0.
    pub xi_plus: Option<f64>,
    /// ξ₋ = (E_m − √D)/E_J; `None` at E_J = 0.
    pub xi_minus: Option<f64>,
    pub energies: [f64; 4],
    pub states: [Amplitudes; 4],
    /// N₊ (ψ₃) and N₋ (ψ₄).
    pub n_plus: Option<f64>,
    pub n_minus: Option<f64>,
    /// Set at E_J = 0, where ψ₃ and ψ₄ become (|00⟩+|11⟩)/√2 and (|01⟩+|10⟩)/√2.
    pub degenerate: bool,
}

/// ψ₁ = (|01⟩ − |10⟩)/√2
pub const SINGLET: Amplitudes = [0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0];
/// ψ₂ = (|00⟩ − |11⟩)/√2
pub const PHI_MINUS: Amplitudes = [FRAC_1_SQRT_2, 0.0, 0.0, -FRAC_1_SQRT_2];

pub fn identical_eigensystem(e_j: f64, e_m: f64) -> Result<IdenticalEigensystem> {
    let c = Couplings::identical(e_j, e_m)?;
    let rd = e_m.hypot(e_j);
    let degenerate = e_j.abs() <= c.degeneracy_eps();
    let xi_minus_stable = -e_j / (e_m + rd);
    let psi3 = normalized([1.0, xi_minus_stable, xi_minus_stable, 1.0]);
    let psi4 = normalized([e_j, e_m + rd, e_m + rd, e_j]);

    let (xi_plus, xi_minus) = if degenerate {
        (None, None)
    } else {
        (Some((e_m + rd) / e_j), Some(xi_minus_stable))
    };
    let norm_of = |x: f64| (2.0 + 2.0 * x * x).sqrt();
    Ok(IdenticalEigensystem {
        d_big: e_m * e_m + e_j * e_j,
        xi_plus,
        xi_minus,
        energies: [-e_m, e_m, rd, -rd],
        states: [SINGLET, PHI_MINUS, psi3, psi4],
        n_plus: xi_minus.map(norm_of),
        n_minus: xi_plus.map(norm_of),
        degenerate,
    })
}

/// The lowest eigenspace of the degeneracy-point Hamiltonian.
#[derive(Debug, Clone)]
pub struct GroundStateInfo {
    pub energy: f64,
    pub states: Vec<Amplitudes>,
    pub degenerate: bool,
}

/// Ψ₄ when E_J1·E_J2 > 0, Ψ₁ when E_J1·E_J2 < 0, and the pair {Ψ₁, Ψ₄}
/// when the product vanishes (then A = B and the two levels coincide).
pub fn ground_state(c: &Couplings) -> GroundStateInfo {
    let sys = analytic_eigensystem(c);
    let eps = c.degeneracy_eps();
    let product = c.e_j1 * c.e_j2;
    let (e1, e4) = (sys.energies[0], sys.energies[3]);
    if product.abs() <= eps * eps {
        GroundStateInfo {
            energy: e1.min(e4),
            states: vec![sys.states[0], sys.states[3]],
            degenerate: true,
        }
    } else if e4 < e1 {
        GroundStateInfo {
            energy: e4,
            states: vec![sys.states[3]],
            degenerate: false,
        }
    } else {
        GroundStateInfo {
            energy: e1,
            states: vec![sys.states[0]],
            degenerate: false,
        }
    }
}

/// Scales to unit 2-norm and makes the largest-magnitude amplitude positive
/// (first such index on ties).
pub fn normalized(v: Amplitudes) -> Amplitudes {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut best = 0;
    for i in 1..4 {
        if v[i].abs() > v[best].abs() {
            best = i;
        }
    }
    let scale = if v[best] < 0.0 {
        -1.0 / norm
    } else {
        1.0 / norm
    };
    // + 0.0 turns -0.0 into 0.0
    v.map(|x| x * scale + 0.0)
}
