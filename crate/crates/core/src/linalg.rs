//! Small dense real matrices and a cyclic Jacobi eigensolver.
//!
//! Everything here is sized for the two-qubit problem (4x4), but the
//! routines are written for any square dimension. Storage is row-major.

use std::fmt;

use crate::error::{Error, Result};

/// Relative tolerance used to decide whether an input is symmetric.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Eigenvalues down to `-PSD_CLIP_TOL` are treated as zero by [`psd_sqrt`].
pub const PSD_CLIP_TOL: f64 = 1e-12;
/// Jacobi stops once every off-diagonal entry is below this fraction of the scale.
const JACOBI_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

/// A square real matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct RealMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    /// Builds a `dim x dim` matrix from row-major entries, rejecting
    /// wrong lengths and non-finite values.
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::BadShape {
                expected: dim * dim,
                got: data.len(),
            });
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        Self {
            dim: N,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// The rank-one matrix `v vᵀ`.
    pub fn outer(v: &[f64]) -> Self {
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = v[i] * v[j];
            }
        }
        m
    }

    /// Kronecker product `a ⊗ b`; `a` is the left (slow-index) factor.
    pub fn kron(a: &RealMatrix, b: &RealMatrix) -> Self {
        let dim = a.dim * b.dim;
        let mut m = Self::zeros(dim);
        for i in 0..a.dim {
            for j in 0..a.dim {
                for k in 0..b.dim {
                    for l in 0..b.dim {
                        m[(i * b.dim + k, j * b.dim + l)] = a[(i, j)] * b[(k, l)];
                    }
                }
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    /// Largest absolute element-wise difference; `f64::INFINITY` on dimension mismatch.
    pub fn max_abs_diff(&self, other: &RealMatrix) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    /// Returns `(m + mᵀ) / 2`.
    pub fn symmetrized(&self) -> Self {
        let mut s = self.clone();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let avg = 0.5 * (self[(i, j)] + self[(j, i)]);
                s[(i, j)] = avg;
                s[(j, i)] = avg;
            }
        }
        s
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    /// `self += factor * other`. Panics on dimension mismatch.
    pub fn add_scaled(&mut self, factor: f64, other: &RealMatrix) {
        assert_eq!(self.dim, other.dim, "dimension mismatch in add_scaled");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += factor * b;
        }
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.dim, v.len(), "dimension mismatch in mul_vec");
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for RealMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Debug for RealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RealMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Standard matrix product.
pub fn mat_mul(a: &RealMatrix, b: &RealMatrix) -> Result<RealMatrix> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    let n = a.dim;
    let mut c = RealMatrix::zeros(n);
    for i in 0..n {
        for k in 0..n {
            let aik = a[(i, k)];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                c[(i, j)] += aik * b[(k, j)];
            }
        }
    }
    Ok(c)
}

/// Eigenvalues in ascending order with the matching orthonormal
/// eigenvectors stored as the columns of `vectors`.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: RealMatrix,
}

impl EigenSystem {
    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.vectors.column(i)
    }

    /// `V Λ Vᵀ`
    pub fn reconstruct(&self) -> RealMatrix {
        let n = self.values.len();
        let mut m = RealMatrix::zeros(n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let v = self.vector(k);
            m.add_scaled(lambda, &RealMatrix::outer(&v));
        }
        m
    }

    /// `max |VᵀV - I|`
    pub fn orthonormality_error(&self) -> f64 {
        let vt = self.vectors.transpose();
        let gram = mat_mul(&vt, &self.vectors).expect("square by construction");
        gram.max_abs_diff(&RealMatrix::identity(self.values.len()))
    }
}

fn check_symmetric(m: &RealMatrix) -> Result<()> {
    if m.data.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let asym = m.max_asymmetry();
    if asym > SYMMETRY_TOL * m.max_abs().max(1.0) {
        return Err(Error::NotSymmetric {
            max_asymmetry: asym,
        });
    }
    Ok(())
}

/// Cyclic Jacobi eigendecomposition of a real symmetric matrix.
///
/// Sweeps rotate every nonzero off-diagonal pair until the largest
/// off-diagonal magnitude is at most `1e-14 * max|m|`. Eigenvalues come
/// back ascending; equal values keep the order the rotations left them in.
/// Eigenvector signs are arbitrary.
pub fn jacobi_eigen(m: &RealMatrix) -> Result<EigenSystem> {
    check_symmetric(m)?;
    let n = m.dim;
    let mut a = m.symmetrized();
    let mut v = RealMatrix::identity(n);
    let scale = a.max_abs();

    if scale > 0.0 {
        let tol = JACOBI_TOL * scale;
        let mut converged = false;
        for _ in 0..JACOBI_MAX_SWEEPS {
            let off = (0..n)
                .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
                .fold(0.0_f64, |acc, (p, q)| acc.max(a[(p, q)].abs()));
            if off <= tol {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
        if !converged {
            return Err(Error::Inconsistent(format!(
                "Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps"
            )));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = RealMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, col)] = v[(r, src)];
        }
    }
    Ok(EigenSystem { values, vectors })
}

/// One Jacobi rotation annihilating `a[p][q]`, accumulated into `v`.
fn rotate(a: &mut RealMatrix, v: &mut RealMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let n = a.dim;
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    a[(p, p)] -= t * apq;
    a[(q, q)] += t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let g = a[(r, p)];
        let h = a[(r, q)];
        let rp = g - s * (h + g * tau);
        let rq = h + s * (g - h * tau);
        a[(r, p)] = rp;
        a[(p, r)] = rp;
        a[(r, q)] = rq;
        a[(q, r)] = rq;
    }
    for r in 0..n {
        let g = v[(r, p)];
        let h = v[(r, q)];
        v[(r, p)] = g - s * (h + g * tau);
        v[(r, q)] = h + s * (g - h * tau);
    }
}

/// Principal square root of a symmetric positive semidefinite matrix.
///
/// Eigenvalues in `[-1e-12, 0)` are clipped to zero; anything more
/// negative is reported as [`Error::NotPsd`].
pub fn psd_sqrt(m: &RealMatrix) -> Result<RealMatrix> {
    let eig = jacobi_eigen(m)?;
    if let Some(&worst) = eig.values.first() {
        if worst < -PSD_CLIP_TOL {
            return Err(Error::NotPsd { eigenvalue: worst });
        }
    }
    let n = m.dim;
    let mut root = RealMatrix::zeros(n);
    for (k, &lambda) in eig.values.iter().enumerate() {
        let w = lambda.max(0.0).sqrt();
        if w == 0.0 {
            continue;
        }
        root.add_scaled(w, &RealMatrix::outer(&eig.vector(k)));
    }
    Ok(root.symmetrized())
}
