//! Dense Hermitian eigendecomposition and small matrix helpers.
//!
//! Eigensolves go through nalgebra's Householder tridiagonalization followed
//! by implicit shifted QR on the tridiagonal form; dimension is capped so a
//! stray parameter cannot start an hour-long O(m³) solve.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Result, SpectraError};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;
pub type RMatrix = DMatrix<f64>;

/// Default cap on the dimension of dense eigensolves.
pub const DEFAULT_DENSE_CAP: usize = 4096;

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn to_complex(m: &RMatrix) -> CMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).norm()))
}

/// max |A - A*| over entries.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0_f64;
    for j in 0..n {
        for k in j..n {
            dev = dev.max((m[(j, k)] - m[(k, j)].conj()).norm());
        }
    }
    dev
}

pub fn ensure_hermitian(m: &CMatrix, tol: f64) -> Result<()> {
    if !m.is_square() {
        return Err(SpectraError::DimensionMismatch {
            expected: m.nrows(),
            got: m.ncols(),
        });
    }
    let dev = hermitian_deviation(m);
    if dev > tol * max_abs(m).max(1.0) {
        return Err(SpectraError::NotHermitian { deviation: dev });
    }
    Ok(())
}

fn check_cap(dim: usize, cap: usize) -> Result<()> {
    if dim > cap {
        Err(SpectraError::DenseCapExceeded { dim, cap })
    } else {
        Ok(())
    }
}

/// Eigenvalues of a real symmetric matrix, ascending.
pub fn symmetric_eigenvalues(m: &RMatrix, cap: usize) -> Result<Vec<f64>> {
    check_cap(m.nrows(), cap)?;
    let mut vals: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// Full eigendecomposition `A = V diag(values) V*` of a Hermitian matrix,
/// eigenvalues ascending, columns of `vectors` orthonormal.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn new(m: &CMatrix) -> Result<Self> {
        Self::with_cap(m, DEFAULT_DENSE_CAP)
    }

    pub fn with_cap(m: &CMatrix, cap: usize) -> Result<Self> {
        ensure_hermitian(m, 1e-12)?;
        check_cap(m.nrows(), cap)?;
        let eig = m.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..m.nrows()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = CMatrix::from_fn(m.nrows(), m.nrows(), |r, c| eig.eigenvectors[(r, order[c])]);
        Ok(Self { values, vectors })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// |<v_i, u>|² for every eigenvector v_i.
    pub fn spectral_weights(&self, u: &CVector) -> Result<Vec<f64>> {
        if u.len() != self.dim() {
            return Err(SpectraError::DimensionMismatch {
                expected: self.dim(),
                got: u.len(),
            });
        }
        let coeffs = self.vectors.ad_mul(u);
        Ok(coeffs.iter().map(|c| c.norm_sqr()).collect())
    }

    /// Solves `(A - z) x = rhs` through the stored eigenbasis.
    pub fn shifted_solve(&self, z: Complex64, rhs: &CVector) -> CVector {
        let mut coeffs = self.vectors.ad_mul(rhs);
        for (c, &lambda) in coeffs.iter_mut().zip(&self.values) {
            *c /= lambda - z;
        }
        &self.vectors * coeffs
    }
}

/// Dense complex solve via LU with partial pivoting.
pub fn solve(m: &CMatrix, rhs: &CMatrix) -> Result<CMatrix> {
    m.clone()
        .lu()
        .solve(rhs)
        .ok_or_else(|| SpectraError::SolveFailed("singular matrix in LU solve".into()))
}

pub fn inverse(m: &CMatrix) -> Result<CMatrix> {
    m.clone()
        .try_inverse()
        .ok_or_else(|| SpectraError::SolveFailed("singular matrix in inversion".into()))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &CMatrix) -> Result<f64> {
    let eig = HermitianEigen::new(m)?;
    Ok(eig.values[0])
}
