//! Spectral averaging for a linear one-parameter family of Hermitian
//! matrices `H(λ) = H(0) + λ·Ḣ` with `Ḣ ≥ c₀B²`.
//!
//! The Toeplitz family replaces the diagonal entries `d_j` (and `d_{2n-j}`)
//! of `D` by `λ` inside `P D P`; the bound under test controls
//! `∫ g(λ) <φ, B (H(λ) - E ± iδ)⁻¹ B φ> dλ` uniformly in `E` and `δ`, with
//! `g` the Gaussian density of the replaced coefficient.

mod bounds;
mod density;
mod pencil;
mod scalar;

pub use bounds::{
    compute_f, compute_f_tilde, epsilon_convergence, evaluate_point, verify_apriori_bound, verify_f_bounds,
    verify_spectral_averaging, AprioriPoint, AprioriReport, BoundCheck, FBoundsReport, FEvaluation, FValue,
    QuadratureConfig, SpectralAveragingReport, DEFAULT_EPS_LADDER,
};
pub use density::{gaussian_norms, GaussianDensity, NormTriple};
pub use pencil::{ResolventPencil, ShiftedPencil};
pub use scalar::{scalar_f_fourier, scalar_self_test, ScalarSelfTest};

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::SQRT_2;

use crate::ensemble::{conjugate_diagonal, coordinate_marker, unit_vector, CirculantSystem};
use crate::error::{Result, SpectraError};
use crate::linalg::{inverse, CMatrix, CVector, HermitianEigen};

/// Which rank-one `B_j = P e_k e_k* P` is used for an interior index `j`:
/// `k = j` or `k = 2n - j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BVariant {
    Primary,
    Mirror,
}

#[derive(Debug, Clone)]
struct Substitution {
    p: CMatrix,
    d: Vec<f64>,
    j: usize,
    marker: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct WegnerFamily {
    base: CMatrix,
    hdot: CMatrix,
    hdot_factor: CMatrix,
    b: CMatrix,
    c0: f64,
    phi: CVector,
    g: GaussianDensity,
    substitution: Option<Substitution>,
}

impl WegnerFamily {
    /// General linear family `H(λ) = base + λ·hdot`; `hdot` must be positive
    /// semidefinite and is factored as `V V*` internally.
    pub fn linear(base: CMatrix, hdot: CMatrix, b: CMatrix, c0: f64, phi: CVector, g_scale: f64) -> Result<Self> {
        let dim = base.nrows();
        for m in [&hdot, &b] {
            if m.shape() != base.shape() {
                return Err(SpectraError::DimensionMismatch { expected: dim, got: m.nrows() });
            }
        }
        if phi.len() != dim {
            return Err(SpectraError::DimensionMismatch { expected: dim, got: phi.len() });
        }
        if phi.norm() == 0.0 {
            return Err(SpectraError::ZeroVector);
        }
        if !(c0 > 0.0) {
            return Err(SpectraError::InvalidParameter(format!("c0 must be positive, got {c0}")));
        }
        let eig = HermitianEigen::new(&hdot)?;
        let top = eig.values.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        if eig.values[0] < -1e-10 * top.max(1.0) {
            return Err(SpectraError::InvalidParameter("derivative of the family is not positive semidefinite".into()));
        }
        let kept: Vec<usize> = (0..dim).filter(|&k| eig.values[k] > 1e-14 * top).collect();
        let hdot_factor = CMatrix::from_fn(dim, kept.len(), |r, c| eig.vectors[(r, kept[c])] * eig.values[kept[c]].sqrt());
        Ok(Self { base, hdot, hdot_factor, b, c0, phi, g: GaussianDensity::new(g_scale)?, substitution: None })
    }

    /// The family obtained by replacing `d_j` (and `d_{2n-j}` for interior
    /// `j`) with `λ` in `P D P`, with `B = P e_k e_k* P`, `c₀ = 2`, and `g` the
    /// density of `d_j`. `phi` defaults to `e_k`.
    pub fn toeplitz(system: &CirculantSystem, j: usize, variant: BVariant, phi: Option<CVector>) -> Result<Self> {
        let n = system.n();
        let dim = system.dim();
        let marker = coordinate_marker(n, j)?;
        let k = match (variant, marker.len()) {
            (BVariant::Primary, _) => j,
            (BVariant::Mirror, 2) => 2 * n - j,
            (BVariant::Mirror, _) => {
                return Err(SpectraError::InvalidParameter(format!("index {j} has no mirror coordinate")));
            }
        };
        let phi = phi.unwrap_or_else(|| unit_vector(dim, k));
        if phi.len() != dim {
            return Err(SpectraError::DimensionMismatch { expected: dim, got: phi.len() });
        }
        if phi.norm() == 0.0 {
            return Err(SpectraError::ZeroVector);
        }
        let p = system.dense_projection()?;
        let mut d0 = system.d().to_vec();
        for &m in &marker {
            d0[m] = 0.0;
        }
        let base = conjugate_diagonal(&p, &d0);
        let hdot_factor = CMatrix::from_fn(dim, marker.len(), |r, c| p[(r, marker[c])]);
        let hdot = &hdot_factor * hdot_factor.adjoint();
        let pk = p.column(k).into_owned();
        let b = &pk * pk.adjoint();
        let scale = if marker.len() == 1 { SQRT_2 } else { 1.0 };
        Ok(Self {
            base,
            hdot,
            hdot_factor,
            b,
            c0: 2.0,
            phi,
            g: GaussianDensity::new(scale)?,
            substitution: Some(Substitution { p, d: system.d().to_vec(), j, marker }),
        })
    }

    /// One-dimensional family `H(λ) = λ`, `B = 1`, `c₀ = 1`, `φ = 1`, standard normal `g`.
    pub fn scalar() -> Self {
        let one = CMatrix::identity(1, 1);
        Self::linear(CMatrix::zeros(1, 1), one.clone(), one, 1.0, CVector::from_element(1, Complex64::new(1.0, 0.0)), 1.0)
            .expect("scalar family is valid")
    }

    pub fn dim(&self) -> usize {
        self.base.nrows()
    }

    /// `H(λ)`. For the Toeplitz family the coefficients are substituted
    /// literally, so `H(d_j)` reproduces `P D P` exactly.
    pub fn hamiltonian(&self, lambda: f64) -> CMatrix {
        match &self.substitution {
            Some(s) => {
                let mut d = s.d.clone();
                for &m in &s.marker {
                    d[m] = lambda;
                }
                conjugate_diagonal(&s.p, &d)
            }
            None => &self.base + &self.hdot * Complex64::new(lambda, 0.0),
        }
    }

    /// `H(0)`.
    pub fn base(&self) -> &CMatrix {
        &self.base
    }

    /// `dH/dλ`, constant in `λ`.
    pub fn hdot(&self) -> &CMatrix {
        &self.hdot
    }

    /// `V` with `Ḣ = V V*`.
    pub fn hdot_factor(&self) -> &CMatrix {
        &self.hdot_factor
    }

    pub fn b(&self) -> &CMatrix {
        &self.b
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn phi(&self) -> &CVector {
        &self.phi
    }

    pub fn density(&self) -> &GaussianDensity {
        &self.g
    }

    /// Distinguished index `j` of the Toeplitz family.
    pub fn index(&self) -> Option<usize> {
        self.substitution.as_ref().map(|s| s.j)
    }

    /// The frozen value `d_j` at which `H` equals `P D P`.
    pub fn reference_lambda(&self) -> Option<f64> {
        self.substitution.as_ref().map(|s| s.d[s.j])
    }

    /// Smallest eigenvalue of `Ḣ - c₀B²`; nonnegative up to rounding when the
    /// family satisfies its positivity hypothesis.
    pub fn positivity_margin(&self) -> Result<f64> {
        let gap = &self.hdot - &self.b * &self.b * Complex64::new(self.c0, 0.0);
        let sym = (&gap + gap.adjoint()) * Complex64::new(0.5, 0.0);
        Ok(HermitianEigen::new(&sym)?.values[0])
    }

    fn shifted_operator(&self, lambda: f64, epsilon: f64, delta: f64, energy: f64) -> CMatrix {
        let dim = self.dim();
        let mut m = self.hamiltonian(lambda) + &self.hdot * Complex64::new(0.0, epsilon);
        let shift = Complex64::new(-energy, delta);
        for k in 0..dim {
            m[(k, k)] += shift;
        }
        m
    }
}

/// `build_family` of the operation list.
pub fn build_family(system: &CirculantSystem, j: usize, variant: BVariant, phi: Option<CVector>) -> Result<WegnerFamily> {
    WegnerFamily::toeplitz(system, j, variant, phi)
}

fn check_offsets(epsilon: f64, delta: f64) -> Result<()> {
    if !(epsilon >= 0.0) {
        return Err(SpectraError::InvalidParameter(format!("epsilon must be nonnegative, got {epsilon}")));
    }
    if !(delta > 0.0) {
        return Err(SpectraError::InvalidParameter(format!("delta must be positive, got {delta}")));
    }
    Ok(())
}

/// `R = (H(λ) - E + iδ + iε·Ḣ)⁻¹` by dense inversion.
pub fn regularized_resolvent(fam: &WegnerFamily, lambda: f64, epsilon: f64, delta: f64, energy: f64) -> Result<CMatrix> {
    check_offsets(epsilon, delta)?;
    inverse(&fam.shifted_operator(lambda, epsilon, delta, energy))
}

/// `K = B R B`.
pub fn kernel_k(fam: &WegnerFamily, lambda: f64, epsilon: f64, delta: f64, energy: f64) -> Result<CMatrix> {
    let r = regularized_resolvent(fam, lambda, epsilon, delta, energy)?;
    Ok(&fam.b * r * &fam.b)
}
