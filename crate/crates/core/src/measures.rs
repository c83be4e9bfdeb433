//! Finite discrete measures on the real line and their Cauchy-Stieltjes
//! transforms.
//!
//! Empirical spectral distributions, spectral measures of Hermitian matrices
//! at a vector, and Monte Carlo averages of either are all represented by
//! [`DiscreteMeasure`]. Limits of such measures are only ever seen through
//! their transforms evaluated off the real axis.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Result, SpectraError};
use crate::linalg::{CMatrix, CVector, HermitianEigen};

/// A point `re + i·im` of the open upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfPlanePoint {
    re: f64,
    im: f64,
}

impl HalfPlanePoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if im > 0.0 && re.is_finite() && im.is_finite() {
            Ok(Self { re, im })
        } else {
            Err(SpectraError::NotUpperHalfPlane { re, im })
        }
    }

    /// Energy (real part).
    pub fn re(&self) -> f64 {
        self.re
    }

    /// Offset from the real axis.
    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// The same point with both coordinates multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.re * factor, self.im * factor)
    }
}

/// Finite nonnegative measure with finitely many atoms.
///
/// Atoms are kept strictly increasing; atoms closer than
/// `1e-12·max(1, |x|)` are merged on construction by adding their weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteMeasure {
    atoms: Vec<f64>,
    weights: Vec<f64>,
    total_mass: f64,
}

const MERGE_TOL: f64 = 1e-12;

impl DiscreteMeasure {
    pub fn new(atoms: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if atoms.len() != weights.len() {
            return Err(SpectraError::LengthMismatch {
                expected: atoms.len(),
                got: weights.len(),
            });
        }
        if let Some(w) = weights.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
            return Err(SpectraError::InvalidParameter(format!("weight {w} is not a finite nonnegative number")));
        }
        if let Some(x) = atoms.iter().find(|x| !x.is_finite()) {
            return Err(SpectraError::InvalidParameter(format!("atom {x} is not finite")));
        }
        let mut pairs: Vec<(f64, f64)> = atoms.into_iter().zip(weights).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut atoms: Vec<f64> = Vec::with_capacity(pairs.len());
        let mut weights: Vec<f64> = Vec::with_capacity(pairs.len());
        for (x, w) in pairs {
            match atoms.last() {
                Some(&last) if (x - last).abs() <= MERGE_TOL * last.abs().max(1.0) => {
                    *weights.last_mut().unwrap() += w;
                }
                _ => {
                    atoms.push(x);
                    weights.push(w);
                }
            }
        }
        let total_mass = weights.iter().sum();
        Ok(Self { atoms, weights, total_mass })
    }

    /// Unit point mass at `x`.
    pub fn dirac(x: f64) -> Self {
        Self { atoms: vec![x], weights: vec![1.0], total_mass: 1.0 }
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// `self·alpha + other·beta` for nonnegative coefficients.
    pub fn combine(&self, alpha: f64, other: &Self, beta: f64) -> Result<Self> {
        let atoms = self.atoms.iter().chain(&other.atoms).copied().collect();
        let weights = self
            .weights
            .iter()
            .map(|w| w * alpha)
            .chain(other.weights.iter().map(|w| w * beta))
            .collect();
        Self::new(atoms, weights)
    }
}

/// Empirical spectral distribution: mass 1/m at each of the m eigenvalues.
pub fn esd(eigenvalues: &[f64]) -> Result<DiscreteMeasure> {
    if eigenvalues.is_empty() {
        return Err(SpectraError::EmptySpectrum);
    }
    let m = eigenvalues.len() as f64;
    DiscreteMeasure::new(eigenvalues.to_vec(), vec![1.0 / m; eigenvalues.len()])
}

/// Spectral measure `Σ |<v_i,u>|² δ_{λ_i}` of a Hermitian matrix at `u`.
pub fn spectral_measure(a: &CMatrix, u: &CVector) -> Result<DiscreteMeasure> {
    if u.len() != a.nrows() {
        return Err(SpectraError::DimensionMismatch { expected: a.nrows(), got: u.len() });
    }
    let eig = HermitianEigen::new(a)?;
    spectral_measure_from_eigen(&eig, u)
}

/// Same as [`spectral_measure`] for an already computed eigendecomposition.
pub fn spectral_measure_from_eigen(eig: &HermitianEigen, u: &CVector) -> Result<DiscreteMeasure> {
    let weights = eig.spectral_weights(u)?;
    DiscreteMeasure::new(eig.values.clone(), weights)
}

/// `s(z; m) = Σ w_i / (x_i - z)`.
pub fn stieltjes_transform(m: &DiscreteMeasure, z: HalfPlanePoint) -> Complex64 {
    stieltjes_of_atoms(&m.atoms, &m.weights, z.z())
}

pub(crate) fn stieltjes_of_atoms(atoms: &[f64], weights: &[f64], z: Complex64) -> Complex64 {
    atoms
        .iter()
        .zip(weights)
        .map(|(&x, &w)| w / (x - z))
        .sum()
}

/// Stieltjes transform of the ESD of `eigenvalues`, without building a measure.
pub fn stieltjes_of_spectrum(eigenvalues: &[f64], z: Complex64) -> Complex64 {
    let m = eigenvalues.len() as f64;
    eigenvalues.iter().map(|&x| 1.0 / (x - z)).sum::<Complex64>() / m
}

/// One grid energy with its Poisson-smoothed density for each offset of the ladder.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InversionRow {
    pub energy: f64,
    pub densities: Vec<f64>,
}

/// Evaluates `π⁻¹·Im sampler(E + iδ)` for every grid energy and every δ of a
/// strictly decreasing ladder.
///
/// For a discrete measure this is the Poisson-smoothed density at scale δ;
/// stabilization as δ shrinks is left to the caller to judge.
pub fn invert_to_density<F>(sampler: F, energies: &[f64], delta_ladder: &[f64]) -> Result<Vec<InversionRow>>
where
    F: Fn(HalfPlanePoint) -> Complex64,
{
    if delta_ladder.is_empty()
        || delta_ladder.iter().any(|&d| !(d > 0.0))
        || delta_ladder.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(SpectraError::InvalidDeltaLadder);
    }
    energies
        .iter()
        .map(|&energy| {
            let densities = delta_ladder
                .iter()
                .map(|&delta| {
                    let s = sampler(HalfPlanePoint::new(energy, delta)?);
                    if !(s.re.is_finite() && s.im.is_finite()) {
                        return Err(SpectraError::NonFiniteSample { energy, delta });
                    }
                    Ok(s.im / std::f64::consts::PI)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(InversionRow { energy, densities })
        })
        .collect()
}

/// Quadratic Wasserstein distance between two equal-size empirical measures
/// via the quantile coupling.
pub fn wasserstein2(m1: &DiscreteMeasure, m2: &DiscreteMeasure) -> Result<f64> {
    let tol = 1e-9;
    if (m1.total_mass - 1.0).abs() > tol || (m2.total_mass - 1.0).abs() > tol {
        return Err(SpectraError::NotProbability(m1.total_mass, m2.total_mass));
    }
    let q1 = expand_empirical(m1);
    let q2 = expand_empirical(m2);
    if q1.len() != q2.len() {
        return Err(SpectraError::UnequalSizes(q1.len(), q2.len()));
    }
    Ok(wasserstein2_sorted(&q1, &q2))
}

/// W₂ between the ESDs of two equal-length sorted spectra.
pub fn wasserstein2_sorted(sorted1: &[f64], sorted2: &[f64]) -> f64 {
    debug_assert_eq!(sorted1.len(), sorted2.len());
    let m = sorted1.len() as f64;
    let sq: f64 = sorted1.iter().zip(sorted2).map(|(x, y)| (x - y).powi(2)).sum();
    (sq / m).sqrt()
}

/// Recovers the multiset of an empirical measure: the atom count m is the
/// smallest number making every weight a multiple of 1/m.
fn expand_empirical(m: &DiscreteMeasure) -> Vec<f64> {
    let min_w = m.weights.iter().copied().filter(|&w| w > 0.0).fold(f64::INFINITY, f64::min);
    let upper = (1.0 / min_w).round() as usize;
    let size = (1..=upper.max(1) * m.atoms.len().max(1))
        .find(|&size| {
            m.weights.iter().all(|&w| {
                let c = w * size as f64;
                (c - c.round()).abs() < 1e-6
            })
        })
        .unwrap_or(upper);
    let mut out = Vec::with_capacity(size);
    for (&x, &w) in m.atoms.iter().zip(&m.weights) {
        let count = (w * size as f64).round() as usize;
        out.extend(std::iter::repeat_n(x, count));
    }
    out
}
