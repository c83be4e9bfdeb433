//! Machine-precision checks of the exact identities linking `T°`, its
//! circulant embedding and the conjugated operator `P D P`.
//!
//! Each check returns an [`IdentityReport`]; `passed` is set iff the measured
//! error does not exceed the tolerance. Measures are compared through their
//! Stieltjes transforms at fixed off-axis points rather than atom by atom.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::ensemble::{
    build_embedding, build_pdp, build_toeplitz, circulant_matrix, circulant_matvec, dft_matrix, standard_normals,
    unitary_dft, unitary_dft_adjoint, CirculantSystem, GaussianSequence, ToeplitzSample,
};
use crate::error::{Result, SpectraError};
use crate::linalg::{max_abs_diff, symmetric_eigenvalues, to_complex, CMatrix, CVector, HermitianEigen, DEFAULT_DENSE_CAP};
use crate::measures::{esd, stieltjes_of_spectrum, wasserstein2, HalfPlanePoint};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub n: usize,
    pub seed: u64,
    pub max_abs_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl IdentityReport {
    pub fn new(name: &str, n: usize, seed: u64, max_abs_error: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            n,
            seed,
            max_abs_error,
            tolerance,
            passed: max_abs_error <= tolerance,
        }
    }

    pub fn tagged(mut self, n: usize, seed: u64) -> Self {
        self.n = n;
        self.seed = seed;
        self
    }
}

/// Tolerances for the identity checks. `scaled` multiplies all of them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub embedding: f64,
    pub pdp_dense: f64,
    pub pdp_probe: f64,
    pub pdp_spectrum: f64,
    pub hypothesis: f64,
    pub spectral_equality: f64,
    pub stieltjes: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            embedding: 1e-12,
            pdp_dense: 1e-10,
            pdp_probe: 1e-8,
            pdp_spectrum: 1e-8,
            hypothesis: 1e-12,
            spectral_equality: 1e-9,
            stieltjes: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            embedding: self.embedding * factor,
            pdp_dense: self.pdp_dense * factor,
            pdp_probe: self.pdp_probe * factor,
            pdp_spectrum: self.pdp_spectrum * factor,
            hypothesis: self.hypothesis * factor,
            spectral_equality: self.spectral_equality * factor,
            stieltjes: self.stieltjes * factor,
        }
    }
}

/// Check configuration: tolerances, the largest `n` checked with dense
/// products, and the number of random probes used above it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityChecks {
    pub tol: Tolerances,
    pub dense_limit: usize,
    pub probes: usize,
    pub eigen_cap: usize,
}

impl Default for IdentityChecks {
    fn default() -> Self {
        Self { tol: Tolerances::default(), dense_limit: 512, probes: 30, eigen_cap: DEFAULT_DENSE_CAP }
    }
}

/// Radical inverse of `i` in `base` (Halton coordinate).
fn radical_inverse(mut i: usize, base: usize) -> f64 {
    let mut inv = 1.0 / base as f64;
    let mut out = 0.0;
    while i > 0 {
        out += (i % base) as f64 * inv;
        i /= base;
        inv /= base as f64;
    }
    out
}

/// `count` quasi-random points with `re ∈ [lo, hi]` and `im ∈ [0.05, 2]`
/// (log-uniform in the imaginary part).
pub fn quasi_random_points(count: usize, lo: f64, hi: f64) -> Vec<HalfPlanePoint> {
    let (im_lo, im_hi) = (0.05_f64.ln(), 2.0_f64.ln());
    (1..=count)
        .map(|i| {
            let re = lo + (hi - lo) * radical_inverse(i, 2);
            let im = (im_lo + (im_hi - im_lo) * radical_inverse(i, 3)).exp();
            HalfPlanePoint::new(re, im).expect("positive imaginary part")
        })
        .collect()
}

/// Twenty quasi-random points over `E ∈ [-3, 3]`.
pub fn default_z_grid() -> Vec<HalfPlanePoint> {
    quasi_random_points(20, -3.0, 3.0)
}

impl IdentityChecks {
    pub fn with_tolerance_scale(scale: f64) -> Self {
        Self { tol: Tolerances::default().scaled(scale), ..Self::default() }
    }

    /// `Q C Q` against `[[T°, 0], [0, 0]]`, with `C` rebuilt from `b`.
    pub fn embedding(&self, a: &GaussianSequence) -> IdentityReport {
        let n = a.n();
        let t = build_toeplitz(a, true).matrix();
        let b = build_embedding(a);
        let size = 2 * n;
        let err = if size <= 1024 {
            let c = circulant_matrix(&b);
            let q = crate::ensemble::corner_projector(n);
            let qcq = &q * c * &q;
            let mut target = crate::linalg::RMatrix::zeros(size, size);
            target.view_mut((0, 0), (n, n)).copy_from(&t);
            (qcq - target).amax()
        } else {
            // Q zeroes everything outside the top-left block exactly
            let mut err = 0.0_f64;
            for i in 0..n {
                for j in 0..n {
                    err = err.max((b[(j + size - i) % size] - t[(i, j)]).abs());
                }
            }
            err
        };
        IdentityReport::new("embedding", n, a.seed(), err, self.tol.embedding)
    }

    /// `(2n)^{-1/2} U* Q C Q U` against `P D P`: dense products up to
    /// `dense_limit`, random FFT probes above.
    pub fn pdp(&self, system: &CirculantSystem, sample: &ToeplitzSample) -> Result<IdentityReport> {
        let n = system.n();
        let seed = sample.sequence().seed();
        if n <= self.dense_limit {
            let size = 2 * n;
            let u = dft_matrix(size);
            let t = to_complex(&build_toeplitz(sample.sequence(), true).matrix());
            // Q C Q U keeps only the first n rows of U
            let top = u.rows(0, n).into_owned();
            let qcqu = &t * &top;
            let left = top.adjoint() * qcqu / Complex64::new((size as f64).sqrt(), 0.0);
            let right = build_pdp(system)?;
            Ok(IdentityReport::new("pdp_conjugation", n, seed, max_abs_diff(&left, &right), self.tol.pdp_dense))
        } else {
            let err = self.pdp_probe_error(system, sample)?;
            Ok(IdentityReport::new("pdp_conjugation", n, seed, err, self.tol.pdp_probe))
        }
    }

    fn pdp_probe_error(&self, system: &CirculantSystem, sample: &ToeplitzSample) -> Result<f64> {
        let n = system.n();
        let size = 2 * n;
        let b = build_embedding(sample.sequence());
        let norm = Complex64::new(1.0 / (size as f64).sqrt(), 0.0);
        let mut err = 0.0_f64;
        for probe in 0..self.probes {
            let raw = standard_normals(2 * size, sample.sequence().seed(), 1 << 32 | probe as u64);
            let x: Vec<Complex64> = raw.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
            let mut y = unitary_dft(&x);
            y[n..].iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
            let mut y = circulant_matvec(&b, &y)?;
            y[n..].iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
            let left: Vec<Complex64> = unitary_dft_adjoint(&y).into_iter().map(|v| v * norm).collect();
            let right = system.apply_pdp(&x)?;
            err = left.iter().zip(&right).fold(err, |acc, (l, r)| acc.max((l - r).norm()));
        }
        Ok(err)
    }

    /// Spectrum of `P D P` against `{eig((2n)^{-1/2} T°)} ∪ {0 × n}`.
    pub fn pdp_spectrum(&self, system: &CirculantSystem, sample: &ToeplitzSample) -> Result<IdentityReport> {
        let n = system.n();
        let pdp = build_pdp(system)?;
        let got = HermitianEigen::with_cap(&pdp, self.eigen_cap)?.values;
        let scaled = build_toeplitz(sample.sequence(), true).matrix() / ((2 * n) as f64).sqrt();
        let mut want = symmetric_eigenvalues(&scaled, self.eigen_cap)?;
        want.extend(std::iter::repeat_n(0.0, n));
        want.sort_by(f64::total_cmp);
        let err = got.iter().zip(&want).fold(0.0_f64, |acc, (g, w)| acc.max((g - w).abs()));
        Ok(IdentityReport::new("pdp_spectrum", n, sample.sequence().seed(), err, self.tol.pdp_spectrum))
    }

    /// `Σ σ(A,u_i)` against `Σ σ(A,v_j)` given `Σ u u* = Σ v v*`.
    pub fn spectral_equality(&self, a: &CMatrix, us: &[CVector], vs: &[CVector]) -> Result<IdentityReport> {
        let dim = a.nrows();
        if let Some(bad) = us.iter().chain(vs).find(|u| u.len() != dim) {
            return Err(SpectraError::DimensionMismatch { expected: dim, got: bad.len() });
        }
        let gram = |vecs: &[CVector]| vecs.iter().fold(CMatrix::zeros(dim, dim), |acc, u| acc + u * u.adjoint());
        let (gu, gv) = (gram(us), gram(vs));
        let scale = crate::linalg::max_abs(&gu).max(crate::linalg::max_abs(&gv)).max(1.0);
        let gap = max_abs_diff(&gu, &gv);
        if gap > self.tol.hypothesis * scale {
            return Err(SpectraError::HypothesisViolated(gap));
        }

        let eig = HermitianEigen::with_cap(a, self.eigen_cap)?;
        let summed_weights = |vecs: &[CVector]| -> Vec<f64> {
            let coeffs: Vec<CVector> = vecs.iter().map(|u| eig.vectors.ad_mul(u)).collect();
            (0..dim).map(|k| coeffs.iter().map(|c| c[k].norm_sqr()).sum()).collect()
        };
        let (wu, wv) = (summed_weights(us), summed_weights(vs));
        let lo = eig.values.first().copied().unwrap_or(0.0) - 1.0;
        let hi = eig.values.last().copied().unwrap_or(0.0) + 1.0;
        let err = quasi_random_points(20, lo, hi).iter().fold(0.0_f64, |acc, p| {
            let z = p.z();
            let su: Complex64 = eig.values.iter().zip(&wu).map(|(&x, &w)| w / (x - z)).sum();
            let sv: Complex64 = eig.values.iter().zip(&wv).map(|(&x, &w)| w / (x - z)).sum();
            acc.max((su - sv).norm())
        });
        Ok(IdentityReport::new("spectral_equality", dim, 0, err, self.tol.spectral_equality))
    }

    /// The basis change used for the projected Stieltjes identity:
    /// `{U* e_j}_{j<n}` and `{P e_j}_{j<2n}` have equal Gram sums.
    pub fn projection_basis_change(&self, system: &CirculantSystem) -> Result<IdentityReport> {
        let n = system.n();
        let size = 2 * n;
        let pdp = build_pdp(system)?;
        let p = system.dense_projection()?;
        let u = dft_matrix(size);
        let us: Vec<CVector> = (0..n).map(|j| u.row(j).adjoint()).collect();
        let vs: Vec<CVector> = (0..size).map(|j| p.column(j).into_owned()).collect();
        Ok(self.spectral_equality(&pdp, &us, &vs)?.tagged(n, 0))
    }

    /// Per-realization identity between the Stieltjes transform of the ESD of
    /// `n^{-1/2} T°` and the projected resolvent trace of `P D P`:
    ///
    /// `s(z; μ(n^{-1/2}T°)) = n⁻¹ Σ_{j<2n} <P e_j, (√2·PDP - z)⁻¹ P e_j>`.
    pub fn toeplitz_stieltjes(
        &self,
        sample: &ToeplitzSample,
        system: &CirculantSystem,
        z_grid: &[HalfPlanePoint],
    ) -> Result<IdentityReport> {
        let n = sample.n();
        let eigs = symmetric_eigenvalues(&build_toeplitz(sample.sequence(), true).scaled_matrix(), self.eigen_cap)?;
        let projected = ProjectedResolvent::new(system, self.eigen_cap)?;
        let err = z_grid.iter().fold(0.0_f64, |acc, p| {
            let left = stieltjes_of_spectrum(&eigs, p.z());
            acc.max((left - projected.stieltjes(p.z())).norm())
        });
        Ok(IdentityReport::new("toeplitz_stieltjes", n, sample.sequence().seed(), err, self.tol.stieltjes))
    }

    /// Squared W₂ distance between the ESDs of `n^{-1/2}T` and `n^{-1/2}T°`
    /// against `(√2-1)² a₀² / n`.
    ///
    /// The two matrices differ by a multiple of the identity, so the bound is
    /// attained; the tolerance only absorbs eigensolver rounding.
    pub fn hoffman_wielandt(&self, a: &GaussianSequence) -> Result<IdentityReport> {
        let n = a.n();
        let plain = symmetric_eigenvalues(&build_toeplitz(a, false).scaled_matrix(), self.eigen_cap)?;
        let modified = symmetric_eigenvalues(&build_toeplitz(a, true).scaled_matrix(), self.eigen_cap)?;
        let w2 = wasserstein2(&esd(&plain)?, &esd(&modified)?)?;
        let bound = hoffman_wielandt_bound(a);
        let radius = plain.iter().chain(&modified).fold(1.0_f64, |acc, x| acc.max(x.abs()));
        let rounding = 1e-12 * radius;
        let tolerance = (bound.sqrt() + rounding).powi(2);
        Ok(IdentityReport::new("hoffman_wielandt", n, a.seed(), w2 * w2, tolerance))
    }

    /// The five checks run by `verify` for one `(n, seed)`.
    pub fn run_all(&self, n: usize, seed: u64) -> Result<Vec<IdentityReport>> {
        let a = GaussianSequence::sample(n, seed)?;
        let sample = build_toeplitz(&a, true);
        let system = CirculantSystem::new(&a)?;
        Ok(vec![
            self.embedding(&a),
            self.pdp(&system, &sample)?,
            self.projection_basis_change(&system)?.tagged(n, seed),
            self.toeplitz_stieltjes(&sample, &system, &default_z_grid())?,
            self.hoffman_wielandt(&a)?,
        ])
    }

    /// [`run_all`](Self::run_all) over every `(n, seed)`, results ordered by
    /// `n` then seed regardless of scheduling.
    pub fn run_grid(&self, ns: &[usize], seeds: &[u64]) -> Result<Vec<IdentityReport>> {
        let keys: Vec<(usize, u64)> = ns.iter().flat_map(|&n| seeds.iter().map(move |&s| (n, s))).collect();
        let per_key: Vec<Result<Vec<IdentityReport>>> = keys.par_iter().map(|&(n, s)| self.run_all(n, s)).collect();
        let mut out = Vec::new();
        for reports in per_key {
            out.extend(reports?);
        }
        Ok(out)
    }
}

/// `(√2 - 1)² a₀² / n`.
pub fn hoffman_wielandt_bound(a: &GaussianSequence) -> f64 {
    (SQRT_2 - 1.0).powi(2) * a.coefficients()[0].powi(2) / a.n() as f64
}

/// Eigendecomposition of `P D P` with the projected weights
/// `w_k = Σ_j |<P e_j, v_k>|²`, reusable across many `z`.
#[derive(Debug, Clone)]
pub struct ProjectedResolvent {
    n: usize,
    values: Vec<f64>,
    weights: Vec<f64>,
}

impl ProjectedResolvent {
    pub fn new(system: &CirculantSystem, cap: usize) -> Result<Self> {
        let pdp = build_pdp(system)?;
        let eig = HermitianEigen::with_cap(&pdp, cap)?;
        let p = system.dense_projection()?;
        // column k of P V holds <P e_j, v_k> over j
        let pv = &p * &eig.vectors;
        let weights = pv.column_iter().map(|c| c.norm_squared()).collect();
        Ok(Self { n: system.n(), values: eig.values, weights })
    }

    /// Eigenvalues of `P D P`, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `n⁻¹ Σ_{j<2n} <P e_j, (√2·PDP - z)⁻¹ P e_j>`.
    pub fn stieltjes(&self, z: Complex64) -> Complex64 {
        let sum: Complex64 = self.values.iter().zip(&self.weights).map(|(&x, &w)| w / (SQRT_2 * x - z)).sum();
        sum / self.n as f64
    }

    /// `Σ_{j<2n} <P e_j, (PDP - z)⁻¹ P e_j>` without any prefactor.
    pub fn trace(&self, z: Complex64) -> Complex64 {
        self.values.iter().zip(&self.weights).map(|(&x, &w)| w / (x - z)).sum()
    }
}

pub fn check_embedding_identity(a: &GaussianSequence) -> IdentityReport {
    IdentityChecks::default().embedding(a)
}

pub fn check_pdp_identity(system: &CirculantSystem, sample: &ToeplitzSample) -> Result<IdentityReport> {
    IdentityChecks::default().pdp(system, sample)
}

pub fn check_spectral_equality(a: &CMatrix, us: &[CVector], vs: &[CVector]) -> Result<IdentityReport> {
    IdentityChecks::default().spectral_equality(a, us, vs)
}

pub fn check_toeplitz_stieltjes_identity(
    sample: &ToeplitzSample,
    system: &CirculantSystem,
    z_grid: &[HalfPlanePoint],
) -> Result<IdentityReport> {
    IdentityChecks::default().toeplitz_stieltjes(sample, system, z_grid)
}

pub fn check_hoffman_wielandt(a: &GaussianSequence) -> Result<IdentityReport> {
    IdentityChecks::default().hoffman_wielandt(a)
}
