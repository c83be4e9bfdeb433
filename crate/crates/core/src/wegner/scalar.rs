use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::bounds::{
    compute_f, verify_apriori_bound, verify_f_bounds, verify_spectral_averaging, AprioriReport, FBoundsReport,
    QuadratureConfig, SpectralAveragingReport, DEFAULT_EPS_LADDER,
};
use super::{kernel_k, WegnerFamily};
use crate::error::{Result, SpectraError};
use crate::linalg::I;
use crate::quadrature::adaptive;

/// `F` for the scalar family with a Gaussian of scale `s`, from its Fourier
/// representation `-i ∫₀^∞ exp(-ηt - s²t²/2 - iEt) dt`, `η = δ + ε`.
///
/// The integrand is below `e^{-50}` past `t = 10/s`.
pub fn scalar_f_fourier(epsilon: f64, delta: f64, energy: f64, scale: f64) -> Result<Complex64> {
    let eta = delta + epsilon;
    if !(eta > 0.0) || !(scale > 0.0) {
        return Err(SpectraError::InvalidParameter("need delta + epsilon > 0 and scale > 0".into()));
    }
    let f = |t: f64| [Complex64::new(-eta * t - 0.5 * scale * scale * t * t, -energy * t).exp()];
    let r = adaptive(f, 0.0, 10.0 / scale, 64, 1e-14, 100_000)?;
    Ok(-I * r.value[0])
}

/// Analytic self-test of the scalar family `H(λ) = λ`, `B = 1`, `c₀ = 1`,
/// `φ = 1` with standard normal `g`.
#[derive(Debug, Clone, Serialize)]
pub struct ScalarSelfTest {
    /// Max deviation of `K` from `1/(λ - E + iδ + iε)`.
    pub kernel_error: f64,
    /// Max deviation of the a-priori chain from its closed form.
    pub apriori_closed_form_error: f64,
    pub apriori: AprioriReport,
    /// Max deviation of quadrature `F` from the Fourier oracle.
    pub fourier_error: f64,
    /// `|F(0, 1)|` at `E = 100`; about `0.01`.
    pub far_field: f64,
    /// `Im F(0, 1e-4)` at `E = 0` and its limit `-π g(0)`.
    pub poisson_value: f64,
    pub poisson_target: f64,
    /// Largest `|F|` over the bound checks, against `n₀ + n₁ + n₂`.
    pub sup_abs_f: f64,
    pub uniform_rhs: f64,
    pub bounds: FBoundsReport,
    pub spectral: SpectralAveragingReport,
    pub passed: bool,
}

const CLOSED_FORM_TOL: f64 = 1e-12;
const FOURIER_TOL: f64 = 1e-8;
const POISSON_TOL: f64 = 1e-3;

pub fn scalar_self_test(cfg: &QuadratureConfig) -> Result<ScalarSelfTest> {
    let fam = WegnerFamily::scalar();
    let params = [(0.3, 0.1, 0.2, -0.5), (2.0, 0.0, 1e-3, 2.0), (-1.0, 0.5, 0.05, 0.0), (0.0, 1.0, 0.5, 3.0)];
    let mut kernel_error = 0.0_f64;
    let mut apriori_closed_form_error = 0.0_f64;
    for &(lam, eps, delta, e) in &params {
        let k = kernel_k(&fam, lam, eps, delta, e)?[(0, 0)];
        let want = 1.0 / Complex64::new(lam - e, delta + eps);
        kernel_error = kernel_error.max((k - want).norm() / want.norm());
        let r = verify_apriori_bound(&fam, &[lam], eps, delta, e)?;
        let p = r.points[0];
        let den = (lam - e).powi(2) + (delta + eps).powi(2);
        let chain = [(p.k_phi_norm, den.sqrt().recip()), (p.neg_imag, (delta + eps) / den), (p.lower, eps / den)];
        for (got, exact) in chain {
            apriori_closed_form_error = apriori_closed_form_error.max((got - exact).abs() / exact.abs().max(1.0));
        }
    }
    let grid: Vec<f64> = (0..101).map(|i| -5.0 + 0.1 * i as f64).collect();
    let apriori = verify_apriori_bound(&fam, &grid, 0.1, 0.05, 0.3)?;

    let mut fourier_error = 0.0_f64;
    for &(eps, delta, e) in &[(0.0, 0.5, 0.0), (0.1, 0.05, 1.0), (0.01, 0.005, -2.0), (0.3, 0.2, 2.5)] {
        let f = compute_f(&fam, eps, delta, e, cfg)?.value();
        fourier_error = fourier_error.max((f - scalar_f_fourier(eps, delta, e, 1.0)?).norm());
    }
    let far_field = compute_f(&fam, 0.0, 1.0, 100.0, cfg)?.abs();
    let poisson_value = compute_f(&fam, 0.0, 1e-4, 0.0, cfg)?.im;
    let poisson_target = -PI / (2.0 * PI).sqrt();

    let deltas = [0.5, 0.05, 0.005];
    let energies = [-2.0, 0.0, 2.0];
    let bounds = verify_f_bounds(&fam, &DEFAULT_EPS_LADDER, &deltas, &energies, cfg)?;
    let spectral = verify_spectral_averaging(&fam, &energies, &deltas, cfg)?;
    let sup_abs_f = bounds.evaluations.iter().map(|e| e.f.abs()).fold(0.0, f64::max);
    let uniform_rhs = bounds.norms.sum() / fam.c0();

    let passed = kernel_error <= CLOSED_FORM_TOL
        && apriori_closed_form_error <= CLOSED_FORM_TOL
        && apriori.passed
        && fourier_error <= FOURIER_TOL
        && (far_field - 0.01).abs() <= 1e-4
        && (poisson_value - poisson_target).abs() <= POISSON_TOL
        && sup_abs_f <= uniform_rhs
        && bounds.passed
        && spectral.passed;
    Ok(ScalarSelfTest {
        kernel_error,
        apriori_closed_form_error,
        apriori,
        fourier_error,
        far_field,
        poisson_value,
        poisson_target,
        sup_abs_f,
        uniform_rhs,
        bounds,
        spectral,
        passed,
    })
}
