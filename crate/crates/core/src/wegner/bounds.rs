use num_complex::Complex64;
use serde::Serialize;

use super::pencil::{ResolventPencil, ShiftedPencil};
use super::{kernel_k, NormTriple, WegnerFamily};
use crate::error::{Result, SpectraError};
use crate::linalg::I;
use crate::quadrature::{adaptive, NODES_PER_PANEL};

/// Default decreasing ε values in `(0, 1]`; the anchor `ε = 1` is always
/// evaluated in addition.
pub const DEFAULT_EPS_LADDER: [f64; 7] = [0.5, 0.1, 0.03, 0.01, 0.003, 0.001, 0.0001];

/// Multiplicative slack on every right-hand side.
const SLACK: f64 = 1e-6;
const APRIORI_SLACK: f64 = 1e-9;
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// λ-quadrature over `[-L·s, L·s]` for the Gaussian density of scale `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureConfig {
    /// `L`, in standard deviations of `g`.
    pub half_width: f64,
    /// Minimum number of integrand evaluations; sets the initial panel count.
    pub min_nodes: usize,
    /// Absolute error target, scaled by `max(1, ‖Bφ‖²/δ)`.
    pub abs_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { half_width: 10.0, min_nodes: 2000, abs_tol: 1e-10, max_panels: 400_000 }
    }
}

impl QuadratureConfig {
    pub fn with_nodes(min_nodes: usize) -> Self {
        Self { min_nodes, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.half_width >= 8.0) || !self.half_width.is_finite() {
            return Err(SpectraError::InvalidParameter(format!("half width must be at least 8 sd, got {}", self.half_width)));
        }
        if self.min_nodes < 2000 {
            return Err(SpectraError::InvalidParameter(format!("at least 2000 nodes required, got {}", self.min_nodes)));
        }
        if !(self.abs_tol > 0.0) {
            return Err(SpectraError::InvalidParameter(format!("tolerance must be positive, got {}", self.abs_tol)));
        }
        if self.max_panels * NODES_PER_PANEL < self.min_nodes {
            return Err(SpectraError::InvalidParameter("panel cap below the node count".into()));
        }
        Ok(())
    }

    fn initial_panels(&self) -> usize {
        self.min_nodes.div_ceil(NODES_PER_PANEL)
    }
}

/// A complex quantity with its numerical error budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FValue {
    pub re: f64,
    pub im: f64,
    pub error: f64,
}

impl FValue {
    fn new(z: Complex64, error: f64) -> Self {
        Self { re: z.re, im: z.im, error }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn abs(&self) -> f64 {
        self.value().norm()
    }
}

/// `F`, `F̃` and `dF/dε` at one `(ε, δ, E)`, all on one adaptive mesh.
#[derive(Debug, Clone, Serialize)]
pub struct FEvaluation {
    pub epsilon: f64,
    pub delta: f64,
    pub energy: f64,
    /// Central-difference step; zero when `ε = 0`.
    pub step: f64,
    pub f: FValue,
    /// `∫ g′(λ) <φ, K φ> dλ`.
    pub f_tilde: FValue,
    /// Central difference with step `step`; absent when `ε = 0`.
    pub derivative: Option<FValue>,
    /// `-i ∫ g <Bφ, R Ḣ R Bφ> dλ`.
    pub derivative_analytic: FValue,
    pub nodes: usize,
}

/// Shared per-family data: norms, `‖φ‖²` and tail constants.
struct Setup<'a> {
    fam: &'a WegnerFamily,
    cfg: QuadratureConfig,
    bphi_sq: f64,
    hdot_norm: f64,
}

impl<'a> Setup<'a> {
    fn new(fam: &'a WegnerFamily, cfg: &QuadratureConfig) -> Result<Self> {
        cfg.validate()?;
        let bphi_sq = (fam.b() * fam.phi()).norm_squared();
        let hdot_norm = fam.hdot_factor().norm_squared();
        Ok(Self { fam, cfg: *cfg, bphi_sq, hdot_norm })
    }

    fn evaluate(&self, sp: &ShiftedPencil, epsilon: f64, delta: f64, energy: f64) -> Result<FEvaluation> {
        check_point(epsilon, delta, energy)?;
        let g = self.fam.density();
        let l = self.cfg.half_width * g.scale();
        let h = if epsilon > 0.0 { (epsilon / 10.0).min(1e-3) } else { 0.0 };
        let shifts = [epsilon + h, epsilon - h, epsilon + 0.5 * h, epsilon - 0.5 * h];
        let integrand = |x: f64| {
            let gv = g.value(x);
            let (form, deriv) = sp.form_and_derivative(Complex64::new(x, epsilon));
            let mut out = [ZERO; 7];
            out[0] = form * gv;
            out[1] = form * g.derivative(x);
            if h > 0.0 {
                for (c, &e) in shifts.iter().enumerate() {
                    out[2 + c] = sp.form(Complex64::new(x, e)) * gv;
                }
            }
            out[6] = deriv * gv;
            out
        };
        let tol = self.cfg.abs_tol * (self.bphi_sq / delta).max(1.0);
        let r = adaptive(integrand, -l, l, self.cfg.initial_panels(), tol, self.cfg.max_panels)?;
        let e = r.error;
        // |<Bφ, R Bφ>| ≤ ‖Bφ‖²/δ and |<Bφ, R Ḣ R Bφ>| ≤ ‖Bφ‖²‖Ḣ‖/δ²
        let tail = g.tail_mass(self.cfg.half_width) * self.bphi_sq / delta;
        let tail_tilde = g.derivative_tail(self.cfg.half_width) * self.bphi_sq / delta;
        let tail_deriv = tail * self.hdot_norm / delta;
        let v = r.value;
        let derivative = (h > 0.0).then(|| {
            let d_h = (v[2] - v[3]) / (2.0 * h);
            let d_half = (v[4] - v[5]) / h;
            // Richardson: the O(h²) error of d_h is 4/3·|d_h - d_half|; doubled
            let budget = 3.0 * (e + tail) / h + 2.0 * (d_h - d_half).norm();
            FValue::new(d_h, budget)
        });
        Ok(FEvaluation {
            epsilon,
            delta,
            energy,
            step: h,
            f: FValue::new(v[0], e + tail),
            f_tilde: FValue::new(v[1], e + tail_tilde),
            derivative,
            derivative_analytic: FValue::new(-I * v[6], e + tail_deriv),
            nodes: r.nodes(),
        })
    }
}

fn check_point(epsilon: f64, delta: f64, energy: f64) -> Result<()> {
    if !(epsilon >= 0.0) || !epsilon.is_finite() {
        return Err(SpectraError::InvalidParameter(format!("epsilon must be nonnegative, got {epsilon}")));
    }
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(SpectraError::InvalidParameter(format!("delta must be positive, got {delta}")));
    }
    if !energy.is_finite() {
        return Err(SpectraError::InvalidParameter(format!("energy must be finite, got {energy}")));
    }
    Ok(())
}

fn check_ladder(ladder: &[f64]) -> Result<()> {
    if ladder.is_empty() {
        return Err(SpectraError::InvalidParameter("empty epsilon ladder".into()));
    }
    if ladder.iter().any(|&e| !(e > 0.0 && e <= 1.0)) {
        return Err(SpectraError::InvalidParameter("epsilon ladder must lie in (0, 1]".into()));
    }
    if ladder.windows(2).any(|w| w[1] >= w[0]) {
        return Err(SpectraError::InvalidParameter("epsilon ladder must be strictly decreasing".into()));
    }
    Ok(())
}

fn check_nonempty(name: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(SpectraError::InvalidParameter(format!("empty {name} list")));
    }
    Ok(())
}

/// All quantities at one point, building the pencil on the fly.
pub fn evaluate_point(fam: &WegnerFamily, epsilon: f64, delta: f64, energy: f64, cfg: &QuadratureConfig) -> Result<FEvaluation> {
    let setup = Setup::new(fam, cfg)?;
    check_point(epsilon, delta, energy)?;
    let sp = ResolventPencil::new(fam)?.at(energy, delta);
    setup.evaluate(&sp, epsilon, delta, energy)
}

/// `F(ε, δ) = ∫ g(λ) <φ, K(λ, ε, δ) φ> dλ` at energy `E`.
pub fn compute_f(fam: &WegnerFamily, epsilon: f64, delta: f64, energy: f64, cfg: &QuadratureConfig) -> Result<FValue> {
    Ok(evaluate_point(fam, epsilon, delta, energy, cfg)?.f)
}

/// `F̃(ε, δ) = ∫ g′(λ) <φ, K(λ, ε, δ) φ> dλ`.
pub fn compute_f_tilde(fam: &WegnerFamily, epsilon: f64, delta: f64, energy: f64, cfg: &QuadratureConfig) -> Result<FValue> {
    Ok(evaluate_point(fam, epsilon, delta, energy, cfg)?.f_tilde)
}

/// One inequality `lhs ≤ rhs·(1 + 1e-6) + budget`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck {
    pub bound: String,
    pub epsilon: f64,
    pub delta: f64,
    pub energy: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub budget: f64,
    pub passed: bool,
}

impl BoundCheck {
    fn new(bound: &str, ev: &FEvaluation, lhs: f64, rhs: f64, budget: f64) -> Self {
        let passed = lhs <= rhs * (1.0 + SLACK) + budget;
        Self { bound: bound.to_string(), epsilon: ev.epsilon, delta: ev.delta, energy: ev.energy, lhs, rhs, budget, passed }
    }

    /// `rhs·(1 + slack) + budget - lhs`.
    pub fn margin(&self) -> f64 {
        self.rhs * (1.0 + SLACK) + self.budget - self.lhs
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FBoundsReport {
    pub norms: NormTriple,
    pub c0: f64,
    pub phi_norm_sq: f64,
    pub evaluations: Vec<FEvaluation>,
    pub checks: Vec<BoundCheck>,
    pub violations: usize,
    pub passed: bool,
}

impl FBoundsReport {
    pub fn failures(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn max_nodes(&self) -> usize {
        self.evaluations.iter().map(|e| e.nodes).max().unwrap_or(0)
    }
}

/// Every bound on `F`, `dF/dε` and `F̃` over the ladder, for each `(δ, E)`.
///
/// With `ν = ‖φ‖²` and `(n₀, n₁, n₂)` the norm triple of `g`:
/// `|F| ≤ ν n₀/(εc₀)`, `|dF/dε| ≤ ν n₁/(εc₀)`, `|F| ≤ ν(n₁|ln ε| + n₀)/c₀`,
/// `|F̃|, |dF/dε| ≤ ν(n₂|ln ε| + n₁)/c₀`, and `|F| ≤ ν(n₀ + n₁ + n₂)/c₀`;
/// at `ε = 1`, `|F| ≤ ν n₀/c₀`. Also `Im F ≤ 0` and agreement of the finite
/// difference with the analytic derivative.
pub fn verify_f_bounds(
    fam: &WegnerFamily,
    eps_ladder: &[f64],
    deltas: &[f64],
    energies: &[f64],
    cfg: &QuadratureConfig,
) -> Result<FBoundsReport> {
    check_ladder(eps_ladder)?;
    check_nonempty("delta", deltas)?;
    check_nonempty("energy", energies)?;
    let setup = Setup::new(fam, cfg)?;
    let pencil = ResolventPencil::new(fam)?;
    let nt = fam.density().norms();
    let c0 = fam.c0();
    let nu = fam.phi().norm_squared();
    let mut evaluations = Vec::new();
    let mut checks = Vec::new();
    for &delta in deltas {
        for &energy in energies {
            check_point(0.0, delta, energy)?;
            let sp = pencil.at(energy, delta);
            let anchor = setup.evaluate(&sp, 1.0, delta, energy)?;
            checks.push(BoundCheck::new("anchor", &anchor, anchor.f.abs(), nu * nt.g / c0, anchor.f.error));
            let mut points = vec![anchor];
            for &eps in eps_ladder.iter().filter(|&&e| e < 1.0) {
                points.push(setup.evaluate(&sp, eps, delta, energy)?);
            }
            for ev in &points {
                let eps = ev.epsilon;
                let log = eps.ln().abs();
                let f = ev.f.abs();
                let fe = ev.f.error;
                let d = ev.derivative.expect("positive epsilon has a difference quotient");
                checks.push(BoundCheck::new("inverse_eps", ev, f, nu * nt.g / (eps * c0), fe));
                checks.push(BoundCheck::new("derivative_inverse_eps", ev, d.abs(), nu * nt.dg / (eps * c0), d.error));
                checks.push(BoundCheck::new("log_eps", ev, f, nu * (nt.dg * log + nt.g) / c0, fe));
                let second = nu * (nt.d2g * log + nt.dg) / c0;
                checks.push(BoundCheck::new("tilde_log_eps", ev, ev.f_tilde.abs(), second, ev.f_tilde.error));
                checks.push(BoundCheck::new("derivative_log_eps", ev, d.abs(), second, d.error));
                checks.push(BoundCheck::new("uniform", ev, f, nu * nt.sum() / c0, fe));
                checks.push(BoundCheck::new("imaginary_sign", ev, ev.f.im, 0.0, fe));
                let gap = (d.value() - ev.derivative_analytic.value()).norm();
                checks.push(BoundCheck::new("derivative_consistency", ev, gap, 0.0, d.error + ev.derivative_analytic.error));
            }
            evaluations.extend(points);
        }
    }
    let violations = checks.iter().filter(|c| !c.passed).count();
    Ok(FBoundsReport { norms: nt, c0, phi_norm_sq: nu, evaluations, checks, violations, passed: violations == 0 })
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralAveragingReport {
    pub norms: NormTriple,
    pub c0: f64,
    pub phi_norm_sq: f64,
    /// `ν(n₀ + n₁ + n₂)/c₀`.
    pub rhs: f64,
    /// `∫ g <φ, B(H_λ - E - iδ)⁻¹ Bφ> dλ` for each `(δ, E)`, in check order.
    pub values: Vec<FValue>,
    pub checks: Vec<BoundCheck>,
    pub violations: usize,
    pub passed: bool,
}

/// `|∫ g <φ, B(H_λ - E - iδ)⁻¹ Bφ> dλ| ≤ ν(n₀ + n₁ + n₂)/c₀`.
///
/// The resolvent with `-iδ` is the adjoint of the one with `+iδ`, so the
/// integral is the complex conjugate of `F(0, δ)` and has the same modulus.
pub fn verify_spectral_averaging(
    fam: &WegnerFamily,
    energies: &[f64],
    deltas: &[f64],
    cfg: &QuadratureConfig,
) -> Result<SpectralAveragingReport> {
    check_nonempty("delta", deltas)?;
    check_nonempty("energy", energies)?;
    let setup = Setup::new(fam, cfg)?;
    let pencil = ResolventPencil::new(fam)?;
    let nt = fam.density().norms();
    let c0 = fam.c0();
    let nu = fam.phi().norm_squared();
    let rhs = nu * nt.sum() / c0;
    let mut values = Vec::new();
    let mut checks = Vec::new();
    for &delta in deltas {
        for &energy in energies {
            check_point(0.0, delta, energy)?;
            let ev = setup.evaluate(&pencil.at(energy, delta), 0.0, delta, energy)?;
            let value = FValue::new(ev.f.value().conj(), ev.f.error);
            checks.push(BoundCheck::new("spectral_averaging", &ev, value.abs(), rhs, value.error));
            values.push(value);
        }
    }
    let violations = checks.iter().filter(|c| !c.passed).count();
    Ok(SpectralAveragingReport { norms: nt, c0, phi_norm_sq: nu, rhs, values, checks, violations, passed: violations == 0 })
}

/// `‖Kφ‖ ≥ -Im<φ, Kφ> ≥ c₀ε‖Kφ‖²` at one `λ`, with `‖φ‖ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AprioriPoint {
    pub lambda: f64,
    pub k_phi_norm: f64,
    pub neg_imag: f64,
    pub lower: f64,
    /// `‖Kφ‖ + Im<φ, Kφ>`.
    pub upper_margin: f64,
    /// `-Im<φ, Kφ> - c₀ε‖Kφ‖²`.
    pub lower_margin: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AprioriReport {
    pub epsilon: f64,
    pub delta: f64,
    pub energy: f64,
    pub points: Vec<AprioriPoint>,
    pub violations: usize,
    pub min_upper_margin: f64,
    pub min_lower_margin: f64,
    pub passed: bool,
}

/// The a-priori inequality chain on `λ_grid` by dense solves, with `φ`
/// normalized and slack `1e-9·max(1, ‖Kφ‖)`.
pub fn verify_apriori_bound(fam: &WegnerFamily, lambda_grid: &[f64], epsilon: f64, delta: f64, energy: f64) -> Result<AprioriReport> {
    check_point(epsilon, delta, energy)?;
    let phi = fam.phi().unscale(fam.phi().norm());
    let mut points = Vec::with_capacity(lambda_grid.len());
    for &lambda in lambda_grid {
        let k = kernel_k(fam, lambda, epsilon, delta, energy)?;
        let kphi = &k * &phi;
        let k_phi_norm = kphi.norm();
        let neg_imag = -phi.dotc(&kphi).im;
        let lower = fam.c0() * epsilon * k_phi_norm * k_phi_norm;
        let upper_margin = k_phi_norm - neg_imag;
        let lower_margin = neg_imag - lower;
        let slack = APRIORI_SLACK * k_phi_norm.max(1.0);
        let passed = upper_margin >= -slack && lower_margin >= -slack;
        points.push(AprioriPoint { lambda, k_phi_norm, neg_imag, lower, upper_margin, lower_margin, passed });
    }
    let violations = points.iter().filter(|p| !p.passed).count();
    let min_upper_margin = points.iter().map(|p| p.upper_margin).fold(f64::INFINITY, f64::min);
    let min_lower_margin = points.iter().map(|p| p.lower_margin).fold(f64::INFINITY, f64::min);
    Ok(AprioriReport { epsilon, delta, energy, points, violations, min_upper_margin, min_lower_margin, passed: violations == 0 })
}

/// `(ε, |F(ε, δ) - F(0, δ)|)` along the ladder.
pub fn epsilon_convergence(fam: &WegnerFamily, eps_ladder: &[f64], delta: f64, energy: f64, cfg: &QuadratureConfig) -> Result<Vec<(f64, f64)>> {
    check_ladder(eps_ladder)?;
    check_point(0.0, delta, energy)?;
    let setup = Setup::new(fam, cfg)?;
    let sp = ResolventPencil::new(fam)?.at(energy, delta);
    let limit = setup.evaluate(&sp, 0.0, delta, energy)?.f.value();
    eps_ladder
        .iter()
        .map(|&eps| Ok((eps, (setup.evaluate(&sp, eps, delta, energy)?.f.value() - limit).norm())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::{sample_gaussian, CirculantSystem};
    use crate::wegner::{build_family, BVariant};
    use std::f64::consts::PI;

    fn toeplitz(n: usize, seed: u64, j: usize) -> WegnerFamily {
        let sys = CirculantSystem::new(&sample_gaussian(n, seed).unwrap()).unwrap();
        build_family(&sys, j, BVariant::Primary, None).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::default().validate().is_ok());
        assert!(QuadratureConfig { half_width: 7.0, ..Default::default() }.validate().is_err());
        assert!(QuadratureConfig::with_nodes(1999).validate().is_err());
        let fam = WegnerFamily::scalar();
        assert!(compute_f(&fam, -0.1, 0.1, 0.0, &QuadratureConfig::default()).is_err());
        assert!(verify_f_bounds(&fam, &[0.1, 0.3], &[0.1], &[0.0], &QuadratureConfig::default()).is_err());
    }

    #[test]
    fn far_energy_decay() {
        let fam = WegnerFamily::scalar();
        let f = compute_f(&fam, 0.0, 1.0, 100.0, &QuadratureConfig::default()).unwrap();
        assert!(f.abs() <= 0.0101 && f.abs() >= 0.0099, "{}", f.abs());
    }

    #[test]
    fn poisson_limit_at_origin() {
        let fam = WegnerFamily::scalar();
        let f = compute_f(&fam, 0.0, 1e-4, 0.0, &QuadratureConfig::default()).unwrap();
        let target = -PI / (2.0 * PI).sqrt();
        assert!((f.im - target).abs() < 1e-3, "{}", f.im);
    }

    #[test]
    fn derivative_matches_analytic() {
        let fam = toeplitz(8, 3, 1);
        for eps in [0.3, 0.01] {
            let ev = evaluate_point(&fam, eps, 0.05, 0.5, &QuadratureConfig::default()).unwrap();
            let d = ev.derivative.unwrap();
            let exact = ev.derivative_analytic.value();
            assert!((d.value() - exact).norm() <= d.error, "{} {}", d.value(), exact);
            // dF/dε = -i F̃ by integration by parts
            let via_tilde = -I * ev.f_tilde.value();
            assert!((via_tilde - exact).norm() < 1e-6 * exact.norm().max(1.0));
        }
    }

    #[test]
    fn toeplitz_n8_all_bounds() {
        let fam = toeplitz(8, 5, 1);
        let r = verify_f_bounds(&fam, &DEFAULT_EPS_LADDER, &[0.5, 0.05, 0.005], &[-1.0, 0.0, 1.5], &QuadratureConfig::default())
            .unwrap();
        let bad: Vec<_> = r.failures().collect();
        assert!(r.passed, "{bad:?}");
        assert_eq!(r.evaluations.len(), 9 * 8);
    }

    #[test]
    fn spectral_averaging_far_field() {
        let fam = toeplitz(16, 2, 3);
        let r = verify_spectral_averaging(&fam, &[0.0], &[10.0], &QuadratureConfig::default()).unwrap();
        let bphi = (fam.b() * fam.phi()).norm_squared();
        assert!(r.passed);
        assert!(r.values[0].abs() <= bphi / 10.0 + 1e-12);
        assert!(r.rhs <= 0.5 * (1.0 + (2.0 / PI).sqrt() + 2.0));
    }

    #[test]
    fn apriori_chain_on_toeplitz() {
        let fam = toeplitz(16, 2, 3);
        let grid: Vec<f64> = (0..200).map(|i| -5.0 + 10.0 * i as f64 / 199.0).collect();
        let r = verify_apriori_bound(&fam, &grid, 0.1, 0.05, 0.3).unwrap();
        assert!(r.passed && r.points.len() == 200);
        let r0 = verify_apriori_bound(&fam, &grid, 0.0, 0.05, 0.3).unwrap();
        assert!(r0.passed && r0.points.iter().all(|p| p.lower == 0.0 && p.neg_imag >= 0.0));
    }

    #[test]
    fn convergence_in_epsilon() {
        let fam = toeplitz(8, 1, 2);
        let ladder = [0.01, 0.003, 0.001, 0.0003, 0.0001, 0.00003, 0.00001];
        let gaps = epsilon_convergence(&fam, &ladder, 0.5, 0.0, &QuadratureConfig::default()).unwrap();
        assert!(gaps.windows(2).all(|w| w[1].1 < w[0].1), "{gaps:?}");
        assert!(gaps.last().unwrap().1 <= 1e-4, "{gaps:?}");
    }
}
