use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use toeplitz_spectra::ensemble::{CirculantSystem, GaussianSequence};
use toeplitz_spectra::identities::{hoffman_wielandt_bound, IdentityChecks, IdentityReport};
use toeplitz_spectra::measures::HalfPlanePoint;
use toeplitz_spectra::montecarlo::{
    estimate_gamma_density, expected_stieltjes, hankel_density_explore, key_bound_rows, linear_grid, moment_diagnostics,
    with_threads, McConfig, Side, DENSITY_CEILING_QUOTED,
};
use toeplitz_spectra::wegner::{
    build_family, epsilon_convergence, scalar_self_test, verify_apriori_bound, verify_f_bounds, verify_spectral_averaging,
    BVariant, FBoundsReport, QuadratureConfig, SpectralAveragingReport,
};
use toeplitz_spectra::SpectraError;

use crate::args::{DensityArgs, EnsembleArg, HwArgs, MomentsArgs, SideArg, StieltjesArgs, VariantArg, VerifyArgs, WegnerArgs};
use crate::output::{csv_bytes, emit, float, json_bytes};
use crate::{CliError, Outcome};

/// A finished command: its payload and whether every check passed.
pub struct Finished {
    pub outcome: Outcome,
    pub seed: Option<u64>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn verdict(passed: bool) -> Outcome {
    if passed {
        Outcome::Passed
    } else {
        Outcome::Failed
    }
}

fn pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    with_threads(threads, f).map_err(CliError::from)
}

fn deliver(out: Option<&Path>, payload: &[u8]) -> Result<(), CliError> {
    emit(out, payload).map_err(CliError::Runtime)
}

pub fn verify(args: &VerifyArgs, threads: usize) -> Result<Finished, CliError> {
    if args.n.is_empty() || args.n.contains(&0) {
        return Err(usage("--n needs positive sizes"));
    }
    if args.seeds.is_empty() {
        return Err(usage("--seeds needs at least one seed"));
    }
    if !(args.tol_scale > 0.0) || !args.tol_scale.is_finite() {
        return Err(usage("--tol-scale must be positive"));
    }
    let checks = IdentityChecks::with_tolerance_scale(args.tol_scale);
    let reports: Vec<IdentityReport> = pool(threads, || checks.run_grid(&args.n, &args.seeds))??;
    let failed = reports.iter().filter(|r| !r.passed).count();
    eprintln!("verify: {} reports, {} failed", reports.len(), failed);
    for r in reports.iter().filter(|r| !r.passed) {
        eprintln!("  FAIL {} n={} seed={} error={:e} tol={:e}", r.name, r.n, r.seed, r.max_abs_error, r.tolerance);
    }
    deliver(args.out.as_deref(), &json_bytes(&reports)?)?;
    Ok(Finished { outcome: verdict(failed == 0), seed: args.seeds.first().copied() })
}

pub fn stieltjes(args: &StieltjesArgs, threads: usize) -> Result<Finished, CliError> {
    if args.n == 0 || args.samples == 0 {
        return Err(usage("--n and --samples must be positive"));
    }
    let mut z_grid = Vec::new();
    for e in args.egrid.points() {
        for &y in &args.imz {
            z_grid.push(HalfPlanePoint::new(e, y).map_err(|err| usage(format!("--imz: {err}")))?);
        }
    }
    let side = match args.side {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
        SideArg::Both => Side::Both,
    };
    let cfg = McConfig { n: args.n, samples: args.samples, seed: args.seed, z_grid, threads };
    let est = expected_stieltjes(&cfg, side)?;
    let rows = key_bound_rows(&est);
    let mut passed = rows.iter().all(|r| r.bound_ok && r.herglotz_ok);
    let max_gap = est.rows.iter().filter_map(|r| r.max_gap).fold(0.0_f64, f64::max);
    if side == Side::Both && max_gap > 1e-8 {
        passed = false;
    }
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                float(r.z.re()),
                float(r.z.im()),
                float(r.mean.re),
                float(r.mean.im),
                float(r.mean.stderr_re),
                float(r.mean.stderr_im),
                r.bound_ok.to_string(),
            ]
        })
        .collect();
    let worst = rows.iter().map(|r| r.value).fold(0.0_f64, f64::max);
    eprintln!("stieltjes: {} grid points, max |s|+3se = {worst:.6} (bound 22.627417)", rows.len());
    if side == Side::Both {
        eprintln!("stieltjes: max per-sample identity gap {max_gap:e}");
    }
    let header = ["E", "imz", "re_s", "im_s", "stderr_re", "stderr_im", "bound_ok"];
    deliver(args.out.as_deref(), &csv_bytes(&header, &table)?)?;
    Ok(Finished { outcome: verdict(passed), seed: Some(args.seed) })
}

pub fn density(args: &DensityArgs, threads: usize) -> Result<Finished, CliError> {
    if args.n == 0 || args.samples == 0 {
        return Err(usage("--n and --samples must be positive"));
    }
    if let Some(h) = args.bandwidth {
        if !(h > 0.0) {
            return Err(usage(format!("--bandwidth must be positive, got {h}")));
        }
    }
    let grid = linear_grid(args.grid_min, args.grid_max, args.grid_points).map_err(|e| usage(e.to_string()))?;
    let est = pool(threads, || match args.ensemble {
        EnsembleArg::Toeplitz => estimate_gamma_density(args.n, args.samples, args.seed, &grid, args.bandwidth),
        EnsembleArg::Hankel => hankel_density_explore(args.n, args.samples, args.seed, &grid, args.bandwidth),
    })??;
    let table: Vec<Vec<String>> =
        (0..grid.len()).map(|k| vec![float(est.grid[k]), float(est.values[k]), float(est.ci_halfwidth[k])]).collect();
    let peak = est.peak();
    let integral = est.integral();
    eprintln!("density: bandwidth {:.6}, integral {integral:.6}", est.bandwidth);
    eprintln!("density: peak {:.6} +/- {:.6} at x = {:.4}", peak.density, peak.ci, peak.x);
    let passed = match args.ensemble {
        EnsembleArg::Toeplitz => {
            let margin = est.ceiling_margin();
            eprintln!("density: margin to {DENSITY_CEILING_QUOTED} is {margin:.6}");
            margin > 0.0 && (integral - 1.0).abs() <= 0.01
        }
        EnsembleArg::Hankel => {
            eprintln!("density: exploratory (no bound asserted for Hankel)");
            true
        }
    };
    deliver(args.out.as_deref(), &csv_bytes(&["x", "density", "ci"], &table)?)?;
    Ok(Finished { outcome: verdict(passed), seed: Some(args.seed) })
}

#[derive(Serialize)]
struct AprioriSummary {
    epsilon: f64,
    delta: f64,
    energy: f64,
    points: usize,
    violations: usize,
    min_upper_margin: f64,
    min_lower_margin: f64,
    passed: bool,
}

#[derive(Serialize)]
struct ConvergenceSummary {
    delta: f64,
    energy: f64,
    gaps: Vec<(f64, f64)>,
    /// Gaps decrease strictly along the ladder below ε = 1e-2.
    monotone: bool,
    final_gap: f64,
}

#[derive(Serialize)]
struct FamilyReport {
    j: usize,
    variant: BVariant,
    dimension: usize,
    c0: f64,
    g_scale: f64,
    positivity_margin: f64,
    apriori: Vec<AprioriSummary>,
    f_bounds: FBoundsReport,
    spectral_averaging: SpectralAveragingReport,
    convergence: Vec<ConvergenceSummary>,
    violations: usize,
    passed: bool,
}

#[derive(Serialize)]
struct WegnerReport {
    n: usize,
    seed: u64,
    quadrature: QuadratureConfig,
    families: Vec<FamilyReport>,
    violations: usize,
    passed: bool,
}

const APRIORI_POINTS: usize = 101;

fn wegner_family(args: &WegnerArgs, system: &CirculantSystem, j: usize, cfg: &QuadratureConfig) -> Result<FamilyReport, CliError> {
    let variant = match args.variant {
        VariantArg::Primary => BVariant::Primary,
        VariantArg::Mirror => BVariant::Mirror,
    };
    let fam = build_family(system, j, variant, None).map_err(|e| usage(format!("--j {j}: {e}")))?;
    let positivity_margin = fam.positivity_margin()?;
    let s = fam.density().scale();
    let lambdas: Vec<f64> = (0..APRIORI_POINTS).map(|i| s * (-6.0 + 12.0 * i as f64 / (APRIORI_POINTS - 1) as f64)).collect();
    let mut apriori = Vec::new();
    for &delta in &args.delta {
        for &energy in &args.energies {
            for &eps in std::iter::once(&0.0).chain(&args.eps_ladder) {
                let r = verify_apriori_bound(&fam, &lambdas, eps, delta, energy)?;
                apriori.push(AprioriSummary {
                    epsilon: eps,
                    delta,
                    energy,
                    points: r.points.len(),
                    violations: r.violations,
                    min_upper_margin: r.min_upper_margin,
                    min_lower_margin: r.min_lower_margin,
                    passed: r.passed,
                });
            }
        }
    }
    let f_bounds = verify_f_bounds(&fam, &args.eps_ladder, &args.delta, &args.energies, cfg)?;
    let spectral_averaging = verify_spectral_averaging(&fam, &args.energies, &args.delta, cfg)?;
    let mut convergence = Vec::new();
    for &delta in &args.delta {
        for &energy in &args.energies {
            let gaps = epsilon_convergence(&fam, &args.eps_ladder, delta, energy, cfg)?;
            let tail: Vec<f64> = gaps.iter().filter(|g| g.0 <= 1e-2).map(|g| g.1).collect();
            let monotone = tail.windows(2).all(|w| w[1] < w[0]);
            let final_gap = gaps.last().map_or(0.0, |g| g.1);
            convergence.push(ConvergenceSummary { delta, energy, gaps, monotone, final_gap });
        }
    }
    let violations = apriori.iter().map(|a| a.violations).sum::<usize>()
        + f_bounds.violations
        + spectral_averaging.violations
        + usize::from(positivity_margin < -1e-10);
    Ok(FamilyReport {
        j,
        variant,
        dimension: fam.dim(),
        c0: fam.c0(),
        g_scale: s,
        positivity_margin,
        apriori,
        f_bounds,
        spectral_averaging,
        convergence,
        violations,
        passed: violations == 0,
    })
}

pub fn wegner(args: &WegnerArgs, threads: usize) -> Result<Finished, CliError> {
    let cfg = QuadratureConfig::with_nodes(args.quad_points);
    cfg.validate().map_err(|e| usage(format!("--quad-points: {e}")))?;
    if args.scalar {
        let report = scalar_self_test(&cfg)?;
        eprintln!(
            "wegner --scalar: kernel error {:e}, Fourier error {:e}, sup|F| {:.6} <= {:.6}, {} bound violations",
            report.kernel_error, report.fourier_error, report.sup_abs_f, report.uniform_rhs, report.bounds.violations
        );
        deliver(args.out.as_deref(), &json_bytes(&report)?)?;
        return Ok(Finished { outcome: verdict(report.passed), seed: None });
    }
    if args.n == 0 {
        return Err(usage("--n must be positive"));
    }
    if let Some(&j) = args.j.iter().find(|&&j| j > args.n) {
        return Err(usage(format!("--j {j} exceeds n = {}", args.n)));
    }
    if args.j.is_empty() || args.energies.is_empty() || args.delta.is_empty() || args.eps_ladder.is_empty() {
        return Err(usage("--j, --E, --delta and --eps-ladder need at least one value"));
    }
    if args.delta.iter().any(|&d| !(d > 0.0)) {
        return Err(usage("--delta values must be positive"));
    }
    let ladder = &args.eps_ladder;
    if ladder.iter().any(|&e| !(e > 0.0 && e <= 1.0)) || ladder.windows(2).any(|w| w[1] >= w[0]) {
        return Err(usage("--eps-ladder must be strictly decreasing in (0, 1]"));
    }
    let a = GaussianSequence::sample(args.n, args.seed)?;
    let system = CirculantSystem::new(&a)?;
    let families: Vec<FamilyReport> = pool(threads, || {
        args.j.par_iter().map(|&j| wegner_family(args, &system, j, &cfg)).collect::<Result<Vec<_>, _>>()
    })??;
    let violations = families.iter().map(|f| f.violations).sum();
    for f in &families {
        eprintln!(
            "wegner: j={} checks={} violations={} max nodes={}",
            f.j,
            f.f_bounds.checks.len() + f.spectral_averaging.checks.len(),
            f.violations,
            f.f_bounds.max_nodes()
        );
    }
    let report = WegnerReport { n: args.n, seed: args.seed, quadrature: cfg, families, violations, passed: violations == 0 };
    deliver(args.out.as_deref(), &json_bytes(&report)?)?;
    Ok(Finished { outcome: verdict(report.passed), seed: Some(args.seed) })
}

#[derive(Serialize)]
struct HwRow {
    n: usize,
    seed: u64,
    w2_squared: f64,
    bound: f64,
    tolerance: f64,
    passed: bool,
}

#[derive(Serialize)]
struct HwScaling {
    seed: u64,
    n_small: usize,
    n_large: usize,
    /// `bound(n_small) / bound(n_large)`; equals `n_large / n_small`.
    ratio: f64,
    expected: f64,
    passed: bool,
}

#[derive(Serialize)]
struct HwReport {
    rows: Vec<HwRow>,
    scaling: Vec<HwScaling>,
    passed: bool,
}

pub fn hw(args: &HwArgs, threads: usize) -> Result<Finished, CliError> {
    if args.n.is_empty() || args.n.contains(&0) || args.seeds.is_empty() {
        return Err(usage("--n needs positive sizes and --seeds at least one seed"));
    }
    let mut sizes = args.n.clone();
    sizes.sort_unstable();
    sizes.dedup();
    let keys: Vec<(usize, u64)> = sizes.iter().flat_map(|&n| args.seeds.iter().map(move |&s| (n, s))).collect();
    let checks = IdentityChecks::default();
    let rows: Vec<HwRow> = pool(threads, || {
        keys.par_iter()
            .map(|&(n, seed)| {
                let a = GaussianSequence::sample(n, seed)?;
                let r = checks.hoffman_wielandt(&a)?;
                Ok(HwRow { n, seed, w2_squared: r.max_abs_error, bound: hoffman_wielandt_bound(&a), tolerance: r.tolerance, passed: r.passed })
            })
            .collect::<Result<Vec<_>, SpectraError>>()
    })??;
    let mut scaling = Vec::new();
    for &seed in &args.seeds {
        let bound_at = |n: usize| rows.iter().find(|r| r.n == n && r.seed == seed).map(|r| r.bound);
        for w in sizes.windows(2) {
            let (lo, hi) = (bound_at(w[0]).unwrap_or(f64::NAN), bound_at(w[1]).unwrap_or(f64::NAN));
            let ratio = lo / hi;
            let expected = w[1] as f64 / w[0] as f64;
            let passed = (ratio / expected - 1.0).abs() <= 1e-12 && hi <= lo;
            scaling.push(HwScaling { seed, n_small: w[0], n_large: w[1], ratio, expected, passed });
        }
    }
    let passed = rows.iter().all(|r| r.passed) && scaling.iter().all(|s| s.passed);
    eprintln!(
        "hw: {} realizations, {} failed; {} scaling pairs",
        rows.len(),
        rows.iter().filter(|r| !r.passed).count(),
        scaling.len()
    );
    let report = HwReport { rows, scaling, passed };
    deliver(args.out.as_deref(), &json_bytes(&report)?)?;
    Ok(Finished { outcome: verdict(passed), seed: args.seeds.first().copied() })
}

pub fn moments(args: &MomentsArgs, threads: usize) -> Result<Finished, CliError> {
    if args.n == 0 || args.samples < 2 || args.max_order == 0 {
        return Err(usage("--n and --max-order must be positive and --samples at least 2"));
    }
    let report = pool(threads, || moment_diagnostics(args.n, args.samples, args.seed, args.max_order))??;
    let passed = report.rows.iter().all(|r| r.consistent != Some(false));
    for r in &report.rows {
        let exact = r.exact.map_or("-".to_string(), |e| format!("{e:.6}"));
        eprintln!("moments: k={} mean={:.6} se={:.6} exact={exact}", r.order, r.mean, r.stderr);
    }
    deliver(args.out.as_deref(), &json_bytes(&report)?)?;
    Ok(Finished { outcome: verdict(passed), seed: Some(args.seed) })
}

/// Parameters as recorded in the manifest.
pub fn parameters<T: Serialize>(args: &T) -> Value {
    serde_json::to_value(args).unwrap_or(Value::Null)
}
