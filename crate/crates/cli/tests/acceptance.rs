//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Tolerances are pinned here rather than read from the library so that a
//! loosened default cannot silently pass.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use serde_json::Value;

use toeplitz_spectra::ensemble::{build_projection, build_toeplitz, compute_d, CirculantSystem, GaussianSequence};
use toeplitz_spectra::identities::{default_z_grid, IdentityChecks};
use toeplitz_spectra::montecarlo::{
    check_key_bound, estimate_gamma_density, exact_second_moment, key_bound_grid, linear_grid, moment_diagnostics,
    McConfig, Welford,
};
use toeplitz_spectra::wegner::gaussian_norms;

const IDENTITY_SIZES: [usize; 10] = [1, 2, 3, 4, 8, 16, 64, 128, 256, 512];
const IDENTITY_SEEDS: [u64; 5] = [1, 2, 3, 4, 5];

const EMBEDDING_TOL: f64 = 1e-12;
const CONJUGATION_TOL: f64 = 1e-10;
const PDP_SPECTRUM_TOL: f64 = 1e-8;
const PROJECTION_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-9;
const STIELTJES_TOL: f64 = 1e-8;
const D_SYMMETRY_TOL: f64 = 1e-12;
const D_STDERRS: f64 = 5.0;
const NORM_TOL: f64 = 1e-8;
const KEY_BOUND: f64 = 22.6274;
const DENSITY_CEILING: f64 = 7.2016;
const DENSITY_MASS_TOL: f64 = 0.01;
const STABILITY_FRACTION: f64 = 0.9;
const STABILITY_BANDWIDTH: f64 = 0.1;
const MOMENT_STDERRS: f64 = 3.0;
/// `𝔼 tr((n^{-1/2}T°)⁴)/n` at `n = 64` by Wick enumeration.
const FOURTH_MOMENT_N64: f64 = 2.791748046875;

type Verdict = Result<(bool, String), String>;
type Criterion<'a> = (u8, &'static str, Box<dyn Fn() -> Verdict + 'a>);

fn spectra() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spectra"))
}

/// Runs the binary and returns its exit code.
fn run_cli(args: &[&str]) -> Result<i32, String> {
    let out = spectra().args(args).output().map_err(|e| e.to_string())?;
    out.status.code().ok_or_else(|| "terminated by signal".to_string())
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c01_embedding() -> Verdict {
    let checks = IdentityChecks::default();
    let mut worst = 0.0_f64;
    for n in IDENTITY_SIZES {
        for seed in IDENTITY_SEEDS {
            worst = worst.max(checks.embedding(&GaussianSequence::sample(n, seed).map_err(err)?).max_abs_error);
        }
    }
    Ok((worst <= EMBEDDING_TOL, format!("max entry error {worst:.2e} <= {EMBEDDING_TOL:e}")))
}

fn c02_conjugation() -> Verdict {
    let checks = IdentityChecks::default();
    let (mut conj, mut spectrum) = (0.0_f64, 0.0_f64);
    for n in IDENTITY_SIZES {
        for seed in IDENTITY_SEEDS {
            let a = GaussianSequence::sample(n, seed).map_err(err)?;
            let sample = build_toeplitz(&a, true);
            let system = CirculantSystem::new(&a).map_err(err)?;
            conj = conj.max(checks.pdp(&system, &sample).map_err(err)?.max_abs_error);
            spectrum = spectrum.max(checks.pdp_spectrum(&system, &sample).map_err(err)?.max_abs_error);
        }
    }
    Ok((
        conj <= CONJUGATION_TOL && spectrum <= PDP_SPECTRUM_TOL,
        format!("entry error {conj:.2e} <= {CONJUGATION_TOL:e}, spectrum error {spectrum:.2e} <= {PDP_SPECTRUM_TOL:e}"),
    ))
}

fn c03_projection() -> Verdict {
    let (mut idem, mut diag, mut trace) = (0.0_f64, 0.0_f64, 0.0_f64);
    for n in IDENTITY_SIZES {
        let p = build_projection(n).map_err(err)?;
        idem = idem.max((&p * &p - &p).iter().fold(0.0_f64, |a, x| a.max(x.norm())));
        diag = diag.max(p.diagonal().iter().fold(0.0_f64, |a, x| a.max((x - 0.5).norm())));
        trace = trace.max((p.trace() - n as f64).norm());
    }
    Ok((
        idem <= PROJECTION_TOL && diag <= PROJECTION_TOL && trace <= TRACE_TOL,
        format!("|P²-P| {idem:.2e}, |diag-1/2| {diag:.2e}, |tr-n| {trace:.2e} for n <= 512"),
    ))
}

fn c04_stieltjes() -> Verdict {
    let checks = IdentityChecks::default();
    let grid = default_z_grid();
    let mut worst = 0.0_f64;
    for n in [1, 64, 256] {
        for seed in 1..=10 {
            let a = GaussianSequence::sample(n, seed).map_err(err)?;
            let system = CirculantSystem::new(&a).map_err(err)?;
            let r = checks.toeplitz_stieltjes(&build_toeplitz(&a, true), &system, &grid).map_err(err)?;
            worst = worst.max(r.max_abs_error);
        }
    }
    Ok((worst <= STIELTJES_TOL, format!("max gap {worst:.2e} <= {STIELTJES_TOL:e} over {} z-points", grid.len())))
}

fn c05_d_statistics() -> Verdict {
    let n = 32;
    let mut stats = vec![Welford::default(); n + 1];
    let mut mirror = 0.0_f64;
    for seed in 1..=2000 {
        let system = CirculantSystem::new(&GaussianSequence::sample(n, seed).map_err(err)?).map_err(err)?;
        let d = compute_d(system.b()).map_err(err)?;
        for j in 1..n {
            mirror = mirror.max((d[j] - d[2 * n - j]).abs());
        }
        for (w, x) in stats.iter_mut().zip(&d) {
            w.push(x * x);
        }
    }
    let worst_z = stats
        .iter()
        .enumerate()
        .map(|(j, w)| {
            let target = if j == 0 || j == n { 2.0 } else { 1.0 };
            (w.mean() - target).abs() / w.stderr()
        })
        .fold(0.0_f64, f64::max);
    Ok((
        worst_z <= D_STDERRS && mirror <= D_SYMMETRY_TOL,
        format!("worst variance deviation {worst_z:.2} stderr <= {D_STDERRS}, |d_j - d_(2n-j)| {mirror:.2e}"),
    ))
}

fn c06_wegner(dir: &Path) -> Verdict {
    let scalar_path = dir.join("wegner_scalar.json");
    let code = run_cli(&["wegner", "--scalar", "--out", scalar_path.to_str().unwrap()])?;
    let scalar = read_json(&scalar_path)?;
    let toeplitz_path = dir.join("wegner.json");
    let toeplitz_code = run_cli(&[
        "wegner",
        "--n",
        "16",
        "--j",
        "0,1,8,16",
        "--E=-2,0,2",
        "--delta",
        "0.5,0.05,0.005",
        "--eps-ladder",
        "0.5,0.1,0.03,0.01,0.003,0.001,0.0001",
        "--out",
        toeplitz_path.to_str().unwrap(),
    ])?;
    let report = read_json(&toeplitz_path)?;
    let families = report["families"].as_array().ok_or("missing families")?;
    let checks: usize = families
        .iter()
        .map(|f| {
            f["f_bounds"]["checks"].as_array().map_or(0, Vec::len) + f["spectral_averaging"]["checks"].as_array().map_or(0, Vec::len)
        })
        .sum();
    let violations = report["violations"].as_u64().ok_or("missing violations")?;
    let passed = code == 0
        && toeplitz_code == 0
        && scalar["passed"] == Value::Bool(true)
        && report["passed"] == Value::Bool(true)
        && families.len() == 4
        && violations == 0;
    Ok((
        passed,
        format!(
            "scalar: Fourier error {:.1e}, sup|F| {:.4} vs {:.4}; Toeplitz: {} families, {checks} checks, {violations} violations",
            scalar["fourier_error"].as_f64().unwrap_or(f64::NAN),
            scalar["sup_abs_f"].as_f64().unwrap_or(f64::NAN),
            scalar["uniform_rhs"].as_f64().unwrap_or(f64::NAN),
            families.len()
        ),
    ))
}

fn c07_norms() -> Verdict {
    use std::f64::consts::PI;
    let t = gaussian_norms(1.0).map_err(err)?;
    // (1, √(2/π), 4g(1)) in closed form
    let target = (1.0, (2.0 / PI).sqrt(), 4.0 * (-0.5_f64).exp() / (2.0 * PI).sqrt());
    let dev = (t.g - target.0).abs().max((t.dg - target.1).abs()).max((t.d2g - target.2).abs());
    Ok((
        dev <= NORM_TOL && t.d2g <= 2.0,
        format!("({:.9}, {:.9}, {:.9}), max deviation {dev:.2e} <= {NORM_TOL:e}", t.g, t.dg, t.d2g),
    ))
}

fn c08_key_bound() -> Verdict {
    let r = check_key_bound(&McConfig::new(128, 200, 1, key_bound_grid())).map_err(err)?;
    let herglotz = r.rows.iter().all(|row| row.herglotz_ok);
    Ok((
        r.max_value <= KEY_BOUND && herglotz,
        format!(
            "max |mean s| + 3 stderr = {:.4} <= {KEY_BOUND} at z = {:.2}{:+.2}i over {} points",
            r.max_value,
            r.argmax.re(),
            r.argmax.im(),
            r.rows.len()
        ),
    ))
}

fn c09_density() -> Verdict {
    let grid = linear_grid(-5.0, 5.0, 201).map_err(err)?;
    let large = estimate_gamma_density(1024, 200, 1, &grid, Some(STABILITY_BANDWIDTH)).map_err(err)?;
    let small = estimate_gamma_density(256, 200, 2, &grid, Some(STABILITY_BANDWIDTH)).map_err(err)?;
    let peak = large.peak();
    let mass = large.integral();
    let symmetry = large.symmetry().map_err(err)?;
    let stability = large.stability(&small, -3.0, 3.0).map_err(err)?;
    Ok((
        peak.density + peak.ci <= DENSITY_CEILING
            && (mass - 1.0).abs() <= DENSITY_MASS_TOL
            && symmetry.passed
            && stability.fraction >= STABILITY_FRACTION,
        format!(
            "peak {:.4} + ci {:.4} <= {DENSITY_CEILING} at x = {:.2}, mass {mass:.4}, symmetry violations {}, n=256 vs 1024 agree at {}/{} points",
            peak.density, peak.ci, peak.x, symmetry.violations, stability.agreeing, stability.points
        ),
    ))
}

fn c10_moments() -> Verdict {
    let n = 64;
    let r = moment_diagnostics(n, 2000, 1, 6).map_err(err)?;
    let row = |k: u32| r.rows.iter().find(|m| m.order == k).ok_or(format!("missing order {k}"));
    let z = |k: u32, target: f64| -> Result<f64, String> {
        let m = row(k)?;
        Ok((m.mean - target).abs() / m.stderr)
    };
    let z2 = z(2, exact_second_moment(n))?;
    let z4 = z(4, FOURTH_MOMENT_N64)?;
    let odd = [1, 3, 5].iter().map(|&k| z(k, 0.0)).collect::<Result<Vec<_>, _>>()?;
    let worst_odd = odd.iter().cloned().fold(0.0_f64, f64::max);
    Ok((
        z2 <= MOMENT_STDERRS && z4 <= MOMENT_STDERRS && worst_odd <= MOMENT_STDERRS,
        format!("deviations in stderr: 2nd {z2:.2}, 4th {z4:.2}, odd max {worst_odd:.2} (limit {MOMENT_STDERRS})"),
    ))
}

fn c11_hoffman_wielandt(dir: &Path) -> Verdict {
    let path = dir.join("hw.json");
    let code = run_cli(&["hw", "--n", "128,512", "--seeds", "1,2,3,4,5,6,7,8,9,10", "--out", path.to_str().unwrap()])?;
    let report = read_json(&path)?;
    let rows = report["rows"].as_array().ok_or("missing rows")?;
    let failed = rows.iter().filter(|r| r["passed"] != Value::Bool(true)).count();
    let ratios: Vec<f64> = report["scaling"].as_array().ok_or("missing scaling")?.iter().filter_map(|s| s["ratio"].as_f64()).collect();
    let ratio_ok = ratios.len() == 10 && ratios.iter().all(|r| (r - 4.0).abs() <= 4e-12);
    Ok((
        code == 0 && failed == 0 && ratio_ok,
        format!("{} realizations, {failed} violations, bound ratio n=128/n=512 in {:?}", rows.len(), minmax(&ratios)),
    ))
}

fn minmax(xs: &[f64]) -> (f64, f64) {
    xs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

fn c12_determinism(dir: &Path) -> Verdict {
    let runs: [(&str, &[&str]); 7] = [
        ("verify.json", &["verify", "--n", "1,8,64", "--seeds", "1,2"]),
        ("stieltjes.csv", &["stieltjes", "--n", "32", "--samples", "40", "--egrid=-2:2:0.5", "--imz", "0.2,0.05", "--side", "both"]),
        ("density.csv", &["density", "--n", "64", "--samples", "40", "--grid-points", "41"]),
        ("hankel.csv", &["density", "--ensemble", "hankel", "--n", "64", "--samples", "20", "--grid-points", "41"]),
        ("wegner.json", &["wegner", "--n", "4", "--j", "0,2", "--E", "0", "--delta", "0.5", "--eps-ladder", "0.5,0.01"]),
        ("hw.json", &["hw", "--n", "16,64", "--seeds", "1,2,3"]),
        ("moments.json", &["moments", "--n", "32", "--samples", "200"]),
    ];
    let mut mismatched = Vec::new();
    for (file, args) in runs {
        let mut payloads = Vec::new();
        for threads in ["1", "4", "8", "8"] {
            let path = dir.join(format!("t{threads}_{}_{file}", payloads.len()));
            let mut full: Vec<&str> = args.to_vec();
            full.extend(["--threads", threads, "--out", path.to_str().unwrap()]);
            let code = run_cli(&full)?;
            if code != 0 {
                return Ok((false, format!("{} exited with {code}", args[0])));
            }
            let manifest = read_json(&path.with_file_name(format!("{}.manifest.json", path.file_name().unwrap().to_str().unwrap())))?;
            if manifest["exit_code"] != 0 {
                return Ok((false, format!("{} manifest missing exit code", args[0])));
            }
            payloads.push(std::fs::read(&path).map_err(err)?);
        }
        if payloads.windows(2).any(|w| w[0] != w[1]) {
            mismatched.push(file);
        }
    }
    Ok((
        mismatched.is_empty(),
        format!("7 commands at threads 1, 4, 8, 8: mismatched payloads {mismatched:?}"),
    ))
}

fn main() {
    let dir = tempfile::tempdir().expect("temporary directory");
    let dir = dir.path();
    let criteria: Vec<Criterion> = vec![
        (1, "embedding identity", Box::new(c01_embedding)),
        (2, "conjugation identity", Box::new(c02_conjugation)),
        (3, "projection properties", Box::new(c03_projection)),
        (4, "Stieltjes identity", Box::new(c04_stieltjes)),
        (5, "d-statistics", Box::new(c05_d_statistics)),
        (6, "spectral-averaging suite", Box::new(move || c06_wegner(dir))),
        (7, "Gaussian norm triple", Box::new(c07_norms)),
        (8, "expected Stieltjes bound", Box::new(c08_key_bound)),
        (9, "density ceiling and stability", Box::new(c09_density)),
        (10, "moment oracle", Box::new(c10_moments)),
        (11, "Hoffman-Wielandt bound", Box::new(move || c11_hoffman_wielandt(dir))),
        (12, "thread-count determinism", Box::new(move || c12_determinism(dir))),
    ];
    let mut failures = 0;
    for (id, name, check) in &criteria {
        let start = Instant::now();
        let (passed, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        if !passed {
            failures += 1;
        }
        let tag = if passed { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {tag} {name}: {detail} [{:.1}s]", start.elapsed().as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
