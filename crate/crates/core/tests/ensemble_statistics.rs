use toeplitz_spectra::ensemble::{build_embedding, compute_d, sample_gaussian};
use toeplitz_spectra::montecarlo::{exact_second_moment, moment_diagnostics, Welford};

/// `𝔼 T°_ab T°_cd` for the modified Toeplitz matrix with standard normal coefficients.
fn covariance(a: usize, b: usize, c: usize, d: usize) -> f64 {
    let (l1, l2) = (a.abs_diff(b), c.abs_diff(d));
    match (l1 == l2, l1) {
        (false, _) => 0.0,
        (true, 0) => 2.0,
        (true, _) => 1.0,
    }
}

/// `𝔼 tr((n^{-1/2}T°)²)/n` by summing entry variances.
fn second_moment_oracle(n: usize) -> f64 {
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            total += covariance(i, j, j, i);
        }
    }
    total / (n * n) as f64
}

/// `𝔼 tr((n^{-1/2}T°)⁴)/n` by Wick's theorem over all index quadruples.
fn fourth_moment_oracle(n: usize) -> f64 {
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    total += covariance(i, j, j, k) * covariance(k, l, l, i)
                        + covariance(i, j, k, l) * covariance(j, k, l, i)
                        + covariance(i, j, l, i) * covariance(j, k, k, l);
                }
            }
        }
    }
    total / (n as f64).powi(3)
}

const FOURTH_MOMENT_N64: f64 = 2.791748046875;

#[test]
fn second_moment_oracle_matches_closed_form() {
    for n in [1, 2, 3, 10, 64] {
        assert!((second_moment_oracle(n) - exact_second_moment(n)).abs() < 1e-14);
    }
}

#[test]
fn fourth_moment_oracle_small_cases() {
    // n = 1: 𝔼(√2 a₀)⁴ = 4·3
    assert_eq!(fourth_moment_oracle(1), 12.0);
    assert_eq!(fourth_moment_oracle(2), 6.75);
    assert_eq!(fourth_moment_oracle(4), 4.6875);
}

#[test]
fn fourth_moment_oracle_n64_is_frozen() {
    assert_eq!(fourth_moment_oracle(64), FOURTH_MOMENT_N64);
}

#[test]
fn monte_carlo_moments_match_oracles() {
    let r = moment_diagnostics(64, 2000, 11, 6).unwrap();
    let m = |k: usize| r.rows[k - 1];
    assert!((m(2).mean - exact_second_moment(64)).abs() <= 3.0 * m(2).stderr);
    assert!((m(4).mean - FOURTH_MOMENT_N64).abs() <= 3.0 * m(4).stderr, "{:?}", m(4));
    for k in [1, 3, 5] {
        assert!(m(k).mean.abs() <= 3.0 * m(k).stderr, "{:?}", m(k));
    }
}

#[test]
fn d_statistics() {
    let n = 32;
    let mut stats = vec![Welford::default(); 2 * n];
    for seed in 0..2000 {
        let d = compute_d(&build_embedding(&sample_gaussian(n, seed).unwrap())).unwrap();
        for j in 1..n {
            assert!((d[j] - d[2 * n - j]).abs() <= 1e-12);
        }
        for (w, &x) in stats.iter_mut().zip(&d) {
            w.push(x * x);
        }
    }
    for (j, w) in stats.iter().enumerate().take(n + 1) {
        let expected = if j == 0 || j == n { 2.0 } else { 1.0 };
        // d_j has mean zero, so the mean of d_j² estimates the variance
        assert!((w.mean() - expected).abs() <= 5.0 * w.stderr(), "j={j} {} ± {}", w.mean(), w.stderr());
    }
}
