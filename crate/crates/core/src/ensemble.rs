//! Random symmetric Toeplitz matrices and their circulant embedding.
//!
//! A symmetric Toeplitz matrix `T°` whose diagonal carries `√2·a₀` is the
//! top-left `n×n` block of a `2n×2n` circulant `C` with first row `b`. The
//! circulant is diagonalized by the unitary DFT `U(j,k) = e^{2πi jk/2n}/√(2n)`,
//! `(2n)^{-1/2} C = U D U*`, and conjugating the corner projector `Q` gives the
//! Hermitian projection `P = U* Q U`. The DFT kernel sign and the symmetric
//! normalization are fixed throughout this module.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Result, SpectraError};
use crate::linalg::{CMatrix, CVector, RMatrix};

/// Above this circulant size the projection is applied implicitly through FFTs.
pub const DENSE_PROJECTION_LIMIT: usize = 8192;

/// Counter-based generator for stream `stream` under master key `seed`.
///
/// ChaCha keyed by the seed with the stream index as nonce: every stream is
/// reproducible on its own, independent of how many other streams were drawn.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `len` i.i.d. standard normal draws from stream `stream` of `seed`.
pub fn standard_normals(len: usize, seed: u64, stream: u64) -> Vec<f64> {
    let mut rng = stream_rng(seed, stream);
    (0..len).map(|_| rng.sample(StandardNormal)).collect()
}

/// Coefficients `a₀..aₙ` of one Toeplitz draw.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussianSequence {
    n: usize,
    a: Vec<f64>,
    seed: u64,
    stream: u64,
}

impl GaussianSequence {
    /// Draws `n+1` standard normals from stream 0 of `seed`.
    pub fn sample(n: usize, seed: u64) -> Result<Self> {
        Self::sample_stream(n, seed, 0)
    }

    pub fn sample_stream(n: usize, seed: u64, stream: u64) -> Result<Self> {
        if n == 0 {
            return Err(SpectraError::ZeroSize);
        }
        Ok(Self { n, a: standard_normals(n + 1, seed, stream), seed, stream })
    }

    /// Fixed coefficients `a₀..aₙ` (at least two values).
    pub fn from_coefficients(a: Vec<f64>) -> Result<Self> {
        if a.len() < 2 {
            return Err(SpectraError::ZeroSize);
        }
        Ok(Self { n: a.len() - 1, a, seed: 0, stream: 0 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.a
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Same draw with `a₀` replaced.
    pub fn with_a0(&self, a0: f64) -> Self {
        let mut out = self.clone();
        out.a[0] = a0;
        out
    }
}

/// `sample_gaussian` in the module's operation list.
pub fn sample_gaussian(n: usize, seed: u64) -> Result<GaussianSequence> {
    GaussianSequence::sample(n, seed)
}

/// `T_n = (a_{|j-k|})`, or `T°_n` with `√2·a₀` on the diagonal when `modified`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzSample {
    a: GaussianSequence,
    modified: bool,
}

impl ToeplitzSample {
    pub fn n(&self) -> usize {
        self.a.n
    }

    pub fn sequence(&self) -> &GaussianSequence {
        &self.a
    }

    pub fn is_modified(&self) -> bool {
        self.modified
    }

    /// Value on diagonal `|j-k| = lag`.
    pub fn diagonal_value(&self, lag: usize) -> f64 {
        if lag == 0 && self.modified {
            SQRT_2 * self.a.a[0]
        } else {
            self.a.a[lag]
        }
    }

    pub fn entry(&self, j: usize, k: usize) -> f64 {
        self.diagonal_value(j.abs_diff(k))
    }

    pub fn matrix(&self) -> RMatrix {
        let n = self.n();
        let row: Vec<f64> = (0..n).map(|lag| self.diagonal_value(lag)).collect();
        RMatrix::from_fn(n, n, |j, k| row[j.abs_diff(k)])
    }

    /// `n^{-1/2}` times the matrix.
    pub fn scaled_matrix(&self) -> RMatrix {
        self.matrix() / (self.n() as f64).sqrt()
    }

    /// First row of a `2n` circulant whose top-left block is this matrix.
    fn embedding_row(&self) -> Vec<f64> {
        let mut b = build_embedding(&self.a);
        b[0] = self.diagonal_value(0);
        b
    }
}

pub fn build_toeplitz(a: &GaussianSequence, modified: bool) -> ToeplitzSample {
    ToeplitzSample { a: a.clone(), modified }
}

/// Circulant first row `b` of length `2n`:
/// `b₀ = √2a₀`, `bₙ = √2aₙ`, `b_j = a_j` below `n` and `a_{2n-j}` above.
pub fn build_embedding(a: &GaussianSequence) -> Vec<f64> {
    let n = a.n;
    let c = &a.a;
    (0..2 * n)
        .map(|j| match j {
            0 => SQRT_2 * c[0],
            j if j == n => SQRT_2 * c[n],
            j if j < n => c[j],
            j => c[2 * n - j],
        })
        .collect()
}

/// Dense circulant `C(i,j) = b_{(j-i) mod len}`.
pub fn circulant_matrix(b: &[f64]) -> RMatrix {
    let m = b.len();
    RMatrix::from_fn(m, m, |i, j| b[(j + m - i) % m])
}

/// Random Hankel matrix `(a_{j+k})` built from `2n-1` coefficients.
pub fn hankel_matrix(coeffs: &[f64], n: usize) -> Result<RMatrix> {
    if coeffs.len() < 2 * n - 1 {
        return Err(SpectraError::LengthMismatch { expected: 2 * n - 1, got: coeffs.len() });
    }
    Ok(RMatrix::from_fn(n, n, |j, k| coeffs[j + k]))
}

/// Unnormalized DFT with kernel `e^{+2πi jk/N}`.
fn dft_plus(x: &mut [Complex64]) {
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_inverse(x.len()).process(x);
}

/// Unnormalized DFT with kernel `e^{-2πi jk/N}`.
fn dft_minus(x: &mut [Complex64]) {
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_forward(x.len()).process(x);
}

/// `d_j = (2n)^{-1/2} Σ_k b_k e^{2πi jk/2n}`.
///
/// For an embedding row the transform is real; the imaginary residue is
/// checked against `1e-10·max(1, ‖b‖∞)` and dropped.
pub fn compute_d(b: &[f64]) -> Result<Vec<f64>> {
    let m = b.len();
    if m < 2 || !m.is_multiple_of(2) {
        return Err(SpectraError::InvalidParameter(format!("b must have even length >= 2, got {m}")));
    }
    let mut buf: Vec<Complex64> = b.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    dft_plus(&mut buf);
    let norm = 1.0 / (m as f64).sqrt();
    let scale = b.iter().fold(1.0_f64, |acc, x| acc.max(x.abs()));
    let residue = buf.iter().fold(0.0_f64, |acc, z| acc.max(z.im.abs())) * norm;
    if residue > 1e-10 * scale {
        return Err(SpectraError::NonRealDft(residue));
    }
    Ok(buf.iter().map(|z| z.re * norm).collect())
}

/// Unitary DFT matrix `U(j,k) = e^{2πi jk/m}/√m`.
pub fn dft_matrix(m: usize) -> CMatrix {
    let norm = 1.0 / (m as f64).sqrt();
    CMatrix::from_fn(m, m, |j, k| {
        let phase = 2.0 * PI * ((j * k) % m) as f64 / m as f64;
        Complex64::from_polar(norm, phase)
    })
}

/// `U x` with `U(j,k) = e^{2πi jk/m}/√m`.
pub fn unitary_dft(x: &[Complex64]) -> Vec<Complex64> {
    let mut buf = x.to_vec();
    dft_plus(&mut buf);
    let norm = 1.0 / (x.len() as f64).sqrt();
    buf.iter_mut().for_each(|v| *v *= norm);
    buf
}

/// `U* x`.
pub fn unitary_dft_adjoint(x: &[Complex64]) -> Vec<Complex64> {
    let mut buf = x.to_vec();
    dft_minus(&mut buf);
    let norm = 1.0 / (x.len() as f64).sqrt();
    buf.iter_mut().for_each(|v| *v *= norm);
    buf
}

/// Dense `P = U* Q U` for the `2n×2n` embedding:
/// `P(j,k) = (2n)^{-1} Σ_{m<n} e^{2πi m(k-j)/2n}`.
///
/// `P` is circulant, so only its first row is summed directly.
pub fn build_projection(n: usize) -> Result<CMatrix> {
    if n == 0 {
        return Err(SpectraError::ZeroSize);
    }
    let size = 2 * n;
    let first_row: Vec<Complex64> = (0..size)
        .map(|lag| {
            let sum: Complex64 = (0..n)
                .map(|m| Complex64::from_polar(1.0, 2.0 * PI * ((m * lag) % size) as f64 / size as f64))
                .sum();
            sum / size as f64
        })
        .collect();
    Ok(CMatrix::from_fn(size, size, |j, k| first_row[(k + size - j) % size]))
}

/// Applies `P = U* Q U` through two FFTs without forming the matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImplicitProjection {
    n: usize,
}

impl ImplicitProjection {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(SpectraError::ZeroSize);
        }
        Ok(Self { n })
    }

    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        let size = 2 * self.n;
        if x.len() != size {
            return Err(SpectraError::LengthMismatch { expected: size, got: x.len() });
        }
        let norm = 1.0 / size as f64;
        let mut buf = x.to_vec();
        dft_plus(&mut buf);
        for v in &mut buf[self.n..] {
            *v = Complex64::new(0.0, 0.0);
        }
        dft_minus(&mut buf);
        buf.iter_mut().for_each(|v| *v *= norm);
        Ok(buf)
    }
}

/// Projection storage: dense up to [`DENSE_PROJECTION_LIMIT`], implicit above.
#[derive(Debug, Clone)]
pub enum Projection {
    Dense(CMatrix),
    Implicit(ImplicitProjection),
}

impl Projection {
    pub fn for_size(n: usize, dense_limit: usize) -> Result<Self> {
        if 2 * n <= dense_limit {
            Ok(Self::Dense(build_projection(n)?))
        } else {
            Ok(Self::Implicit(ImplicitProjection::new(n)?))
        }
    }

    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        match self {
            Self::Dense(p) => {
                if x.len() != p.nrows() {
                    return Err(SpectraError::LengthMismatch { expected: p.nrows(), got: x.len() });
                }
                Ok((p * CVector::from_column_slice(x)).iter().copied().collect())
            }
            Self::Implicit(op) => op.apply(x),
        }
    }

    pub fn dense(&self) -> Option<&CMatrix> {
        match self {
            Self::Dense(p) => Some(p),
            Self::Implicit(_) => None,
        }
    }
}

/// Embedding row `b`, DFT diagonal `d` and projection `P` of one draw.
#[derive(Debug, Clone)]
pub struct CirculantSystem {
    n: usize,
    b: Vec<f64>,
    d: Vec<f64>,
    projection: Projection,
}

impl CirculantSystem {
    pub fn new(a: &GaussianSequence) -> Result<Self> {
        Self::with_dense_limit(a, DENSE_PROJECTION_LIMIT)
    }

    pub fn with_dense_limit(a: &GaussianSequence, dense_limit: usize) -> Result<Self> {
        let b = build_embedding(a);
        let d = compute_d(&b)?;
        let projection = Projection::for_size(a.n, dense_limit)?;
        Ok(Self { n: a.n, b, d, projection })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn d(&self) -> &[f64] {
        &self.d
    }

    pub fn projection(&self) -> &Projection {
        &self.projection
    }

    /// Dense `P`, building it on the fly when stored implicitly.
    pub fn dense_projection(&self) -> Result<CMatrix> {
        match &self.projection {
            Projection::Dense(p) => Ok(p.clone()),
            Projection::Implicit(_) => build_projection(self.n),
        }
    }

    /// `P D P x` using the stored projection.
    pub fn apply_pdp(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut y = self.projection.apply(x)?;
        for (v, &dj) in y.iter_mut().zip(&self.d) {
            *v *= dj;
        }
        self.projection.apply(&y)
    }
}

/// Dense `P·diag(d)·P`.
pub fn build_pdp(system: &CirculantSystem) -> Result<CMatrix> {
    Ok(conjugate_diagonal(&system.dense_projection()?, &system.d))
}

/// `P·diag(d)·P`, symmetrized so the result is exactly Hermitian.
pub fn conjugate_diagonal(p: &CMatrix, d: &[f64]) -> CMatrix {
    let mut pd = p.clone();
    for (k, &dk) in d.iter().enumerate() {
        pd.column_mut(k).scale_mut(dk);
    }
    let pdp = &pd * p;
    (&pdp + pdp.adjoint()) * Complex64::new(0.5, 0.0)
}

/// `C x` for the circulant with first row `b`, in O(m log m).
pub fn circulant_matvec(b: &[f64], x: &[Complex64]) -> Result<Vec<Complex64>> {
    let m = b.len();
    if x.len() != m {
        return Err(SpectraError::LengthMismatch { expected: m, got: x.len() });
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    // (Cx)_i = Σ_j c_{i-j} x_j with c_k = b_{-k mod m}
    let mut kernel: Vec<Complex64> = (0..m).map(|k| Complex64::new(b[(m - k) % m], 0.0)).collect();
    let mut buf = x.to_vec();
    dft_minus(&mut kernel);
    dft_minus(&mut buf);
    for (v, k) in buf.iter_mut().zip(&kernel) {
        *v *= k;
    }
    dft_plus(&mut buf);
    let norm = 1.0 / m as f64;
    buf.iter_mut().for_each(|v| *v *= norm);
    Ok(buf)
}

/// `T x` (or `T° x`) through the circulant embedding, in O(n log n).
pub fn toeplitz_matvec(sample: &ToeplitzSample, x: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = sample.n();
    if x.len() != n {
        return Err(SpectraError::LengthMismatch { expected: n, got: x.len() });
    }
    let mut padded = x.to_vec();
    padded.resize(2 * n, Complex64::new(0.0, 0.0));
    let mut y = circulant_matvec(&sample.embedding_row(), &padded)?;
    y.truncate(n);
    Ok(y)
}

/// Real-valued convenience wrapper over [`toeplitz_matvec`].
pub fn toeplitz_matvec_real(sample: &ToeplitzSample, x: &[f64]) -> Result<Vec<f64>> {
    let xc: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    Ok(toeplitz_matvec(sample, &xc)?.iter().map(|z| z.re).collect())
}

/// Corner projector `Q` as a dense real diagonal matrix.
pub fn corner_projector(n: usize) -> RMatrix {
    RMatrix::from_fn(2 * n, 2 * n, |j, k| if j == k && j < n { 1.0 } else { 0.0 })
}

/// The 0/1 diagonal marker `E_j` of the coordinates carrying `d_j`.
pub fn coordinate_marker(n: usize, j: usize) -> Result<Vec<usize>> {
    if j > n {
        return Err(SpectraError::IndexOutOfRange { j, n });
    }
    if j == 0 || j == n {
        Ok(vec![j])
    } else {
        Ok(vec![j, 2 * n - j])
    }
}

pub fn unit_vector(dim: usize, j: usize) -> CVector {
    let mut e = CVector::zeros(dim);
    e[j] = Complex64::new(1.0, 0.0);
    e
}

pub fn real_to_complex(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use approx::assert_relative_eq;

    fn seq(a: &[f64]) -> GaussianSequence {
        GaussianSequence::from_coefficients(a.to_vec()).unwrap()
    }

    #[test]
    fn sampling_is_deterministic_and_seed_sensitive() {
        let a = sample_gaussian(4, 7).unwrap();
        let b = sample_gaussian(4, 7).unwrap();
        let c = sample_gaussian(4, 8).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.coefficients().len(), 5);
        assert_ne!(a.coefficients(), c.coefficients());
        assert_eq!(sample_gaussian(0, 1), Err(SpectraError::ZeroSize));
    }

    #[test]
    fn streams_are_prefix_consistent() {
        // a₀ depends only on (seed, stream), not on n
        let short = GaussianSequence::sample_stream(8, 3, 5).unwrap();
        let long = GaussianSequence::sample_stream(64, 3, 5).unwrap();
        assert_eq!(short.coefficients(), &long.coefficients()[..9]);
        let other = GaussianSequence::sample_stream(8, 3, 6).unwrap();
        assert_ne!(short.coefficients(), other.coefficients());
    }

    #[test]
    fn gaussian_moments() {
        let a = sample_gaussian(10_000, 1).unwrap();
        let x = a.coefficients();
        let m = x.len() as f64;
        let mean = x.iter().sum::<f64>() / m;
        let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0);
        assert!(mean.abs() < 4.0 / 100.0, "mean {mean}");
        assert!((var - 1.0).abs() < 0.1, "var {var}");
    }

    #[test]
    fn toeplitz_examples() {
        let t = build_toeplitz(&seq(&[1.0, 2.0, 0.0]), false).matrix();
        assert_eq!(t, RMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]));
        let t = build_toeplitz(&seq(&[1.0, 2.0, 0.0]), true).matrix();
        assert_eq!(t, RMatrix::from_row_slice(2, 2, &[SQRT_2, 2.0, 2.0, SQRT_2]));
        let t = build_toeplitz(&seq(&[0.0, 1.0, 2.0, 9.0]), false).matrix();
        assert_eq!(t, RMatrix::from_row_slice(3, 3, &[0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0]));
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(build_embedding(&seq(&[3.0, 5.0])), vec![3.0 * SQRT_2, 5.0 * SQRT_2]);
        assert_eq!(build_embedding(&seq(&[1.0, 5.0, 3.0])), vec![SQRT_2, 5.0, 3.0 * SQRT_2, 5.0]);
        assert_eq!(
            build_embedding(&seq(&[1.0, 2.0, 3.0, 4.0])),
            vec![SQRT_2, 2.0, 3.0, 4.0 * SQRT_2, 3.0, 2.0]
        );
    }

    #[test]
    fn embedding_block_is_modified_toeplitz() {
        for n in [1, 2, 5, 16] {
            let a = sample_gaussian(n, 11).unwrap();
            let c = circulant_matrix(&build_embedding(&a));
            let t = build_toeplitz(&a, true).matrix();
            assert_eq!(c.view((0, 0), (n, n)).into_owned(), t);
        }
    }

    #[test]
    fn d_hand_examples() {
        let d = compute_d(&build_embedding(&seq(&[1.0, 0.0]))).unwrap();
        assert_relative_eq!(d[0], 1.0, epsilon = 1e-15);
        assert_relative_eq!(d[1], 1.0, epsilon = 1e-15);
        let d = compute_d(&build_embedding(&seq(&[0.0, 1.0]))).unwrap();
        assert_relative_eq!(d[0], 1.0, epsilon = 1e-15);
        assert_relative_eq!(d[1], -1.0, epsilon = 1e-15);
    }

    #[test]
    fn d_rejects_bad_input() {
        assert!(compute_d(&[1.0, 2.0, 3.0]).is_err());
        assert!(matches!(compute_d(&[0.0, 1.0, 0.0, 0.0]), Err(SpectraError::NonRealDft(_))));
    }

    #[test]
    fn projection_small_cases() {
        let p = build_projection(1).unwrap();
        for z in p.iter() {
            assert_relative_eq!(z.re, 0.5, epsilon = 1e-15);
            assert!(z.im.abs() < 1e-15);
        }
        let p = build_projection(4).unwrap();
        let trace: Complex64 = p.diagonal().iter().sum();
        assert!((trace.re - 4.0).abs() < 1e-9 && trace.im.abs() < 1e-9);
    }

    #[test]
    fn implicit_projection_matches_dense() {
        let n = 12;
        let p = build_projection(n).unwrap();
        let op = ImplicitProjection::new(n).unwrap();
        let x: Vec<Complex64> = standard_normals(4 * n, 2, 0)
            .chunks(2)
            .map(|c| Complex64::new(c[0], c[1]))
            .collect();
        let dense = &p * CVector::from_column_slice(&x);
        let fast = op.apply(&x).unwrap();
        for (u, v) in dense.iter().zip(&fast) {
            assert!((u - v).norm() < 1e-13);
        }
        assert!(op.apply(&x[..3]).is_err());
    }

    #[test]
    fn pdp_two_by_two() {
        for c in [0.0, 1.0, -3.5] {
            let sys = CirculantSystem::new(&seq(&[1.0, c])).unwrap();
            let pdp = build_pdp(&sys).unwrap();
            for z in pdp.iter() {
                assert_relative_eq!(z.re, 0.5, epsilon = 1e-14);
                assert!(z.im.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn implicit_pdp_matches_dense() {
        let a = sample_gaussian(10, 4).unwrap();
        let dense = CirculantSystem::new(&a).unwrap();
        let implicit = CirculantSystem::with_dense_limit(&a, 4).unwrap();
        assert!(implicit.projection().dense().is_none());
        let pdp = build_pdp(&dense).unwrap();
        let x = real_to_complex(&standard_normals(20, 9, 1));
        let want = &pdp * CVector::from_column_slice(&x);
        let got = implicit.apply_pdp(&x).unwrap();
        for (u, v) in want.iter().zip(&got) {
            assert!((u - v).norm() < 1e-12);
        }
        assert!(max_abs_diff(&build_pdp(&implicit).unwrap(), &pdp) < 1e-14);
    }

    #[test]
    fn matvec_trivial_cases() {
        let b = [1.0, 0.0, 0.0, 0.0];
        let x = real_to_complex(&[1.0, -2.0, 3.0, 0.5]);
        let y = circulant_matvec(&b, &x).unwrap();
        for (u, v) in x.iter().zip(&y) {
            assert!((u - v).norm() < 1e-15);
        }
        let zero = vec![Complex64::new(0.0, 0.0); 4];
        assert!(circulant_matvec(&[3.0, 1.0, 2.0, 1.0], &zero).unwrap().iter().all(|v| v.norm() == 0.0));
        assert!(circulant_matvec(&b, &x[..2]).is_err());
        let t = build_toeplitz(&seq(&[1.0, 2.0, 3.0]), false);
        assert!(toeplitz_matvec_real(&t, &[1.0]).is_err());
    }

    #[test]
    fn markers() {
        assert_eq!(coordinate_marker(4, 0).unwrap(), vec![0]);
        assert_eq!(coordinate_marker(4, 1).unwrap(), vec![1, 7]);
        assert_eq!(coordinate_marker(4, 4).unwrap(), vec![4]);
        assert!(coordinate_marker(4, 5).is_err());
    }
}
