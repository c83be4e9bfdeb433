use num_complex::Complex64;

use super::WegnerFamily;
use crate::error::Result;
use crate::linalg::{CMatrix, CVector, HermitianEigen};

/// Fast evaluation of `<Bφ, (H(λ) - E + iδ + iεḢ)⁻¹ Bφ>` along `λ`.
///
/// With `H(0) = QΛQ*` and `Ḣ = VV*` of rank `r`, the shifted operator is
/// `M₀ + t·VV*` with `M₀ = H(0) - E + iδ` diagonal in the eigenbasis and
/// `t = λ + iε`, so each evaluation costs one `r×r` solve (Woodbury).
#[derive(Debug, Clone)]
pub struct ResolventPencil {
    values: Vec<f64>,
    w: CVector,
    wm: CMatrix,
}

/// The pencil with `E` and `δ` fixed.
#[derive(Debug, Clone)]
pub struct ShiftedPencil {
    a: Complex64,
    p: Vec<Complex64>,
    q: Vec<Complex64>,
    g: CMatrix,
}

impl ResolventPencil {
    pub fn new(fam: &WegnerFamily) -> Result<Self> {
        let eig = HermitianEigen::new(fam.base())?;
        let bphi = fam.b() * fam.phi();
        let w = eig.vectors.ad_mul(&bphi);
        let wm = eig.vectors.ad_mul(fam.hdot_factor());
        Ok(Self { values: eig.values, w, wm })
    }

    pub fn rank(&self) -> usize {
        self.wm.ncols()
    }

    pub fn at(&self, energy: f64, delta: f64) -> ShiftedPencil {
        let r = self.rank();
        let s: Vec<Complex64> = self.values.iter().map(|&x| 1.0 / Complex64::new(x - energy, delta)).collect();
        let mut a = Complex64::new(0.0, 0.0);
        let mut p = vec![Complex64::new(0.0, 0.0); r];
        let mut q = vec![Complex64::new(0.0, 0.0); r];
        let mut g = CMatrix::zeros(r, r);
        for (k, &sk) in s.iter().enumerate() {
            let wk = self.w[k];
            a += wk.conj() * sk * wk;
            for i in 0..r {
                let wki = self.wm[(k, i)];
                p[i] += wk.conj() * sk * wki;
                q[i] += wki.conj() * sk * wk;
                for l in 0..r {
                    g[(i, l)] += wki.conj() * sk * self.wm[(k, l)];
                }
            }
        }
        ShiftedPencil { a, p, q, g }
    }
}

impl ShiftedPencil {
    /// `(I + tG)⁻¹`.
    fn capacitance_inverse(&self, t: Complex64) -> CMatrix {
        let r = self.p.len();
        let one = Complex64::new(1.0, 0.0);
        match r {
            0 => CMatrix::zeros(0, 0),
            1 => CMatrix::from_element(1, 1, one / (one + t * self.g[(0, 0)])),
            2 => {
                let (m00, m01) = (one + t * self.g[(0, 0)], t * self.g[(0, 1)]);
                let (m10, m11) = (t * self.g[(1, 0)], one + t * self.g[(1, 1)]);
                let det = m00 * m11 - m01 * m10;
                CMatrix::from_row_slice(2, 2, &[m11 / det, -m01 / det, -m10 / det, m00 / det])
            }
            _ => {
                let m = CMatrix::identity(r, r) + &self.g * t;
                m.try_inverse().expect("capacitance matrix is invertible for Im t >= 0 and delta > 0")
            }
        }
    }

    /// `<Bφ, R Bφ>` at `t = λ + iε`.
    pub fn form(&self, t: Complex64) -> Complex64 {
        self.form_and_derivative(t).0
    }

    /// `(<Bφ, R Bφ>, <Bφ, R Ḣ R Bφ>)` at `t = λ + iε`.
    pub fn form_and_derivative(&self, t: Complex64) -> (Complex64, Complex64) {
        let x = self.capacitance_inverse(t);
        let r = self.p.len();
        let xq: Vec<Complex64> = (0..r).map(|i| (0..r).map(|l| x[(i, l)] * self.q[l]).sum()).collect();
        let px: Vec<Complex64> = (0..r).map(|l| (0..r).map(|i| self.p[i] * x[(i, l)]).sum()).collect();
        let pxq: Complex64 = self.p.iter().zip(&xq).map(|(a, b)| a * b).sum();
        let pxxq: Complex64 = px.iter().zip(&xq).map(|(a, b)| a * b).sum();
        (self.a - t * pxq, pxxq)
    }
}
