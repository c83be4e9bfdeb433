use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Result, SpectraError};
use crate::quadrature::integrate_real;

/// `(‖g‖₁, ‖g′‖₁, ‖g″‖₁)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormTriple {
    pub g: f64,
    pub dg: f64,
    pub d2g: f64,
}

impl NormTriple {
    pub fn sum(&self) -> f64 {
        self.g + self.dg + self.d2g
    }
}

/// Density of `scale·Z` for a standard Gaussian `Z`, with its L¹ norm triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianDensity {
    scale: f64,
    norms: NormTriple,
}

impl GaussianDensity {
    pub fn new(scale: f64) -> Result<Self> {
        Ok(Self { scale, norms: gaussian_norms(scale)? })
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn norms(&self) -> NormTriple {
        self.norms
    }

    pub fn value(&self, x: f64) -> f64 {
        let s = self.scale;
        (-0.5 * (x / s).powi(2)).exp() / (s * (2.0 * PI).sqrt())
    }

    pub fn derivative(&self, x: f64) -> f64 {
        -x / (self.scale * self.scale) * self.value(x)
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        let s2 = self.scale * self.scale;
        (x * x / (s2 * s2) - 1.0 / s2) * self.value(x)
    }

    /// Mass outside `[-w·scale, w·scale]`, i.e. `erfc(w/√2)`, bounded by the
    /// Mills ratio.
    pub fn tail_mass(&self, width_sd: f64) -> f64 {
        let w = width_sd;
        2.0 * (-0.5 * w * w).exp() / (w * (2.0 * PI).sqrt())
    }

    /// `∫_{|x| > w·scale} |g′|` = `2 g(w·scale)`.
    pub fn derivative_tail(&self, width_sd: f64) -> f64 {
        2.0 * self.value(width_sd * self.scale)
    }
}

/// L¹ norms of `g`, `g′`, `g″` for the density of `scale·Z` by adaptive
/// quadrature on `[-10·scale, 10·scale]`, split at the kinks of `|g′|` and `|g″|`.
pub fn gaussian_norms(scale: f64) -> Result<NormTriple> {
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(SpectraError::InvalidParameter(format!("scale must be positive, got {scale}")));
    }
    let g = GaussianDensity { scale, norms: NormTriple { g: 0.0, dg: 0.0, d2g: 0.0 } };
    let l = 10.0 * scale;
    let cuts = [-l, -scale, 0.0, scale, l];
    let tol = 1e-14;
    let (n0, _) = integrate_real(|x| g.value(x), &cuts, tol)?;
    let (n1, _) = integrate_real(|x| g.derivative(x).abs(), &cuts, tol)?;
    let (n2, _) = integrate_real(|x| g.second_derivative(x).abs(), &cuts, tol)?;
    Ok(NormTriple { g: n0, dg: n1, d2g: n2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn unit_scale_norms() {
        let n = gaussian_norms(1.0).unwrap();
        let g1 = (-0.5_f64).exp() / (2.0 * PI).sqrt();
        assert!((n.g - 1.0).abs() < 1e-10);
        assert!((n.dg - (2.0 / PI).sqrt()).abs() < 1e-10);
        assert!((n.d2g - 4.0 * g1).abs() < 1e-10);
        assert!((n.dg - 0.79788).abs() < 1e-5 && (n.d2g - 0.96788).abs() < 1e-5);
    }

    #[test]
    fn scaling_law() {
        let n = gaussian_norms(SQRT_2).unwrap();
        assert!((n.g - 1.0).abs() < 1e-10);
        assert!((n.dg - 0.56419).abs() < 1e-5);
        assert!((n.d2g - 0.48394).abs() < 1e-5);
        let unit = gaussian_norms(1.0).unwrap();
        assert!((n.dg * SQRT_2 - unit.dg).abs() < 1e-10);
        assert!((n.d2g * 2.0 - unit.d2g).abs() < 1e-10);
    }

    #[test]
    fn bounds_hold_for_any_scale() {
        for s in [0.3, 1.0, SQRT_2, 4.0] {
            let n = gaussian_norms(s).unwrap();
            assert!((n.g - 1.0).abs() < 1e-10);
            if s >= 1.0 {
                assert!(n.dg <= (2.0 / PI).sqrt() + 1e-10);
                assert!(n.d2g <= 2.0);
            }
        }
        assert!(gaussian_norms(0.0).is_err());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let g = GaussianDensity::new(1.3).unwrap();
        let h = 1e-5;
        for x in [-2.0, -0.4, 0.0, 0.7, 3.1] {
            let fd = (g.value(x + h) - g.value(x - h)) / (2.0 * h);
            assert!((fd - g.derivative(x)).abs() < 1e-9);
            let fd2 = (g.derivative(x + h) - g.derivative(x - h)) / (2.0 * h);
            assert!((fd2 - g.second_derivative(x)).abs() < 1e-9);
        }
    }
}
