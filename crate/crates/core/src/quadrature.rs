//! Globally adaptive 7/15-point Gauss-Kronrod quadrature for complex,
//! vector-valued integrands on a finite interval.
//!
//! The adaptive pass keeps the final panel set so that related integrands
//! (finite-difference neighbours, a derivative formula) can be evaluated on
//! exactly the same rule afterwards.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Result, SpectraError};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

pub const NODES_PER_PANEL: usize = 15;

#[derive(Debug, Clone)]
struct Panel<const K: usize> {
    lo: f64,
    hi: f64,
    value: [Complex64; K],
    error: f64,
}

impl<const K: usize> PartialEq for Panel<K> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<const K: usize> Eq for Panel<K> {}
impl<const K: usize> PartialOrd for Panel<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<const K: usize> Ord for Panel<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn zero<const K: usize>() -> [Complex64; K] {
    [Complex64::new(0.0, 0.0); K]
}

/// Kronrod estimate and |Kronrod - Gauss| (max over components) on `[lo, hi]`.
fn gk15<const K: usize, F>(f: &F, lo: f64, hi: f64) -> ([Complex64; K], f64)
where
    F: Fn(f64) -> [Complex64; K],
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut kronrod = zero::<K>();
    let mut gauss = zero::<K>();
    for (i, (&x, &wk)) in XGK.iter().zip(&WGK).enumerate() {
        let points: &[f64] = if x == 0.0 { &[0.0] } else { &[-1.0, 1.0] };
        for &sign in points {
            let v = f(center + sign * half * x);
            for c in 0..K {
                kronrod[c] += v[c] * wk;
                if i % 2 == 1 {
                    gauss[c] += v[c] * WG[i / 2];
                }
            }
        }
    }
    let mut err = 0.0_f64;
    for c in 0..K {
        kronrod[c] *= half;
        gauss[c] *= half;
        err = err.max((kronrod[c] - gauss[c]).norm());
    }
    (kronrod, err)
}

/// Result of an adaptive integration.
#[derive(Debug, Clone)]
pub struct Integral<const K: usize> {
    pub value: [Complex64; K],
    /// Sum of per-panel |Kronrod - Gauss| estimates (max over components).
    pub error: f64,
    /// Final panels, sorted left to right.
    pub panels: Vec<(f64, f64)>,
}

impl<const K: usize> Integral<K> {
    pub fn nodes(&self) -> usize {
        self.panels.len() * NODES_PER_PANEL
    }
}

/// Integrates `f` over `[a, b]` starting from `initial_panels` equal panels
/// and bisecting the worst panel until the summed error estimate drops to
/// `abs_tol`.
pub fn adaptive<const K: usize, F>(f: F, a: f64, b: f64, initial_panels: usize, abs_tol: f64, max_panels: usize) -> Result<Integral<K>>
where
    F: Fn(f64) -> [Complex64; K],
{
    let initial = initial_panels.max(1);
    let width = (b - a) / initial as f64;
    let mut heap = BinaryHeap::with_capacity(initial * 2);
    for i in 0..initial {
        let lo = a + width * i as f64;
        let hi = if i + 1 == initial { b } else { a + width * (i + 1) as f64 };
        let (value, error) = gk15(&f, lo, hi);
        heap.push(Panel { lo, hi, value, error });
    }
    let total_error = |heap: &BinaryHeap<Panel<K>>| heap.iter().map(|p| p.error).sum::<f64>();
    let total_value = |heap: &BinaryHeap<Panel<K>>| {
        let mut v = zero::<K>();
        for p in heap.iter() {
            for c in 0..K {
                v[c] += p.value[c];
            }
        }
        v
    };

    let mut error = total_error(&heap);
    let mut previous = total_value(&heap);
    let mut gap = f64::INFINITY;
    while error > abs_tol {
        if heap.len() >= max_panels {
            return Err(SpectraError::QuadratureNotConverged { estimate: error, gap });
        }
        let worst = heap.pop().expect("nonempty panel set");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            return Err(SpectraError::QuadratureNotConverged { estimate: error, gap });
        }
        error -= worst.error;
        for (lo, hi) in [(worst.lo, mid), (mid, worst.hi)] {
            let (value, err) = gk15(&f, lo, hi);
            error += err;
            heap.push(Panel { lo, hi, value, error: err });
        }
        // the running sum drifts; recompute periodically
        if heap.len() % 64 == 0 {
            let current = total_value(&heap);
            gap = (0..K).map(|c| (current[c] - previous[c]).norm()).fold(0.0, f64::max);
            previous = current;
            error = total_error(&heap);
        }
    }
    let value = total_value(&heap);
    let error = total_error(&heap);
    let mut panels: Vec<(f64, f64)> = heap.into_iter().map(|p| (p.lo, p.hi)).collect();
    panels.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(Integral { value, error, panels })
}

/// Kronrod-15 rule applied on a fixed panel set.
pub fn on_panels<const K: usize, F>(f: F, panels: &[(f64, f64)]) -> [Complex64; K]
where
    F: Fn(f64) -> [Complex64; K],
{
    let mut total = zero::<K>();
    for &(lo, hi) in panels {
        let (v, _) = gk15(&f, lo, hi);
        for c in 0..K {
            total[c] += v[c];
        }
    }
    total
}

/// Adaptive integral of a real function, split at the given interior points.
pub fn integrate_real<F>(f: F, breakpoints: &[f64], abs_tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let mut value = 0.0;
    let mut error = 0.0;
    for w in breakpoints.windows(2) {
        let r = adaptive(|x| [Complex64::new(f(x), 0.0)], w[0], w[1], 8, abs_tol / breakpoints.len() as f64, 100_000)?;
        value += r.value[0].re;
        error += r.error;
    }
    Ok((value, error))
}
