//! Adaptive 15-point Gauss-Kronrod quadrature.
//!
//! Globally adaptive: the interval with the largest error estimate is
//! bisected until the summed estimate meets `max(abs_tol, rel_tol * |I|)`.
//! [`integrate_with_tail`] extends a finite integral over geometrically
//! growing panels, which handles integrands with slow algebraic decay
//! without hard-coding a cutoff.

use crate::error::{Error, Result};

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights.
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub intervals: usize,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut res_abs = kronrod.abs();
    let mut fv = [0.0f64; 15];
    fv[7] = fc;
    for (i, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[i] = f1;
        fv[14 - i] = f2;
        kronrod += WGK[i] * (f1 + f2);
        res_abs += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f1 + f2);
        }
    }
    let mean = kronrod * 0.5;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for (i, &v) in fv.iter().enumerate().take(7) {
        res_asc += WGK[i] * ((v - mean).abs() + (fv[14 - i] - mean).abs());
    }
    let mut err = ((kronrod - gauss) * half).abs();
    res_asc *= half.abs();
    res_abs *= half.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (kronrod * half, err)
}

/// Integrate `f` over `[a, b]` to `max(abs_tol, rel_tol * |I|)`.
pub fn adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> Result<QuadResult> {
    let (v, e) = gk15(&f, a, b);
    let mut segments = vec![(a, b, v, e)];
    loop {
        let value: f64 = segments.iter().map(|s| s.2).sum();
        let error: f64 = segments.iter().map(|s| s.3).sum();
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(QuadResult {
                value,
                abs_error: error,
                intervals: segments.len(),
            });
        }
        if segments.len() >= max_intervals {
            return Err(Error::QuadratureFailure {
                error_estimate: error,
                intervals: segments.len(),
            });
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap();
        let (lo, hi, _, _) = segments.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        segments.push((lo, mid, v1, e1));
        segments.push((mid, hi, v2, e2));
    }
}

/// Integrate `f` over `[0, ∞)` for integrands that decay at least like an
/// integrable power law beyond `r0`. The core `[0, r0]` is integrated
/// adaptively; panels `[r0 2^k, r0 2^{k+1}]` are appended until two
/// consecutive panels contribute less than `tail_tol * |I|` each, which
/// bounds the remaining tail by roughly the same amount for any decay
/// r^{-q} with q >= 3.
pub fn integrate_with_tail<F: Fn(f64) -> f64>(
    f: F,
    r0: f64,
    abs_tol: f64,
    rel_tol: f64,
    tail_tol: f64,
) -> Result<QuadResult> {
    let core = adaptive(&f, 0.0, r0, abs_tol, rel_tol, 512)?;
    let mut value = core.value;
    let mut error = core.abs_error;
    let mut intervals = core.intervals;
    let mut lo = r0;
    let mut quiet = 0;
    for _ in 0..64 {
        let hi = 2.0 * lo;
        let panel = adaptive(&f, lo, hi, abs_tol, rel_tol, 256)?;
        value += panel.value;
        error += panel.abs_error;
        intervals += panel.intervals;
        if panel.value.abs() <= tail_tol * value.abs().max(abs_tol) {
            quiet += 1;
            if quiet >= 2 {
                return Ok(QuadResult {
                    value,
                    abs_error: error + panel.value.abs(),
                    intervals,
                });
            }
        } else {
            quiet = 0;
        }
        lo = hi;
    }
    Err(Error::QuadratureFailure {
        error_estimate: error,
        intervals,
    })
}
