//! Log-gamma via the Lanczos approximation (g = 7, n = 9), plus the signed
//! variant for negative non-integer arguments and log-factorials.

use std::f64::consts::PI;

#[allow(clippy::excessive_precision)] // published coefficient digits
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

fn lanczos_sum(x: f64) -> f64 {
    let mut s = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        s += c / (x + i as f64 - 1.0);
    }
    s
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma needs x > 0, got {x}");
    if x < 0.5 {
        // reflection into the stable region
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let t = x + LANCZOS_G - 0.5;
    0.5 * (2.0 * PI).ln() + (x - 0.5) * t.ln() - t + lanczos_sum(x).ln()
}

/// (sign, ln |Γ(x)|) for any non-pole x. Poles (x = 0, -1, -2, ...) return
/// sign 0 and +inf magnitude.
pub fn ln_gamma_signed(x: f64) -> (f64, f64) {
    if x > 0.0 {
        return (1.0, ln_gamma(x));
    }
    if x == x.floor() {
        return (0.0, f64::INFINITY);
    }
    // Γ(x)Γ(1-x) = π / sin(πx)
    let s = (PI * x).sin();
    (s.signum(), (PI / s.abs()).ln() - ln_gamma(1.0 - x))
}

/// ln n!
pub fn ln_factorial(n: u64) -> f64 {
    const SMALL: [f64; 2] = [0.0, 0.0];
    if n < 2 {
        return SMALL[n as usize];
    }
    ln_gamma(n as f64 + 1.0)
}
