//! Digamma ψ(x) for x > 0 via upward recurrence into the asymptotic region.

use crate::error::{Error, Result};

// B_{2k}/(2k) for the asymptotic tail ψ(x) ≈ ln x - 1/(2x) - Σ c_k / x^{2k}
const ASYMP: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// ψ(x) = d/dx ln Γ(x), defined here for x > 0 only.
pub fn digamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::InvalidParameter {
            what: "digamma requires x > 0",
        });
    }
    let mut shift = 0.0;
    let mut xx = x;
    while xx < 8.0 {
        shift -= 1.0 / xx;
        xx += 1.0;
    }
    let mut result = shift + xx.ln() - 0.5 / xx;
    let inv_x2 = 1.0 / (xx * xx);
    let mut pow = inv_x2;
    for c in ASYMP {
        result -= c * pow;
        pow *= inv_x2;
    }
    Ok(result)
}
