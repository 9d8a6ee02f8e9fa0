//! Pochhammer symbol (x)_j = x (x+1) ··· (x+j-1), in linear and log space.

use crate::error::{Error, Result};
use crate::specfun::gamma::{ln_gamma, ln_gamma_signed};

/// (x)_j in linear space. Fails with `OverflowRequiresLogSpace` once the
/// product leaves the f64 range; callers assembling large products should
/// switch to [`ln_pochhammer`].
pub fn pochhammer(x: f64, j: u32) -> Result<f64> {
    let mut acc = 1.0;
    for k in 0..j {
        acc *= x + k as f64;
        if !acc.is_finite() {
            return Err(Error::OverflowRequiresLogSpace { x, j });
        }
    }
    Ok(acc)
}

/// (sign, ln |(x)_j|). Exact zero factors yield sign 0 and -inf magnitude.
pub fn ln_pochhammer(x: f64, j: u32) -> (f64, f64) {
    if j == 0 {
        return (1.0, 0.0);
    }
    if x > 0.0 {
        // (x)_j = Γ(x+j)/Γ(x)
        return (1.0, ln_gamma(x + j as f64) - ln_gamma(x));
    }
    let (s_num, ln_num) = ln_gamma_signed(x + j as f64);
    let (s_den, ln_den) = ln_gamma_signed(x);
    if ln_den.is_infinite() && ln_den > 0.0 {
        // x at a pole: the ratio Γ(x+j)/Γ(x) is still finite (a polynomial
        // in x), fall back to the direct product in log space.
        let mut sign = 1.0;
        let mut ln = 0.0;
        for k in 0..j {
            let f = x + k as f64;
            if f == 0.0 {
                return (0.0, f64::NEG_INFINITY);
            }
            sign *= f.signum();
            ln += f.abs().ln();
        }
        return (sign, ln);
    }
    (s_num * s_den, ln_num - ln_den)
}
