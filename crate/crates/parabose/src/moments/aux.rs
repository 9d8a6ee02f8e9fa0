//! The auxiliary closed-form functions every moment is expressed through.
//! All depend on α only through its modulus.

use crate::error::{Error, Result};
use crate::specfun::{hyp1f1_damped, hyp2f2};
use crate::state::Order;

/// f(|α|) = 1 + ₂F₂(1,1; 3/2,2; -2|α|²).
pub fn f_of(alpha_mod: f64) -> Result<f64> {
    Ok(1.0 + hyp2f2(1.0, 1.0, 1.5, 2.0, -2.0 * alpha_mod * alpha_mod)?.value)
}

/// g(p,|α|) = 1 - e^{-2|α|²} ₁F₁((3-p)/2, 1/2; 2|α|²).
pub fn g_of(order: Order, alpha_mod: f64) -> Result<f64> {
    let p = order.as_f64();
    let z = 2.0 * alpha_mod * alpha_mod;
    Ok(1.0 - hyp1f1_damped((3.0 - p) / 2.0, 0.5, z)?.value)
}

/// h(p,|α|) = 1 + (p-1) e^{-2|α|²} ₁F₁((3-p)/2, 3/2; 2|α|²); identically 1
/// for standard bosons.
pub fn h_of(order: Order, alpha_mod: f64) -> Result<f64> {
    let p = order.as_f64();
    if order.get() == 1 {
        return Ok(1.0);
    }
    let z = 2.0 * alpha_mod * alpha_mod;
    Ok(1.0 + (p - 1.0) * hyp1f1_damped((3.0 - p) / 2.0, 1.5, z)?.value)
}

/// ξ(p,|α|) = (p-1) g/(2|α|²(p-2)) - h² + 1, for p ≠ 2 and α ≠ 0.
pub fn xi_of(order: Order, alpha_mod: f64) -> Result<f64> {
    if order.get() == 2 {
        return Err(Error::InvalidParameter {
            what: "xi is defined for p != 2; order two uses f - h^2",
        });
    }
    if alpha_mod == 0.0 {
        return Err(Error::InvalidParameter {
            what: "xi is singular at alpha = 0",
        });
    }
    let p = order.as_f64();
    let h = h_of(order, alpha_mod)?;
    Ok(
        (p - 1.0) * g_of(order, alpha_mod)? / (2.0 * alpha_mod * alpha_mod * (p - 2.0)) - h * h
            + 1.0,
    )
}

/// χ₁(p,|α|) = 3 e^{-2|α|²} [p-1+2|α|²(5p-14)] ₁F₁((3-p)/2, 3/2; 2|α|²).
pub fn chi1(order: Order, alpha_mod: f64) -> Result<f64> {
    let p = order.as_f64();
    let r2 = alpha_mod * alpha_mod;
    let damped = hyp1f1_damped((3.0 - p) / 2.0, 1.5, 2.0 * r2)?.value;
    Ok(3.0 * (p - 1.0 + 2.0 * r2 * (5.0 * p - 14.0)) * damped)
}

/// χ₂(p,|α|) = 4|α|² e^{-2|α|²} (p-3)[1-p+2|α|²(p+2)] ₁F₁((5-p)/2, 5/2; 2|α|²).
pub fn chi2(order: Order, alpha_mod: f64) -> Result<f64> {
    let p = order.as_f64();
    let r2 = alpha_mod * alpha_mod;
    let damped = hyp1f1_damped((5.0 - p) / 2.0, 2.5, 2.0 * r2)?.value;
    Ok(4.0 * r2 * (p - 3.0) * (1.0 - p + 2.0 * r2 * (p + 2.0)) * damped)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen reference digits
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ord(p: u32) -> Order {
        Order::new(p).unwrap()
    }

    #[test]
    fn h_is_one_for_bosons() {
        for am in [0.0, 0.5, 2.0, 7.0] {
            assert_eq!(h_of(ord(1), am).unwrap(), 1.0);
        }
    }

    #[test]
    fn g_approaches_one_for_higher_orders() {
        for p in [3u32, 5, 8] {
            let g = g_of(ord(p), 9.0).unwrap();
            assert_relative_eq!(g, 1.0, max_relative = 1e-6);
        }
    }

    #[test]
    fn fixed_values() {
        assert_relative_eq!(
            h_of(ord(4), 2f64.sqrt()).unwrap(),
            0.91796295815009217832,
            max_relative = 1e-11
        );
        assert_relative_eq!(
            xi_of(ord(4), 2f64.sqrt()).unwrap(),
            0.60935459085002006507,
            max_relative = 1e-10
        );
    }

    #[test]
    fn xi_rejects_its_singularities() {
        assert!(xi_of(ord(2), 1.0).is_err());
        assert!(xi_of(ord(3), 0.0).is_err());
    }

    #[test]
    fn chi2_vanishes_at_order_three() {
        assert_eq!(chi2(ord(3), 1.3).unwrap(), 0.0);
    }
}
