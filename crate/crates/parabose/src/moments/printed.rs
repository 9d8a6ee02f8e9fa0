//! The published compound expressions for σ²ₙ, Q, and the p = 2 quadrature
//! asymptotics, transcribed verbatim for the transcription diagnostic.
//!
//! These are never used to produce results. The crate's σ²ₙ and Q come from
//! the definitional assemblies ⟨n̂²⟩ - ⟨n̂⟩² and (σ²ₙ - ⟨n̂⟩)/⟨n̂⟩; the
//! diagnostic quantifies how far each printed compound form sits from the
//! definitional value on a reference grid, so known misprints are measured
//! rather than silently patched. Observed behaviour: the Q forms and the
//! generic-branch σ²ₙ agree to rounding; the p = 2 σ²ₙ line agrees only at
//! |α| = 1 (its ₂F₂ term is missing an |α|⁴) and the p = 4 σ²ₙ line and
//! the p = 2 quadrature asymptotics deviate everywhere.

use crate::error::Result;
use crate::moments::aux::{chi1, chi2, f_of, g_of};
use crate::specfun::{dawson, digamma, hyp2f2};
use crate::state::Order;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// σ²ₙ exactly as published, three branches.
pub fn variance_printed(order: Order, alpha_mod: f64) -> Result<f64> {
    let p = order.as_f64();
    let r = alpha_mod;
    let r2 = r * r;
    let big_f = dawson(SQRT_2 * r);
    match order.get() {
        2 => {
            let f = f_of(r)?;
            Ok(
                4.0 * r2 + r2 * r2 + r / SQRT_2 * big_f - 1.5 * r2 * f - r2 * r2 * f * f
                    + 2.0 / 3.0 * hyp2f2(1.0, 1.0, 2.5, 3.0, -2.0 * r2)?.value,
            )
        }
        4 => {
            let f = f_of(r)?;
            Ok(r2 - 3.0 * SQRT_2 * (r + r * r2) * big_f + 4.5 * r2 * f - 4.5 * r2 * f * f)
        }
        _ => {
            let g = g_of(order, r)?;
            let c = chi1(order, r)? + chi2(order, r)?;
            Ok(r2 * (3.0 * p - 4.0) / (p - 2.0)
                - (p - 1.0) / (12.0 * (p - 4.0) * (p - 2.0) * (p - 2.0))
                    * (3.0 * (p - 4.0) * (p - 1.0) * g * g
                        + 2.0 * (p - 2.0) * (c - 3.0 * p + 3.0)
                        + 12.0 * r2 * (p - 4.0) * (p - 2.0) * g))
        }
    }
}

/// Mandel Q exactly as published, three branches.
pub fn mandel_q_printed(order: Order, alpha_mod: f64) -> Result<f64> {
    let p = order.as_f64();
    let r = alpha_mod;
    let r2 = r * r;
    let big_f = dawson(SQRT_2 * r);
    match order.get() {
        2 => {
            let f = f_of(r)?;
            let h = hyp2f2(1.0, 1.0, 2.5, 3.0, -2.0 * r2)?.value;
            Ok(
                (4.0 * r2 * r * h + 6.0 * r2 * r + 24.0 * r + 3.0 * SQRT_2 * big_f) / (6.0 * r * f)
                    - 2.5
                    - r2 * f,
            )
        }
        4 => {
            let f = f_of(r)?;
            Ok(3.0 / (2.0 * r + 3.0 * SQRT_2 * big_f)
                * (3.0 * r * (f - big_f * big_f) - SQRT_2 * (4.0 * r2 + 3.0) * big_f))
        }
        _ => {
            let g = g_of(order, r)?;
            let c = chi1(order, r)? + chi2(order, r)?;
            Ok(
                (p - 1.0) / (6.0 * (p - 4.0) * (p - 2.0) * (2.0 * r2 * (p - 2.0) + (p - 1.0) * g))
                    * (-6.0 * (2.0 * r2 + 1.0) * (p - 4.0) * (p - 2.0) * g
                        - 3.0 * (p - 4.0) * (p - 1.0) * g * g
                        - 2.0 * (p - 2.0) * (c - 12.0 * r2 * (p - 4.0) - 3.0 * p + 3.0)),
            )
        }
    }
}

/// The published large-|α| σ²ₙ line for p = 2 (the other branches coincide
/// with the forms the crate exposes).
pub fn variance_asymptotic_printed_p2(alpha_mod: f64) -> Result<f64> {
    let r2 = alpha_mod * alpha_mod;
    let big_l = (2.0 * r2).ln();
    let psi_h = digamma(0.5)?;
    let psi_3h = digamma(1.5)?;
    Ok(r2 * (0.5 * big_l + 1.5 + 0.5 * psi_h - psi_3h)
        - psi_h * psi_h / 16.0
        - (3.0 + psi_h + big_l / 8.0) * big_l / 8.0
        + 0.25
        + 0.375 * psi_h)
}

/// The published large-|α| bracket of the p = 2 quadrature variances,
/// containing 1/√π factors where the Dawson tail produces 1/2.
pub fn quadrature_bracket_asymptotic_printed_p2(alpha_mod: f64) -> Result<f64> {
    let r2 = alpha_mod * alpha_mod;
    let psi_h = digamma(0.5)?;
    let sqrt_pi = std::f64::consts::PI.sqrt();
    Ok(((2.0 * r2).ln() - psi_h) / (4.0 * r2)
        - (2.0 + 1.0 / (2.0 * sqrt_pi * r2)) / (2.0 * sqrt_pi * r2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{mandel_q, variance_n};
    use crate::report::Method;
    use num_complex::Complex64;

    fn ord(p: u32) -> Order {
        Order::new(p).unwrap()
    }

    #[test]
    fn printed_q_forms_agree_with_definitional() {
        // the published Q lines are algebraically exact in every branch
        for (p, am) in [(2u32, 1.0), (2, 3.0), (4, 1.5), (5, 2.0), (7, 1.0)] {
            let printed = mandel_q_printed(ord(p), am).unwrap();
            let def = mandel_q(ord(p), Complex64::new(am, 0.0), Method::Analytic).unwrap();
            assert!(
                (printed - def).abs() <= 1e-8 * def.abs().max(1.0),
                "p={p} |α|={am}: printed {printed} vs definitional {def}"
            );
        }
    }

    #[test]
    fn printed_generic_variance_agrees() {
        for (p, am) in [(3u32, 1.5), (5, 2.5), (8, 1.0)] {
            let printed = variance_printed(ord(p), am).unwrap();
            let def = variance_n(ord(p), Complex64::new(am, 0.0), Method::Analytic).unwrap();
            assert!(
                (printed - def).abs() <= 1e-9 * def.abs().max(1.0),
                "p={p} |α|={am}: {printed} vs {def}"
            );
        }
    }

    #[test]
    fn printed_p2_variance_is_exact_only_at_unit_modulus() {
        let printed = variance_printed(ord(2), 1.0).unwrap();
        let def = variance_n(ord(2), Complex64::new(1.0, 0.0), Method::Analytic).unwrap();
        assert!((printed - def).abs() < 1e-12);
        // away from |α| = 1 the missing |α|⁴ on the ₂F₂ term shows
        let printed = variance_printed(ord(2), 10f64.sqrt()).unwrap();
        let def = variance_n(ord(2), Complex64::new(10f64.sqrt(), 0.0), Method::Analytic).unwrap();
        assert!((printed - def).abs() > 1.0);
    }
}
