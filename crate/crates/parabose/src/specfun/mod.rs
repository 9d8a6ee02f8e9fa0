//! Special-function kernels: Pochhammer symbols, log-gamma, digamma, the
//! Dawson integral, and the hypergeometric series ₁F₁ and ₂F₂ that the
//! closed-form state statistics are built from.
//!
//! Everything is a pure function of its arguments; callers on any number of
//! threads may share these freely.

mod dawson;
mod dd;
mod digamma;
mod gamma;
mod hyp;
mod pochhammer;

pub use dawson::dawson;
pub use digamma::digamma;
pub use gamma::{ln_factorial, ln_gamma, ln_gamma_signed};
pub use hyp::{hyp1f1, hyp1f1_damped, hyp2f2, EvalResult, SERIES_TERM_CAP};
pub use pochhammer::{ln_pochhammer, pochhammer};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;
    use approx::assert_relative_eq;

    #[test]
    fn dawson_matches_quadrature_of_defining_integral() {
        // F(x) = e^{-x^2} ∫_0^x e^{t^2} dt, the integral done by adaptive
        // quadrature as an independent oracle
        for &x in &[0.3, 1.0, 2.0, 3.7] {
            let inner = quad::adaptive(|t| (t * t).exp(), 0.0, x, 1e-14, 1e-13, 256)
                .unwrap()
                .value;
            let oracle = (-x * x).exp() * inner;
            assert_relative_eq!(dawson(x), oracle, max_relative = 1e-12);
        }
    }

    #[test]
    fn error_estimates_are_sane() {
        let r = hyp1f1(-1.5, 0.5, 12.0).unwrap();
        assert!(r.abs_error_estimate >= 0.0);
        assert!(r.abs_error_estimate < 1e-9 * r.value.abs().max(1.0));
        assert!(r.terms_used <= SERIES_TERM_CAP);
    }
}
