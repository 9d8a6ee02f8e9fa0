//! Para-Bose displaced-vacuum states: Fock amplitudes, occupation
//! probabilities, overlaps, and the resolution-of-identity integrals.
//!
//! The state family is `|p; α⟩ = exp(αA† - α*A)|p; 0⟩`. Its Fock
//! decomposition splits by parity; with n = 2j or 2j+1,
//!
//! ```text
//! ⟨p; 2j  |p; α⟩ = e^{-|α|²/2} (√2 α)^{2j}/(2j)!  √(j! (p/2)_j)
//!                    ₁F₁((1-p)/2, j+1/2; |α|²/2)
//! ⟨p; 2j+1|p; α⟩ = e^{-|α|²/2} (√2 α)^{2j+1}/(2j+1)! √(j! (p/2)_{j+1})
//!                    ₁F₁((1-p)/2, j+3/2; |α|²/2)
//! ```
//!
//! Amplitudes combine enormous factorials with tiny powers, so all
//! magnitudes are assembled in log space and exponentiated once.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad;
use crate::specfun::{hyp1f1, hyp1f1_damped, ln_factorial, ln_pochhammer};

/// Para-Bose order p ≥ 1; p = 1 is the standard boson.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Order(u32);

impl Order {
    pub fn new(p: u32) -> Result<Order> {
        if p == 0 {
            return Err(Error::InvalidParameter {
                what: "para-Bose order must be >= 1",
            });
        }
        Ok(Order(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0)
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Fock-space parity sector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Truncation dimension guaranteeing that the neglected probability mass of
/// |p; α⟩ stays below ~1e-12 across the supported parameter range.
pub fn truncation_dim(order: Order, alpha: Complex64) -> usize {
    let a = alpha.norm();
    (a * a + 10.0 * a + order.as_f64() + 20.0).ceil() as usize
}

/// `⟨n-1|A|n⟩` forced by the commutation relations together with A|p;0⟩ = 0:
/// √n on even n, √(n-1+p) on odd n.
#[allow(clippy::manual_is_multiple_of)]
pub(crate) fn ladder_coefficient(order: Order, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else if n % 2 == 0 {
        (n as f64).sqrt()
    } else {
        ((n - 1) as f64 + order.as_f64()).sqrt()
    }
}

struct AmplitudeParts {
    ln_magnitude: f64,
    sign: f64,
}

/// Log-magnitude and sign of the real amplitude factor for |α| > 0.
#[allow(clippy::manual_is_multiple_of)]
fn amplitude_parts(order: Order, alpha_mod: f64, n: usize) -> Result<AmplitudeParts> {
    let p = order.as_f64();
    let a = (1.0 - p) / 2.0;
    let z = alpha_mod * alpha_mod / 2.0;
    let (j, b, poch) = if n % 2 == 0 {
        let j = n / 2;
        (j, j as f64 + 0.5, ln_pochhammer(p / 2.0, j as u32))
    } else {
        let j = (n - 1) / 2;
        (j, j as f64 + 1.5, ln_pochhammer(p / 2.0, j as u32 + 1))
    };
    let hyp = hyp1f1(a, b, z)?;
    if hyp.value == 0.0 {
        return Ok(AmplitudeParts {
            ln_magnitude: f64::NEG_INFINITY,
            sign: 0.0,
        });
    }
    let ln_magnitude = -alpha_mod * alpha_mod / 2.0
        + n as f64 * (0.5 * std::f64::consts::LN_2 + alpha_mod.ln())
        - ln_factorial(n as u64)
        + 0.5 * (ln_factorial(j as u64) + poch.1)
        + hyp.value.abs().ln();
    Ok(AmplitudeParts {
        ln_magnitude,
        sign: hyp.value.signum() * poch.0.signum(),
    })
}

/// Fock amplitude ⟨p; n|p; α⟩. The phase is exactly αⁿ's phase times the
/// sign of the real hypergeometric factor; there is no rephasing of the
/// Fock basis.
pub fn fock_amplitude(order: Order, alpha: Complex64, n: usize) -> Result<Complex64> {
    let am = alpha.norm();
    if am == 0.0 {
        return Ok(if n == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        });
    }
    let parts = amplitude_parts(order, am, n)?;
    let magnitude = parts.sign * parts.ln_magnitude.exp();
    let phase = Complex64::from_polar(1.0, alpha.arg() * n as f64);
    Ok(magnitude * phase)
}

/// Occupation probability P(n) = |⟨p; n|p; α⟩|², evaluated from its own
/// closed form (parity-split, in log space).
#[allow(clippy::manual_is_multiple_of)]
pub fn occupation_probability(order: Order, alpha: Complex64, n: usize) -> Result<f64> {
    let am = alpha.norm();
    if am == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    let p = order.as_f64();
    let a = (1.0 - p) / 2.0;
    let z = am * am / 2.0;
    let n_f = n as f64;
    // 2^n (|α|^n / n!)^2 e^{-|α|^2} × parity factor × ₁F₁²
    let (half_fact, poch, b) = if n % 2 == 0 {
        let j = n / 2;
        (
            ln_factorial(j as u64),
            ln_pochhammer(p / 2.0, j as u32),
            (n_f + 1.0) / 2.0,
        )
    } else {
        let j = (n - 1) / 2;
        (
            ln_factorial(j as u64),
            ln_pochhammer(p / 2.0, j as u32 + 1),
            (n_f + 2.0) / 2.0,
        )
    };
    let hyp = hyp1f1(a, b, z)?;
    if hyp.value == 0.0 {
        return Ok(0.0);
    }
    let ln_p = n_f * std::f64::consts::LN_2 + 2.0 * (n_f * am.ln() - ln_factorial(n as u64))
        - am * am
        + half_fact
        + poch.1
        + 2.0 * hyp.value.abs().ln();
    Ok(ln_p.exp())
}

/// Truncated amplitude vector of one state with its declared tail bound.
#[derive(Clone, Debug)]
pub struct FockAmplitudes {
    pub order: Order,
    pub alpha: Complex64,
    amplitudes: Vec<Complex64>,
    tail_bound: f64,
}

impl FockAmplitudes {
    /// Build with the default truncation rule.
    pub fn build(order: Order, alpha: Complex64) -> Result<FockAmplitudes> {
        Self::with_truncation(order, alpha, truncation_dim(order, alpha))
    }

    /// Build with an explicit truncation dimension.
    pub fn with_truncation(order: Order, alpha: Complex64, n: usize) -> Result<FockAmplitudes> {
        if n == 0 {
            return Err(Error::InvalidParameter {
                what: "truncation must be positive",
            });
        }
        let mut amplitudes = Vec::with_capacity(n);
        let mut mass = 0.0;
        for k in 0..n {
            let c = fock_amplitude(order, alpha, k)?;
            mass += c.norm_sqr();
            amplitudes.push(c);
        }
        // the computed deficit is itself the bound, padded for the rounding
        // of the summation
        let tail_bound = (1.0 - mass).abs() + 5e-15 * n as f64;
        Ok(FockAmplitudes {
            order,
            alpha,
            amplitudes,
            tail_bound,
        })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn truncation(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn probability(&self, n: usize) -> f64 {
        self.amplitudes.get(n).map_or(0.0, |c| c.norm_sqr())
    }
}

/// State descriptor |p; α⟩.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParaBoseState {
    pub order: Order,
    pub alpha: Complex64,
}

impl ParaBoseState {
    pub fn new(order: Order, alpha: Complex64) -> ParaBoseState {
        ParaBoseState { order, alpha }
    }

    pub fn amplitude(&self, n: usize) -> Result<Complex64> {
        fock_amplitude(self.order, self.alpha, n)
    }

    pub fn probability(&self, n: usize) -> Result<f64> {
        occupation_probability(self.order, self.alpha, n)
    }

    pub fn amplitudes(&self) -> Result<FockAmplitudes> {
        FockAmplitudes::build(self.order, self.alpha)
    }
}

/// Overlap ⟨p; α|p; β⟩ from the closed-form double series
/// `e^{-(|α|²+|β|²)/2} Σ_j [ (α*β)^{2j}/(2j)! A_j + (α*β)^{2j+1}/(2j+1)! A_{j+1} ]`
/// with `A_j = (p/2)_j/(1/2)_j ₁F₁(a, j+1/2; |α|²/2) ₁F₁(a, j+1/2; |β|²/2)`.
pub fn overlap(order: Order, alpha: Complex64, beta: Complex64) -> Result<Complex64> {
    let p = order.as_f64();
    let a = (1.0 - p) / 2.0;
    let za = alpha.norm_sqr() / 2.0;
    let zb = beta.norm_sqr() / 2.0;
    let ab = alpha.conj() * beta;

    let mut sum = Complex64::new(0.0, 0.0);
    // w_m = (α*β)^m / m!, R_j = (p/2)_j / (1/2)_j, both updated in place
    let mut w = Complex64::new(1.0, 0.0);
    let mut ratio = 1.0f64;
    let mut consecutive_small = 0;
    for j in 0..2048usize {
        let jf = j as f64;
        let fa = hyp1f1(a, jf + 0.5, za)?.value;
        let fb = hyp1f1(a, jf + 0.5, zb)?.value;
        let even = w * (ratio * fa * fb);

        let ratio_next = ratio * (p / 2.0 + jf) / (0.5 + jf);
        let ga = hyp1f1(a, jf + 1.5, za)?.value;
        let gb = hyp1f1(a, jf + 1.5, zb)?.value;
        let w_odd = w * ab / (2.0 * jf + 1.0);
        let odd = w_odd * (ratio_next * ga * gb);

        sum += even + odd;
        let increment = even.norm() + odd.norm();
        if increment < 1e-14 {
            consecutive_small += 1;
            if consecutive_small >= 5 {
                let damp = (-(za + zb)).exp();
                return Ok(sum * damp);
            }
        } else {
            consecutive_small = 0;
        }
        w = w_odd * ab / (2.0 * jf + 2.0);
        ratio = ratio_next;
    }
    Err(Error::NonConvergence {
        what: "overlap series",
        error_estimate: f64::NAN,
        terms: 2048,
    })
}

/// Relative deviation of the numerically integrated resolution-of-identity
/// radial integral from its closed form.
///
/// Even sector: `∫₀^∞ r^{4j+1} e^{-r²} ₁F₁²((1-p)/2, j+1/2; r²/2) dr`
/// against `[(2j)!]² / (2^{2j+1} j! (p/2)_j)`; odd sector analogously with
/// `j+3/2`, `r^{4j+3}`, and `[(2j+1)!]² / (2^{2j+2} j! (p/2)_{j+1})`.
///
/// For even p the integrand decays only algebraically (r^{1-2p}), so the
/// integral is carried over geometrically extended panels instead of a
/// fixed cutoff.
pub fn identity_resolution_residual(order: Order, j: u32, parity: Parity) -> Result<f64> {
    let p = order.as_f64();
    let a = (1.0 - p) / 2.0;
    let (b, power, ln_closed) = match parity {
        Parity::Even => (
            j as f64 + 0.5,
            4 * j + 1,
            2.0 * ln_factorial(2 * j as u64)
                - (2.0 * j as f64 + 1.0) * std::f64::consts::LN_2
                - ln_factorial(j as u64)
                - ln_pochhammer(p / 2.0, j).1,
        ),
        Parity::Odd => (
            j as f64 + 1.5,
            4 * j + 3,
            2.0 * ln_factorial(2 * j as u64 + 1)
                - (2.0 * j as f64 + 2.0) * std::f64::consts::LN_2
                - ln_factorial(j as u64)
                - ln_pochhammer(p / 2.0, j + 1).1,
        ),
    };
    let closed = ln_closed.exp();
    let integrand = move |r: f64| -> f64 {
        if r == 0.0 {
            return 0.0;
        }
        // e^{-r²} ₁F₁² = (e^{-r²/2} ₁F₁)², which the damped kernel forms
        // without the overflowing exponential halves
        let phi = hyp1f1_damped(a, b, r * r / 2.0)
            .map(|e| e.value)
            .unwrap_or(f64::NAN);
        r.powi(power as i32) * phi * phi
    };
    let r0 = 8.0f64.max((2.0 * (4.0 * j as f64 + 3.0)).sqrt() + 10.0);
    let q = quad::integrate_with_tail(integrand, r0, 1e-12 * closed.max(1.0), 1e-11, 1e-11)?;
    if !q.value.is_finite() {
        return Err(Error::NonConvergence {
            what: "identity-resolution integrand",
            error_estimate: f64::NAN,
            terms: q.intervals,
        });
    }
    Ok((q.value - closed) / closed)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen reference digits
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn boson_amplitudes_are_coherent_state() {
        // p = 1 must reduce to e^{-|α|²/2} αⁿ/√(n!)
        let p1 = Order::new(1).unwrap();
        let alpha = c(0.8, -0.3);
        for n in 0..25 {
            let expect = (-alpha.norm_sqr() / 2.0).exp() * alpha.powu(n as u32)
                / ln_factorial(n as u64).exp().sqrt();
            let got = fock_amplitude(p1, alpha, n).unwrap();
            assert!((got - expect).norm() <= 1e-13 * expect.norm().max(1e-12));
        }
    }

    #[test]
    fn vacuum_is_trivial() {
        let p5 = Order::new(5).unwrap();
        assert_eq!(fock_amplitude(p5, c(0.0, 0.0), 0).unwrap(), c(1.0, 0.0));
        assert_eq!(fock_amplitude(p5, c(0.0, 0.0), 3).unwrap(), c(0.0, 0.0));
        assert_eq!(occupation_probability(p5, c(0.0, 0.0), 0).unwrap(), 1.0);
    }

    #[test]
    fn fixed_amplitude_value() {
        // frozen from the defining series in extended precision
        let got = fock_amplitude(Order::new(3).unwrap(), c(1.0, 0.0), 2).unwrap();
        assert_relative_eq!(got.re, 0.49523020988320327, max_relative = 1e-11);
        assert_eq!(got.im, 0.0);
    }

    #[test]
    fn probability_closed_form_matches_amplitude_square() {
        for p in [1u32, 2, 3, 4, 6, 9] {
            let order = Order::new(p).unwrap();
            for alpha in [c(0.5, 0.0), c(1.0, 1.0), c(10f64.sqrt(), 0.0)] {
                for n in 0..40 {
                    let prob = occupation_probability(order, alpha, n).unwrap();
                    let amp2 = fock_amplitude(order, alpha, n).unwrap().norm_sqr();
                    if prob > 1e-300 {
                        assert_relative_eq!(prob, amp2, max_relative = 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn fixed_probability_value() {
        // e^{-10} ₁F₁(-1/2, 1/2; 5)²
        let got = occupation_probability(Order::new(2).unwrap(), c(10f64.sqrt(), 0.0), 0).unwrap();
        assert_relative_eq!(got, 0.024664981861574277932, max_relative = 1e-11);
    }

    #[test]
    fn poisson_occupation_for_bosons() {
        let order = Order::new(1).unwrap();
        let alpha = c(10f64.sqrt(), 0.0);
        for n in 0..30usize {
            let pmf = (-10.0f64).exp() * 10f64.powi(n as i32) / ln_factorial(n as u64).exp();
            assert_relative_eq!(
                occupation_probability(order, alpha, n).unwrap(),
                pmf,
                max_relative = 1e-11
            );
        }
    }

    #[test]
    fn normalization_over_grid() {
        for p in 1..=8u32 {
            let order = Order::new(p).unwrap();
            for am in [0.5, 1.0, 10f64.sqrt(), 15f64.sqrt()] {
                let amps = FockAmplitudes::build(order, c(am, 0.0)).unwrap();
                let mass: f64 = amps.amplitudes().iter().map(|c| c.norm_sqr()).sum();
                assert!(
                    (mass - 1.0).abs() <= 1e-10,
                    "p={p} |α|={am}: mass deviates by {:.2e}",
                    mass - 1.0
                );
                assert!((1.0 - mass).abs() <= amps.tail_bound());
            }
        }
    }

    #[test]
    fn real_alpha_gives_real_amplitudes() {
        let amps = FockAmplitudes::build(Order::new(4).unwrap(), c(1.7, 0.0)).unwrap();
        for a in amps.amplitudes() {
            assert_eq!(a.im, 0.0);
        }
    }

    #[test]
    fn amplitude_phase_is_n_times_arg_alpha() {
        let order = Order::new(3).unwrap();
        let alpha = Complex64::from_polar(1.3, 0.77);
        for n in 0..12 {
            let a = fock_amplitude(order, alpha, n).unwrap();
            if a.norm() > 1e-12 {
                let expected = 0.77 * n as f64;
                let got = a.arg();
                let diff = (got - expected).rem_euclid(std::f64::consts::PI);
                let diff = diff.min(std::f64::consts::PI - diff);
                assert!(diff < 1e-10, "n={n}: phase {got} vs {expected}");
            }
        }
    }

    #[test]
    fn overlap_normalization_and_boson_limit() {
        let order = Order::new(5).unwrap();
        let alpha = c(1.2, 0.4);
        let s = overlap(order, alpha, alpha).unwrap();
        assert_relative_eq!(s.re, 1.0, max_relative = 1e-11);
        assert!(s.im.abs() < 1e-12);

        // p = 1: e^{-(|α|²+|β|²)/2 + α*β}
        let p1 = Order::new(1).unwrap();
        let (a, b) = (c(0.7, -0.2), c(-0.4, 1.1));
        let expect = ((-(a.norm_sqr() + b.norm_sqr()) / 2.0) + a.conj() * b).exp();
        let got = overlap(p1, a, b).unwrap();
        assert!((got - expect).norm() < 1e-12);
    }

    #[test]
    fn fixed_overlap_value() {
        let got = overlap(Order::new(4).unwrap(), c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        assert_relative_eq!(got.re, -0.094756898372806791974, max_relative = 1e-10);
        assert_relative_eq!(got.im, 0.1823245138234124838, max_relative = 1e-10);
    }

    #[test]
    fn overlap_matches_amplitude_inner_product() {
        for p in [2u32, 4, 7] {
            let order = Order::new(p).unwrap();
            let pairs = [
                (c(1.0, 0.0), c(0.0, 1.0)),
                (c(0.5, 0.5), c(1.2, -0.3)),
                (c(2.0, 0.0), c(1.5, 1.0)),
            ];
            for (alpha, beta) in pairs {
                let n = truncation_dim(order, alpha).max(truncation_dim(order, beta));
                let va = FockAmplitudes::with_truncation(order, alpha, n).unwrap();
                let vb = FockAmplitudes::with_truncation(order, beta, n).unwrap();
                let inner: Complex64 = va
                    .amplitudes()
                    .iter()
                    .zip(vb.amplitudes())
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let closed = overlap(order, alpha, beta).unwrap();
                assert!(
                    (closed - inner).norm() < 1e-9,
                    "p={p} α={alpha} β={beta}: {closed} vs {inner}"
                );
            }
        }
    }

    #[test]
    fn identity_resolution_gaussian_moments() {
        // p = 1: the hypergeometric factor is 1 and the integrals are plain
        // Gamma-function moments
        let p1 = Order::new(1).unwrap();
        assert!(
            identity_resolution_residual(p1, 0, Parity::Even)
                .unwrap()
                .abs()
                < 1e-10
        );
        assert!(
            identity_resolution_residual(p1, 1, Parity::Odd)
                .unwrap()
                .abs()
                < 1e-10
        );
    }

    #[test]
    fn identity_resolution_derived_case() {
        let p6 = Order::new(6).unwrap();
        let r = identity_resolution_residual(p6, 3, Parity::Even).unwrap();
        assert!(r.abs() < 1e-8, "residual {r:.2e}");
    }

    #[test]
    fn truncation_rule_scales() {
        let p2 = Order::new(2).unwrap();
        assert_eq!(truncation_dim(p2, c(0.0, 0.0)), 22);
        assert!(truncation_dim(p2, c(10f64.sqrt(), 0.0)) >= 63);
    }
}
