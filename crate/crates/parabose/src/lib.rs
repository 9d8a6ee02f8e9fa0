//! Statistics of displaced-vacuum states of the para-Bose oscillator of
//! order p, where the ladder operators obey
//! `[A, A†] = 1 + (p-1)Π`, `{A, A†} = 2n + p`.
//!
//! The crate evaluates the closed-form Fock amplitudes, occupation
//! probabilities, overlaps, excitation-number moments, Mandel Q parameter,
//! field-quadrature statistics, and the Robertson uncertainty bound of the
//! states `|p; α⟩ = exp(αA† - α*A)|p; 0⟩`, and cross-checks every one of
//! them against an independent truncated-Fock-space matrix oracle built
//! from nothing but the commutation relations.
//!
//! Module map:
//! * [`specfun`] — error-aware ₁F₁ / ₂F₂ / Dawson / digamma / Pochhammer;
//! * [`quad`] — adaptive Gauss-Kronrod quadrature with tail extension;
//! * [`state`] — amplitudes, occupation probabilities, overlaps, and the
//!   resolution-of-identity integrals;
//! * [`moments`] — every expectation value in analytic, asymptotic, and
//!   direct-sum form;
//! * [`oracle`] — the brute-force truncated matrix representation.

pub mod error;
pub mod moments;
pub mod oracle;
pub mod quad;
pub mod report;
pub mod specfun;
pub mod state;

pub use error::{Error, Result};
pub use report::{Method, MomentReport};
pub use state::{Order, Parity};

/// Complex displacement parameter α.
pub type Complex = num_complex::Complex64;
