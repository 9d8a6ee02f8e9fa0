//! Brute-force ground truth: dense matrix representation of the para-Bose
//! algebra on a truncated Fock space, and direct construction of the
//! displaced vacuum `exp(αA† - α*A)|p; 0⟩`.
//!
//! The ladder matrix elements are not taken from the closed form used
//! elsewhere in the crate; they are rebuilt here by recursion from the
//! commutator alone, `s_{n+1}² = s_n² + 1 + (p-1)(-1)ⁿ` with `s_0 = 0`, so
//! the two routes stay independent and the tests can cross-check them.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::report::{Method, MomentReport};
use crate::state::{truncation_dim, Order};

/// Dense matrices for A, A†, n̂, and the parity operator Π on the first
/// `dim` Fock states. Immutable after construction and freely shareable
/// across threads.
#[derive(Clone, Debug)]
pub struct TruncatedOperators {
    pub order: Order,
    pub dim: usize,
    pub a_lower: Array2<f64>,
    pub a_raise: Array2<f64>,
    pub number_op: Array2<f64>,
    pub parity: Array2<f64>,
    ladder: Vec<f64>,
}

impl TruncatedOperators {
    /// `⟨n-1|A|n⟩` for n in `0..=dim`, as derived by the recursion.
    pub fn ladder(&self) -> &[f64] {
        &self.ladder
    }
}

/// Build the truncated operators of order p. The last row/column of the
/// bilinear relations is truncation-corrupted by construction; every
/// exactness statement holds on the interior.
pub fn build_operators(order: Order, dim: usize) -> TruncatedOperators {
    assert!(dim >= 2, "need at least a two-dimensional Fock space");
    let p = order.as_f64();
    // s_{n+1}^2 = s_n^2 + [A, A†]_n with [A, A†]_n = 1 + (p-1)(-1)^n
    let mut ladder = vec![0.0; dim + 1];
    let mut sq = 0.0;
    for n in 0..dim {
        sq += 1.0 + (p - 1.0) * if n % 2 == 0 { 1.0 } else { -1.0 };
        ladder[n + 1] = sq.sqrt();
    }
    let mut a_lower = Array2::zeros((dim, dim));
    for n in 1..dim {
        a_lower[(n - 1, n)] = ladder[n];
    }
    let a_raise = a_lower.t().to_owned();
    let mut number_op = Array2::zeros((dim, dim));
    let mut parity = Array2::zeros((dim, dim));
    for n in 0..dim {
        number_op[(n, n)] = n as f64;
        parity[(n, n)] = if n % 2 == 0 { 1.0 } else { -1.0 };
    }
    TruncatedOperators {
        order,
        dim,
        a_lower,
        a_raise,
        number_op,
        parity,
        ladder,
    }
}

/// Norm kept per Taylor substep; keeps every intermediate term of the
/// exponential series O(e^2) so rounding cannot pile up.
const STEP_NORM: f64 = 2.0;

/// `exp(αA† - α*A)|p; 0⟩` on the truncated space.
///
/// The generator is applied term by term to the vacuum vector (it is
/// banded, so one application is O(dim)); the displacement is split into
/// substeps along the ray `α/m`, which is exact because colinear
/// generators commute. Term recursion stops at 1e-16 of the running norm.
pub fn displace_vacuum(ops: &TruncatedOperators, alpha: Complex64) -> Result<Vec<Complex64>> {
    let dim = ops.dim;
    let needed = truncation_dim(ops.order, alpha);
    if dim < needed {
        log::warn!(
            "truncated space dim {dim} is below the rule {needed} for |alpha| = {:.3}; \
             expect norm loss",
            alpha.norm()
        );
    }
    let gnorm = 2.0 * alpha.norm() * ops.ladder[dim];
    let steps = (gnorm / STEP_NORM).ceil().max(1.0) as usize;
    let sub = alpha / steps as f64;
    let sub_conj = sub.conj();

    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    v[0] = Complex64::new(1.0, 0.0);
    let mut term = vec![Complex64::new(0.0, 0.0); dim];
    let mut next = vec![Complex64::new(0.0, 0.0); dim];
    for _ in 0..steps {
        term.copy_from_slice(&v);
        let mut k = 0usize;
        loop {
            k += 1;
            // next = (α A† - α* A) term / k
            for (n, slot) in next.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                if n > 0 {
                    acc += sub * ops.ladder[n] * term[n - 1];
                }
                if n + 1 < dim {
                    acc -= sub_conj * ops.ladder[n + 1] * term[n + 1];
                }
                *slot = acc / k as f64;
            }
            std::mem::swap(&mut term, &mut next);
            let mut tn = 0.0;
            for (dst, t) in v.iter_mut().zip(&term) {
                *dst += t;
                tn += t.norm_sqr();
            }
            if tn.sqrt() < 1e-16 && k > 3 {
                break;
            }
            if k > 10_000 {
                return Err(Error::NonConvergence {
                    what: "displacement Taylor series",
                    error_estimate: tn.sqrt(),
                    terms: k,
                });
            }
        }
    }
    let norm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(Error::TruncationTooSmall {
            norm_deviation: (norm - 1.0).abs(),
            dim,
        });
    }
    // The truncated generator is exactly anti-Hermitian, so an undersized
    // space reflects probability off the top edge instead of losing norm;
    // mass stranded on the last two levels is the fingerprint of that.
    let edge_mass = v[dim - 1].norm_sqr() + v[dim - 2].norm_sqr();
    if edge_mass > 1e-10 {
        return Err(Error::TruncationTooSmall {
            norm_deviation: edge_mass,
            dim,
        });
    }
    Ok(v)
}

/// Matrix expectations ⟨n̂⟩, ⟨n̂²⟩, ⟨X̂⟩, ⟨X̂²⟩, ⟨Ŷ⟩, ⟨Ŷ²⟩, ⟨Π̂⟩ of a
/// normalized state vector, assembled into a [`MomentReport`].
///
/// X̂² couples n to n±2, so the operators must extend at least two levels
/// past the state's support or the top amplitudes would see a clipped
/// operator.
pub fn oracle_moments(ops: &TruncatedOperators, state: &[Complex64]) -> Result<MomentReport> {
    if state.len() > ops.dim {
        return Err(Error::InvalidParameter {
            what: "state vector longer than operator dimension",
        });
    }
    let norm: f64 = state.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(Error::TruncationTooSmall {
            norm_deviation: (norm - 1.0).abs(),
            dim: ops.dim,
        });
    }
    // clipped X̂² couplings enter through products of two top-edge
    // amplitudes, so anything below 1e-10 cannot move a moment at the
    // 1e-8 level
    let support = state.iter().rposition(|c| c.norm() > 1e-10).unwrap_or(0);
    if support + 2 >= ops.dim {
        return Err(Error::TruncationTooSmall {
            norm_deviation: state[support].norm(),
            dim: ops.dim,
        });
    }
    let p = ops.order.as_f64();
    let s = &ops.ladder;

    let mut mean_n = 0.0;
    let mut mean_n2 = 0.0;
    let mut mean_parity = 0.0;
    let mut anticomm = 0.0; // ⟨{A, A†}⟩ accumulated from the ladder
    for (n, c) in state.iter().enumerate() {
        let pr = c.norm_sqr();
        mean_n += n as f64 * pr;
        mean_n2 += (n * n) as f64 * pr;
        mean_parity += if n % 2 == 0 { pr } else { -pr };
        anticomm += (s[n] * s[n] + s[n + 1] * s[n + 1]) * pr;
    }
    // ⟨A†⟩ and ⟨A†²⟩ from the band structure
    let mut a_dag = Complex64::new(0.0, 0.0);
    let mut a_dag2 = Complex64::new(0.0, 0.0);
    for n in 0..state.len() {
        if n + 1 < state.len() {
            a_dag += state[n + 1].conj() * s[n + 1] * state[n];
        }
        if n + 2 < state.len() {
            a_dag2 += state[n + 2].conj() * s[n + 2] * s[n + 1] * state[n];
        }
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    let mean_x = sqrt2 * a_dag.re;
    let mean_y = -sqrt2 * a_dag.im;
    let x2 = a_dag2.re + 0.5 * anticomm;
    let y2 = -a_dag2.re + 0.5 * anticomm;
    let var_x = x2 - mean_x * mean_x;
    let var_y = y2 - mean_y * mean_y;
    let var_n = mean_n2 - mean_n * mean_n;
    Ok(MomentReport {
        mean_n,
        var_n,
        mandel_q: if mean_n > 0.0 {
            (var_n - mean_n) / mean_n
        } else {
            f64::NAN
        },
        mean_x,
        mean_y,
        var_x,
        var_y,
        uncertainty_product: (var_x * var_y).sqrt(),
        robertson_bound: 0.5 * (1.0 + (p - 1.0) * mean_parity).abs(),
        method: Method::Oracle,
    })
}
