//! Shared parameter grids for the benchmarks.

use num_complex::Complex64;
use parabose::state::Order;

/// Orders spanning the boson case, both special branches, and a generic one.
pub fn bench_orders() -> Vec<Order> {
    [1u32, 2, 4, 7]
        .iter()
        .map(|&p| Order::new(p).expect("static orders are valid"))
        .collect()
}

/// Displacement parameters from perturbative to figure-scale.
pub fn bench_alphas() -> Vec<Complex64> {
    vec![
        Complex64::new(0.5, 0.0),
        Complex64::new(1.0, 1.0),
        Complex64::new(10f64.sqrt(), 0.0),
    ]
}
