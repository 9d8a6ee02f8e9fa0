//! Cross-module checks: the closed forms against the truncated-matrix
//! oracle, and the two routes to every quantity that has two routes.

use num_complex::Complex64;
use parabose::moments::{self, aux};
use parabose::oracle;
use parabose::state::{self, Order, Parity};
use parabose::{Method, MomentReport};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ord(p: u32) -> Order {
    Order::new(p).unwrap()
}

/// |a - b| <= tol * max(|a|, |b|) with an absolute floor of tol * 1e-2.
fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-2)
}

#[test]
fn amplitudes_match_displaced_vacuum() {
    for p in 1..=6u32 {
        let order = ord(p);
        for alpha in [c(0.5, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(2.5, -2.0)] {
            let dim = state::truncation_dim(order, alpha);
            let ops = oracle::build_operators(order, dim);
            let v = oracle::displace_vacuum(&ops, alpha).unwrap();
            for (n, oracle_amp) in v.iter().enumerate() {
                let closed = state::fock_amplitude(order, alpha, n).unwrap();
                let dev = (closed - oracle_amp).norm();
                assert!(
                    dev <= 1e-8 * oracle_amp.norm().max(1e-2),
                    "p={p} α={alpha} n={n}: dev {dev:.2e}"
                );
            }
        }
    }
}

#[test]
fn closed_form_probabilities_match_oracle_distribution() {
    let order = ord(2);
    let alpha = c(10f64.sqrt(), 0.0);
    let dim = state::truncation_dim(order, alpha);
    let ops = oracle::build_operators(order, dim);
    let v = oracle::displace_vacuum(&ops, alpha).unwrap();
    for (n, amp) in v.iter().enumerate() {
        let p_closed = state::occupation_probability(order, alpha, n).unwrap();
        let p_oracle = amp.norm_sqr();
        assert!(
            (p_closed - p_oracle).abs() <= 1e-8 * p_oracle.max(1e-10),
            "n={n}: {p_closed} vs {p_oracle}"
        );
    }
}

#[test]
fn analytic_reports_match_oracle_reports() {
    for p in 1..=6u32 {
        let order = ord(p);
        for alpha in [c(0.5, 0.0), c(1.0, 1.0), c(10f64.sqrt(), 0.0)] {
            let a = moments::moment_report(order, alpha, Method::Analytic).unwrap();
            let o = moments::moment_report(order, alpha, Method::Oracle).unwrap();
            let d = a.max_discrepancy(&o);
            assert!(d < 1e-8, "p={p} α={alpha}: max discrepancy {d:.2e}");
        }
    }
}

#[test]
fn quadrature_means_match_oracle_expectation() {
    let order = ord(4);
    let alpha = c(1.0, 1.0);
    let (x, y) = moments::quadrature_means(order, alpha).unwrap();
    let o = moments::moment_report(order, alpha, Method::Oracle).unwrap();
    assert!(close(x, o.mean_x, 1e-8), "{x} vs {}", o.mean_x);
    assert!(close(y, o.mean_y, 1e-8), "{y} vs {}", o.mean_y);
}

#[test]
fn asymmetric_quadrature_variances_off_axis() {
    // for complex α with α² ∉ ℝ the two variances split (p = 2)
    let order = ord(2);
    let alpha = Complex64::from_polar(10f64.sqrt(), 0.6);
    let (vx, vy) = moments::quadrature_variances(order, alpha).unwrap();
    assert!((vx - vy).abs() > 1e-3, "expected split, got {vx} vs {vy}");
    let o = moments::moment_report(order, alpha, Method::Oracle).unwrap();
    assert!(close(vx, o.var_x, 1e-8));
    assert!(close(vy, o.var_y, 1e-8));
}

#[test]
fn robertson_bound_matches_oracle_parity() {
    for p in [2u32, 3, 5] {
        let order = ord(p);
        for alpha in [c(1.0, 0.0), c(0.7, 0.9)] {
            let b = moments::robertson_bound(order, alpha).unwrap();
            let o = moments::moment_report(order, alpha, Method::Oracle).unwrap();
            assert!(close(b, o.robertson_bound, 1e-8));
        }
    }
}

#[test]
fn displaced_vacuum_has_no_parity_selection_rule() {
    // both parity sectors carry mass; isolated accidental nodes exist (at
    // p=3, α=1 the n=0 amplitude is an exact zero of the terminating
    // polynomial) but no sector is emptied
    let order = ord(3);
    let alpha = c(0.9, 0.0);
    let ops = oracle::build_operators(order, state::truncation_dim(order, alpha));
    let v = oracle::displace_vacuum(&ops, alpha).unwrap();
    let even: f64 = v.iter().step_by(2).map(|x| x.norm_sqr()).sum();
    let odd: f64 = v.iter().skip(1).step_by(2).map(|x| x.norm_sqr()).sum();
    assert!(even > 0.05 && odd > 0.05, "even {even}, odd {odd}");
    for (n, amp) in v.iter().enumerate().take(12) {
        assert!(amp.norm() > 1e-12, "unexpected node at n={n}");
    }
}

#[test]
fn identity_resolution_over_module_grid() {
    for p in [2u32, 5, 7] {
        for j in [0u32, 2, 6] {
            for parity in [Parity::Even, Parity::Odd] {
                let r = state::identity_resolution_residual(ord(p), j, parity).unwrap();
                assert!(r.abs() < 1e-8, "p={p} j={j} {parity:?}: residual {r:.2e}");
            }
        }
    }
}

#[test]
fn direct_sum_tracks_analytic_across_orders() {
    // every p routes to exactly one branch and lands on the direct sum
    for p in 1..=10u32 {
        let order = ord(p);
        let alpha = c(10f64.sqrt(), 0.0);
        let a = moments::moment_report(order, alpha, Method::Analytic).unwrap();
        let d = moments::moment_report(order, alpha, Method::DirectSum).unwrap();
        let dev = a.max_discrepancy(&d);
        assert!(dev < 1e-8, "p={p}: {dev:.2e}");
    }
}

#[test]
fn aux_g_limit_and_mean_variance_excess() {
    // g -> 1 for p > 2 drives σ²ₙ > ⟨n̂⟩ at large |α|
    for p in 2..=10u32 {
        let order = ord(p);
        let alpha = c(10.0, 0.0);
        let m = moments::mean_n(order, alpha, Method::Analytic).unwrap();
        let v = moments::variance_n(order, alpha, Method::Analytic).unwrap();
        assert!(v > m, "p={p}: var {v} <= mean {m}");
        let q = moments::mandel_q(order, alpha, Method::Analytic).unwrap();
        assert!(q > 0.0, "p={p}: Q = {q}");
    }
    assert!((aux::g_of(ord(5), 10.0).unwrap() - 1.0).abs() < 1e-10);
}

#[test]
fn report_uncertainty_exceeds_bound_everywhere() {
    for p in 1..=6u32 {
        let order = ord(p);
        for alpha in [
            c(0.5, 0.0),
            c(1.0, 1.0),
            c(10f64.sqrt(), 0.0),
            c(0.0, 15f64.sqrt()),
        ] {
            let r: MomentReport = moments::moment_report(order, alpha, Method::Analytic).unwrap();
            assert!(
                r.uncertainty_product >= r.robertson_bound - 1e-10,
                "p={p} α={alpha}: product {} below bound {}",
                r.uncertainty_product,
                r.robertson_bound
            );
            if p >= 2 {
                assert!(
                    r.uncertainty_product - r.robertson_bound > 1e-6,
                    "p={p} α={alpha}: uncertainty not strictly above bound"
                );
            }
        }
    }
}

#[test]
fn asymptotic_product_tracks_analytic_off_axis() {
    // at complex phase the cross term of (σXσY)² is live; the asymptotic
    // form must still land within 1% at |α| = 12
    for p in [2u32, 3, 5] {
        let order = ord(p);
        let alpha = Complex64::from_polar(12.0, std::f64::consts::FRAC_PI_4);
        let exact = moments::uncertainty_product(order, alpha).unwrap();
        let asym = moments::moment_report(order, alpha, Method::Asymptotic)
            .unwrap()
            .uncertainty_product;
        let rel = ((asym - exact) / exact).abs();
        assert!(rel < 0.01, "p={p}: off-axis product error {rel:.3e}");
    }
}

#[test]
fn asymptotic_errors_shrink_along_the_guard_grid() {
    // relative error of each asymptotic statistic vs the analytic one is
    // nonincreasing over |α| ∈ {3, 5, 8, 12} and below 1% at 12
    for p in [2u32, 3, 4, 5, 8] {
        let order = ord(p);
        let mut prev = [f64::INFINITY; 5];
        for (i, am) in [3.0f64, 5.0, 8.0, 12.0].into_iter().enumerate() {
            let alpha = c(am, 0.0);
            let a = moments::moment_report(order, alpha, Method::Analytic).unwrap();
            let s = moments::moment_report(order, alpha, Method::Asymptotic).unwrap();
            let errs = [
                ((s.mean_n - a.mean_n) / a.mean_n).abs(),
                ((s.var_n - a.var_n) / a.var_n).abs(),
                ((s.mandel_q - a.mandel_q) / a.mandel_q).abs(),
                ((s.robertson_bound - a.robertson_bound) / a.robertson_bound).abs(),
                ((s.var_x - a.var_x) / a.var_x).abs(),
            ];
            for (k, e) in errs.iter().enumerate() {
                assert!(
                    *e <= prev[k] + 1e-12,
                    "p={p} |α|={am} stat {k}: error grew {:.3e} -> {:.3e}",
                    prev[k],
                    e
                );
                if i == 3 {
                    assert!(*e < 0.01, "p={p} stat {k}: {e:.3e} at |α|=12");
                }
            }
            prev = errs;
        }
    }
}
